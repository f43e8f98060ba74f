//! Exhaustive checks over small symmetric groups.

mod common;

use klcube::decomp::{canonical_l, enumerate};
use klcube::sweep::{comparable_pairs, is_degenerate};
use klcube::{BruhatInterval, Error, IntPolynomial, KlTable, Permutation};

#[test]
fn theta_routes_agree_through_s6() {
    for n in 2..=6 {
        let stats = common::theta_agreement(n, n <= 4);
        assert!(stats.discrepancies.is_empty(), "{:?}", &stats.discrepancies[..stats.discrepancies.len().min(5)]);
        assert!(stats.subsets >= stats.intervals);
    }
}

#[test]
fn canonical_coset_is_among_all_decompositions() {
    for n in 2..=5 {
        for (x, y) in comparable_pairs(n) {
            let iv = BruhatInterval::build(x, y).unwrap();
            if is_degenerate(&x, &y) {
                assert_eq!(canonical_l(&iv), Err(Error::CosetContainsTop(y)));
                continue;
            }
            let l = canonical_l(&iv).unwrap();
            assert!(enumerate(iv.graph()).unwrap().contains(&l), "[{x},{y}]");
        }
    }
}

#[test]
fn degenerate_cosets_fill_the_interval() {
    for n in 2..=6 {
        for (x, y) in comparable_pairs(n) {
            if is_degenerate(&x, &y) {
                let iv = BruhatInterval::build(x, y).unwrap();
                let m = x.position_of(0);
                assert!(iv.vertices().iter().all(|v| v.position_of(0) == m), "[{x},{y}]");
            }
        }
    }
}

#[test]
fn kl_table_invariants_in_s6() {
    let klt = KlTable::new(6).unwrap();
    klt.prefill().unwrap();
    let perms: Vec<Permutation> = Permutation::all(6).collect();
    for y in &perms {
        for x in &perms {
            let p = klt.kl(x, y).unwrap();
            if !x.bruhat_leq(y).unwrap() {
                assert!(p.is_zero());
                continue;
            }
            assert!(p.is_nonnegative());
            if x == y {
                assert_eq!(p, IntPolynomial::one());
                continue;
            }
            let n = (y.length() - x.length()) as i64;
            assert!(2 * (p.degree().unwrap() as i64) < n);
            let d = p.partial_transform(n).unwrap();
            assert_eq!(IntPolynomial::recover_from_partial(&d, n).unwrap(), p);
            let mu = klt.mu(x, y).unwrap();
            assert_eq!(mu, if n % 2 == 1 { p.coeff((n as usize - 1) / 2) } else { 0 });
        }
    }
}

#[test]
fn regular_intervals_have_trivial_polynomials() {
    let s4 = common::regularity(4);
    assert_eq!(s4.regular_with_p_not_one, 0);
    assert_eq!(s4.lower_interval_mismatches, 0);
    assert_eq!(s4.nonregular, 10);
    assert_eq!(s4.nonregular_p_not_one, 6);
    assert_eq!(s4.nonregular_p_not_one_classes, 3);
    assert_eq!(s4.p_not_one_values.len(), 1);
    assert_eq!(s4.p_one_but_nonregular, 4);
    let s5 = common::regularity(5);
    assert_eq!(s5.regular_with_p_not_one, 0);
    assert_eq!(s5.lower_interval_mismatches, 0);
}
