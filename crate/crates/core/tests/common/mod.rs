#![allow(dead_code)]

use std::collections::HashSet;

use klcube::decomp::canonical_l;
use klcube::hypercube::{theta, theta_corner_rank, theta_explicit, HypercubeMap};
use klcube::sweep::{comparable_pairs, is_degenerate};
use klcube::{BruhatInterval, IntPolynomial, KlTable};

#[derive(Debug, Default)]
pub struct ThetaStats {
    pub intervals: usize,
    pub subsets: usize,
    pub discrepancies: Vec<String>,
}

/// Compares the three hypercube maps on every subset of the hypercube edges
/// at `x` of the coset decomposition, over all intervals of `S_n`.
/// `full` uses the free function `theta` (which revalidates the cluster)
/// instead of the cached map.
pub fn theta_agreement(n: usize, full: bool) -> ThetaStats {
    let mut stats = ThetaStats::default();
    for (x, y) in comparable_pairs(n) {
        if is_degenerate(&x, &y) {
            continue;
        }
        stats.intervals += 1;
        let iv = BruhatInterval::build(x, y).unwrap();
        let g = iv.graph();
        let d = canonical_l(&iv).unwrap();
        let base = iv.bottom();
        let edges = d.edges_at(base).to_vec();
        let mut map = HypercubeMap::new(g, base, &edges).unwrap();
        for mask in 0u32..(1 << edges.len()) {
            let f: Vec<usize> = (0..edges.len()).filter(|b| mask & (1 << b) != 0).map(|b| edges[b]).collect();
            let values: Vec<usize> = f
                .iter()
                .map(|&e| {
                    let (i, j) = g.edge(e).label.unwrap();
                    assert_eq!(i, 0, "edge leaving the coset swaps 0");
                    j as usize
                })
                .collect();
            let combinatorial = if full { theta(g, base, &edges, &f).unwrap() } else { map.theta_mask(mask).unwrap() };
            let a = iv.perm(combinatorial);
            let b = theta_explicit(&x, &values).unwrap();
            let c = theta_corner_rank(&x, &values).unwrap();
            stats.subsets += 1;
            if a != b || b != c {
                stats.discrepancies.push(format!("[{x},{y}] I={values:?}: {a} {b} {c}"));
            }
        }
    }
    stats
}

#[derive(Debug, Default)]
pub struct RegularityStats {
    pub intervals: usize,
    pub nonregular: usize,
    pub nonregular_p_not_one: usize,
    pub regular_with_p_not_one: usize,
    pub p_one_but_nonregular: usize,
    pub lower_interval_mismatches: usize,
    pub p_not_one_values: HashSet<IntPolynomial>,
    pub nonregular_p_not_one_classes: usize,
}

pub fn regularity(n: usize) -> RegularityStats {
    let klt = KlTable::new(n).unwrap();
    let mut s = RegularityStats::default();
    let mut classes = HashSet::new();
    let id = klcube::Permutation::identity(n);
    for (x, y) in comparable_pairs(n) {
        let iv = BruhatInterval::build(x, y).unwrap();
        let regular = iv.graph().is_regular_undirected();
        let p = klt.kl(&x, &y).unwrap();
        let one = p == IntPolynomial::one();
        s.intervals += 1;
        s.nonregular += !regular as usize;
        s.regular_with_p_not_one += (regular && !one) as usize;
        s.p_one_but_nonregular += (one && !regular) as usize;
        if x == id && one != regular {
            s.lower_interval_mismatches += 1;
        }
        if !one {
            s.nonregular_p_not_one += !regular as usize;
            classes.insert(iv.graph().canonical_key());
            s.p_not_one_values.insert(p);
        }
    }
    s.nonregular_p_not_one_classes = classes.len();
    s
}
