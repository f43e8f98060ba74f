//! Kazhdan-Lusztig polynomials, their q-derivatives and mu coefficients.
//!
//! ```text
//! cargo run --example kl_polynomials
//! ```

use klcube::{IntPolynomial, KlTable, Permutation};

fn main() -> klcube::Result<()> {
    let pairs = [("0213", "2301"), ("1032", "3120"), ("03214", "34201"), ("021435", "234501")];
    for (x, y) in pairs {
        let (x, y): (Permutation, Permutation) = (x.parse()?, y.parse()?);
        let klt = KlTable::new(x.size())?;
        let p = klt.kl(&x, &y)?;
        let d = klt.partial_kl(&x, &y)?;
        let n = (y.length() - x.length()) as i64;
        println!("P_{{{x},{y}}} = {p}");
        println!("  length difference {n}, mu = {}", klt.mu(&x, &y)?);
        println!("  dP = {d}");
        assert_eq!(IntPolynomial::recover_from_partial(&d, n)?, p);
    }

    // every polynomial in S_4 that is not 1
    let klt = KlTable::new(4)?;
    klt.prefill()?;
    let perms: Vec<Permutation> = Permutation::all(4).collect();
    let mut nontrivial = 0;
    for x in &perms {
        for y in &perms {
            let p = klt.kl(x, y)?;
            if !p.is_zero() && p != IntPolynomial::one() {
                nontrivial += 1;
                println!("S_4: P_{{{x},{y}}} = {p}");
            }
        }
    }
    println!("{nontrivial} nontrivial polynomials in S_4");
    Ok(())
}
