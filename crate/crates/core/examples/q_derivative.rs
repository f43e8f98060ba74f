//! The q-derivative transform and its inverse.

use klcube::IntPolynomial;

fn main() -> klcube::Result<()> {
    for (p, n) in [("1", 3), ("1 + q", 3), ("1 + q^2", 6), ("1 + 2*q + q^2", 5), ("1 + 3*q + q^2", 7)] {
        let p: IntPolynomial = p.parse()?;
        let d = p.partial_transform(n)?;
        let back = IntPolynomial::recover_from_partial(&d, n)?;
        println!("N = {n}: P = {p}  dP = {d}  recovered {back}");
        println!("  reverse twist q^N P(1/q) = {}", p.reverse_twist(n)?);
    }
    Ok(())
}
