//! The hypercube piece, the inductive piece, and the check `∂P = I + Q`.

use serde::{Deserialize, Serialize};

use crate::decomp::HypercubeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{BruhatInterval, VertexId};
use crate::hypercube::HypercubeMap;
use crate::klbase::KlTable;
use crate::perm::Permutation;
use crate::poly::IntPolynomial;

/// Coefficients `γ_v` of `r = Σ_{v ∈ J} P_{v,y} δ_v` in the basis
/// `b_v = Σ_w P_{w,v} δ_w`, both restricted to `J \ {x}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InductiveExpansion {
    gamma: Vec<(Permutation, IntPolynomial)>,
}

impl InductiveExpansion {
    /// Nonzero coefficients, by decreasing length.
    pub fn terms(&self) -> &[(Permutation, IntPolynomial)] {
        &self.gamma
    }

    /// `γ_v`, zero if `v` carries no term.
    pub fn gamma(&self, v: &Permutation) -> IntPolynomial {
        self.gamma.iter().find(|(p, _)| p == v).map(|(_, g)| g.clone()).unwrap_or_default()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gamma.iter().all(|(_, g)| g.is_nonnegative())
    }
}

/// One check of the formula. `pass` holds iff `∂P = I + Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub x: Permutation,
    pub y: Permutation,
    pub z: Permutation,
    #[serde(rename = "dP")]
    pub d_p: IntPolynomial,
    #[serde(rename = "I")]
    pub i: IntPolynomial,
    #[serde(rename = "Q")]
    pub q: IntPolynomial,
    pub pass: bool,
    pub gamma_nonneg: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationRecord {
    /// A failed record carrying a diagnostic instead of polynomials.
    pub fn failure(x: Permutation, y: Permutation, z: Permutation, error: String) -> Self {
        VerificationRecord {
            x,
            y,
            z,
            d_p: IntPolynomial::zero(),
            i: IntPolynomial::zero(),
            q: IntPolynomial::zero(),
            pass: false,
            gamma_nonneg: false,
            error: Some(error),
        }
    }
}

/// `Σ_{∅ ≠ I ⊆ E} (q-1)^{|I|-1} P_{θ(I),y}` over the hypercube edges at `x`.
pub fn q_tilde(interval: &BruhatInterval, d: &HypercubeDecomposition, klt: &KlTable) -> Result<IntPolynomial> {
    let g = interval.graph();
    let base = interval.bottom();
    let mut map = HypercubeMap::new(g, base, d.edges_at(base))?;
    let k = map.edges().len();
    let y = interval.y();
    let mut total = IntPolynomial::zero();
    for mask in 1u32..(1u32 << k) {
        let v = map.theta_mask(mask)?;
        let p = klt.kl(&interval.perm(v), &y)?;
        let term = IntPolynomial::q_minus_one_pow(mask.count_ones() as usize - 1)?.checked_mul(&p)?;
        total = total.checked_add(&term)?;
    }
    Ok(total)
}

/// `q^{N-1} Q̃(q^{-1})` with `N = ℓ(y) - ℓ(x)`.
pub fn q_piece(interval: &BruhatInterval, d: &HypercubeDecomposition, klt: &KlTable) -> Result<IntPolynomial> {
    let n = interval.y().length() as i64 - interval.x().length() as i64;
    q_tilde(interval, d, klt)?.reverse_twist(n - 1)
}

/// Solves for `γ` by eliminating from the longest element of `J \ {x}` down.
pub fn gamma_expansion(
    interval: &BruhatInterval,
    d: &HypercubeDecomposition,
    klt: &KlTable,
) -> Result<InductiveExpansion> {
    let g = interval.graph();
    let y = interval.y();
    let mut order: Vec<VertexId> = d.members().ones().filter(|&v| v != interval.bottom()).collect();
    order.sort_by(|&a, &b| g.level(b).cmp(&g.level(a)).then(interval.perm(a).cmp(&interval.perm(b))));
    let pos: std::collections::HashMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut residue: Vec<IntPolynomial> =
        order.iter().map(|&v| klt.kl(&interval.perm(v), &y)).collect::<Result<_>>()?;
    let mut gamma = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let c = std::mem::take(&mut residue[i]);
        if c.is_zero() {
            continue;
        }
        let pv = interval.perm(v);
        for w in g.down_set(v)?.ones() {
            let Some(&j) = pos.get(&w) else { continue };
            if j <= i {
                continue;
            }
            let p = klt.kl(&interval.perm(w), &pv)?;
            residue[j] = residue[j].checked_sub(&c.checked_mul(&p)?)?;
        }
        gamma.push((pv, c));
    }
    if residue.iter().any(|r| !r.is_zero()) {
        return Err(Error::NonzeroResidue);
    }
    Ok(InductiveExpansion { gamma })
}

/// `Σ_v γ_v ∂P_{x,v}`.
pub fn inductive_piece_from(
    interval: &BruhatInterval,
    expansion: &InductiveExpansion,
    klt: &KlTable,
) -> Result<IntPolynomial> {
    let x = interval.x();
    let mut total = IntPolynomial::zero();
    for (v, c) in expansion.terms() {
        total = total.checked_add(&c.checked_mul(&klt.partial_kl(&x, v)?)?)?;
    }
    Ok(total)
}

pub fn inductive_piece(interval: &BruhatInterval, d: &HypercubeDecomposition, klt: &KlTable) -> Result<IntPolynomial> {
    inductive_piece_from(interval, &gamma_expansion(interval, d, klt)?, klt)
}

/// Compares `I + Q` with `∂P_{x,y}` from the table.
pub fn check_formula(
    interval: &BruhatInterval,
    d: &HypercubeDecomposition,
    klt: &KlTable,
) -> Result<VerificationRecord> {
    let (x, y) = (interval.x(), interval.y());
    let d_p = klt.partial_kl(&x, &y)?;
    let expansion = gamma_expansion(interval, d, klt)?;
    let i = inductive_piece_from(interval, &expansion, klt)?;
    let q = q_piece(interval, d, klt)?;
    let pass = i.checked_add(&q)? == d_p;
    Ok(VerificationRecord {
        x,
        y,
        z: interval.perm(d.crown()),
        d_p,
        i,
        q,
        pass,
        gamma_nonneg: expansion.is_nonnegative(),
        error: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{canonical_l, enumerate};

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn four_crown_example() {
        let klt = KlTable::new(4).unwrap();
        let iv = BruhatInterval::build("0213".parse().unwrap(), "2301".parse().unwrap()).unwrap();
        for d in enumerate(iv.graph()).unwrap() {
            assert_eq!(q_tilde(&iv, &d, &klt).unwrap(), poly("1 + q"));
            assert_eq!(q_piece(&iv, &d, &klt).unwrap(), poly("q + q^2"));
            assert_eq!(inductive_piece(&iv, &d, &klt).unwrap(), poly("1 + q"));
            let r = check_formula(&iv, &d, &klt).unwrap();
            assert!(r.pass && r.gamma_nonneg);
            assert_eq!(r.d_p, poly("1 + 2*q + q^2"));
        }
    }

    #[test]
    fn trivial_coset() {
        let klt = KlTable::new(4).unwrap();
        let iv = BruhatInterval::build("0123".parse().unwrap(), "1023".parse().unwrap()).unwrap();
        let d = canonical_l(&iv).unwrap();
        assert!(gamma_expansion(&iv, &d, &klt).unwrap().terms().is_empty());
        assert_eq!(inductive_piece(&iv, &d, &klt).unwrap(), IntPolynomial::zero());
        assert!(check_formula(&iv, &d, &klt).unwrap().pass);
    }

    #[test]
    fn record_json_shape() {
        let klt = KlTable::new(4).unwrap();
        let iv = BruhatInterval::build("0213".parse().unwrap(), "2301".parse().unwrap()).unwrap();
        let d = canonical_l(&iv).unwrap();
        let r = check_formula(&iv, &d, &klt).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"x":"0213","y":"2301","z":"#));
        assert!(s.contains(r#""dP":[1,2,1],"I":[1,1],"Q":[0,1,1],"pass":true,"gamma_nonneg":true}"#));
        let back: VerificationRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
