//! Exact integer polynomials in `q`.
//!
//! Coefficients are `i64` with checked arithmetic. The `checked_*` methods
//! report overflow as [`Error::Overflow`]; the operator impls panic on it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense coefficient vector, index `i` holding the coefficient of `q^i`.
/// Never has a trailing zero; the zero polynomial is empty.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · q^k`
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn eval(&self, q: i64) -> Result<i64> {
        self.coeffs.iter().rev().try_fold(0i64, |acc, &c| {
            acc.checked_mul(q).and_then(|v| v.checked_add(c)).ok_or(Error::Overflow)
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| self.coeff(i).checked_add(other.coeff(i)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(v))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| self.coeff(i).checked_sub(other.coeff(i)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(v))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut v = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::Overflow)?;
                v[i + j] = v[i + j].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self::from_coeffs(v))
    }

    pub fn checked_scale(&self, c: i64) -> Result<Self> {
        let v = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(v))
    }

    /// `self · q^k`
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs: v }
    }

    /// `self += c · q^k · other`, in place; `other` is a coefficient slice.
    pub fn add_scaled_shifted(&mut self, c: i64, k: usize, other: &[i64]) -> Result<()> {
        if c == 0 || other.is_empty() {
            return Ok(());
        }
        if self.coeffs.len() < other.len() + k {
            self.coeffs.resize(other.len() + k, 0);
        }
        for (i, &b) in other.iter().enumerate() {
            let t = b.checked_mul(c).ok_or(Error::Overflow)?;
            self.coeffs[i + k] = self.coeffs[i + k].checked_add(t).ok_or(Error::Overflow)?;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        Ok(())
    }

    /// `(q - 1)^k`
    pub fn q_minus_one_pow(k: usize) -> Result<Self> {
        let base = Self::from_coeffs(vec![-1, 1]);
        (0..k).try_fold(Self::one(), |acc, _| acc.checked_mul(&base))
    }

    /// `q^N · p(q^{-1})`; requires `deg p <= N`.
    pub fn reverse_twist(&self, n: i64) -> Result<Self> {
        let Some(d) = self.degree() else {
            return Ok(Self::zero());
        };
        if n < 0 || d as i64 > n {
            return Err(Error::DegreeTooLarge { degree: d, bound: n });
        }
        let n = n as usize;
        let mut v = vec![0; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[n - i] = c;
        }
        Ok(Self::from_coeffs(v))
    }

    /// The q-derivative `(p - q^N p(q^{-1})) / (1 - q)`.
    pub fn partial_transform(&self, n: i64) -> Result<Self> {
        let num = self.checked_sub(&self.reverse_twist(n)?)?;
        // divide by (1 - q): c_i = num_0 + ... + num_i, remainder is the full sum
        let mut quot = Vec::with_capacity(num.coeffs.len());
        let mut acc = 0i64;
        for &a in &num.coeffs {
            acc = acc.checked_add(a).ok_or(Error::Overflow)?;
            quot.push(acc);
        }
        if acc != 0 {
            return Err(Error::NotAPartial(n));
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Inverse of [`partial_transform`](Self::partial_transform) on
    /// polynomials of degree at most `(N - 1) / 2`.
    pub fn recover_from_partial(d: &Self, n: i64) -> Result<Self> {
        let times = d.checked_mul(&Self::from_coeffs(vec![1, -1]))?;
        let keep = if n >= 1 { ((n - 1) / 2 + 1) as usize } else { 0 };
        let p = Self::from_coeffs(times.coeffs.into_iter().take(keep).collect());
        if &p.partial_transform(n)? != d {
            return Err(Error::NotAPartial(n));
        }
        Ok(p)
    }
}

impl fmt::Display for IntPolynomial {
    /// `1 + 2*q + q^2` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}*q")?,
                (k, 1) => write!(f, "q^{k}")?,
                (k, m) => write!(f, "{m}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses `1 + 2*q + q^2` (also `2q`, `-q^3`) or a coefficient list `[1,2,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PolyParse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if inner.is_empty() {
                return Ok(Self::zero());
            }
            let v = inner
                .split(',')
                .map(|x| x.parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::from_coeffs(v));
        }
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = 1i64;
        for (idx, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx > 0 && !cur.ends_with('^') {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if (ch == '+' || ch == '-') && idx == 0 {
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                cur.push(ch);
            }
        }
        terms.push((sign, cur));
        let mut out = Self::zero();
        for (sign, term) in terms {
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.find('q') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let c = term[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                    let rest = &term[pos + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .or_else(|| rest.strip_prefix("**"))
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (c, k)
                }
            };
            out = out.checked_add(&Self::monomial(sign * coef, power))?;
        }
        Ok(out)
    }
}

impl serde::Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::from_coeffs(Vec::<i64>::deserialize(d)?))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.checked_add(rhs).expect("polynomial addition overflowed")
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.checked_sub(rhs).expect("polynomial subtraction overflowed")
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.checked_mul(rhs).expect("polynomial multiplication overflowed")
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        self.checked_scale(-1).expect("polynomial negation overflowed")
    }
}
