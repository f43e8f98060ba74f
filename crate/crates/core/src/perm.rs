//! Permutations of `{0, ..., n}` in string notation.
//!
//! A [`Permutation`] stores its images inline (window size at most
//! [`MAX_WINDOW`]), so values are `Copy` and hash cheaply. Composition is
//! `(a ∘ b)(i) = a(b(i))`; multiplying by a transposition on the left swaps two
//! *values* of the string.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_WINDOW: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    size: u8,
    images: [u8; MAX_WINDOW],
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        assert!((1..=MAX_WINDOW).contains(&size), "window size {size} out of range");
        let mut images = [0u8; MAX_WINDOW];
        for (i, v) in images.iter_mut().enumerate().take(size) {
            *v = i as u8;
        }
        Permutation { size: size as u8, images }
    }

    /// The longest element `w_0 = (n, n-1, ..., 0)`.
    pub fn longest(size: usize) -> Self {
        let mut p = Self::identity(size);
        p.images[..size].reverse();
        p
    }

    /// The transposition exchanging `i` and `j`.
    pub fn transposition(size: usize, i: usize, j: usize) -> Result<Self> {
        if i >= size || j >= size || i == j {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({i},{j}) in window {size}"
            )));
        }
        let mut p = Self::identity(size);
        p.images.swap(i, j);
        Ok(p)
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let size = images.len();
        if size == 0 || size > MAX_WINDOW {
            return Err(Error::InvalidPermutation(format!(
                "window size {size} not in 1..={MAX_WINDOW}"
            )));
        }
        let mut seen = [false; MAX_WINDOW];
        let mut out = [0u8; MAX_WINDOW];
        for (i, &v) in images.iter().enumerate() {
            if v >= size || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[v] = true;
            out[i] = v as u8;
        }
        Ok(Permutation { size: size as u8, images: out })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size as usize
    }

    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.images[..self.size as usize]
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.images()[i] as usize
    }

    /// Position of the value `v`, i.e. `p^{-1}(v)`.
    pub fn position_of(&self, v: usize) -> usize {
        self.images()
            .iter()
            .position(|&x| x as usize == v)
            .expect("value outside window")
    }

    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for (i, &v) in self.images().iter().enumerate() {
            out.images[v as usize] = i as u8;
        }
        out
    }

    /// `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::WindowMismatch(self.size(), other.size()));
        }
        let mut out = *self;
        for i in 0..self.size() {
            out.images[i] = self.images[other.images[i] as usize];
        }
        Ok(out)
    }

    /// `t_{(i,j)} · self`: exchanges the values `i` and `j` in the string.
    pub fn swap_values(&self, i: usize, j: usize) -> Self {
        let mut out = *self;
        for v in out.images[..self.size()].iter_mut() {
            if *v as usize == i {
                *v = j as u8;
            } else if *v as usize == j {
                *v = i as u8;
            }
        }
        out
    }

    /// `self · t_{(i,j)}`: exchanges the entries at positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut out = *self;
        out.images.swap(i, j);
        out
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let s = self.images();
        let mut count = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] > s[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn corner_rank_matrix(&self) -> CornerRankMatrix {
        let n = self.size();
        let mut ranks = vec![0u8; n * n];
        // column by column: ranks[p][q] = #{a <= q : self(a) >= p}
        let mut above = vec![0u8; n];
        for q in 0..n {
            let v = self.get(q);
            for a in above.iter_mut().take(v + 1) {
                *a += 1;
            }
            for p in 0..n {
                ranks[p * n + q] = above[p];
            }
        }
        CornerRankMatrix { size: n, ranks }
    }

    /// Bruhat order, tested through entrywise comparison of corner rank matrices.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        if self.size != other.size {
            return Err(Error::WindowMismatch(self.size(), other.size()));
        }
        Ok(self.bruhat_leq_unchecked(other))
    }

    pub(crate) fn bruhat_leq_unchecked(&self, other: &Permutation) -> bool {
        let n = self.size();
        let mut ru = [0u8; MAX_WINDOW];
        let mut rv = [0u8; MAX_WINDOW];
        for q in 0..n {
            let (a, b) = (self.get(q), other.get(q));
            for r in ru.iter_mut().take(a + 1) {
                *r += 1;
            }
            for r in rv.iter_mut().take(b + 1) {
                *r += 1;
            }
            if ru[..n].iter().zip(&rv[..n]).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// The permutation of `{0, ..., k-1}` order-isomorphic to the entries at
    /// the given (strictly increasing) positions.
    pub fn pattern_restriction(&self, positions: &[usize]) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidPositions("empty".into()));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPositions(format!("{positions:?} not strictly increasing")));
        }
        if positions[positions.len() - 1] >= self.size() {
            return Err(Error::InvalidPositions(format!(
                "{positions:?} outside window {}",
                self.size()
            )));
        }
        let vals: Vec<u8> = positions.iter().map(|&i| self.images[i]).collect();
        let flat: Vec<usize> = vals
            .iter()
            .map(|v| vals.iter().filter(|w| *w < v).count())
            .collect();
        Self::from_images(&flat)
    }

    /// All `(i, j)`, `i < j`, with `ℓ(t_{(i,j)} · self) > ℓ(self)`.
    pub fn upper_transpositions(&self) -> Vec<(usize, usize)> {
        let inv = self.inverse();
        let n = self.size();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if inv.get(i) < inv.get(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Lexicographic rank among all permutations of the same window.
    pub fn rank(&self) -> u64 {
        let s = self.images();
        let n = s.len();
        let mut r: u64 = 0;
        for i in 0..n {
            let smaller = s[i + 1..].iter().filter(|&&v| v < s[i]).count() as u64;
            r = r * (n - i) as u64 + smaller;
        }
        r
    }

    pub fn unrank(size: usize, mut rank: u64) -> Self {
        let mut digits = vec![0usize; size];
        for (i, d) in digits.iter_mut().enumerate().rev() {
            let base = (size - i) as u64;
            *d = (rank % base) as usize;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..size).collect();
        let images: Vec<usize> = digits.into_iter().map(|d| pool.remove(d)).collect();
        Self::from_images(&images).expect("unrank produces a bijection")
    }

    /// Every permutation of the window, in lexicographic order.
    pub fn all(size: usize) -> AllPermutations {
        AllPermutations { next: Some(Self::identity(size)) }
    }

    fn next_lex(&self) -> Option<Self> {
        let n = self.size();
        let s = &self.images;
        let i = (0..n.saturating_sub(1)).rev().find(|&i| s[i] < s[i + 1])?;
        let j = (i + 1..n).rev().find(|&j| s[j] > s[i]).unwrap();
        let mut out = *self;
        out.images.swap(i, j);
        out.images[i + 1..n].reverse();
        Some(out)
    }
}

pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next?;
        self.next = cur.next_lex();
        Some(cur)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 10 {
            for &v in self.images() {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images().iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2031`, `2,0,3,1` and `(2,0,3,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        let bad = || Error::InvalidPermutation(format!("cannot parse {s:?}"));
        let images: Vec<usize> = if t.contains(',') {
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Self::from_images(&images)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Entry `(p, q)` is the rank of the lower-left corner (rows `>= p`, columns
/// `<= q`) of the permutation matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CornerRankMatrix {
    size: usize,
    ranks: Vec<u8>,
}

impl CornerRankMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let size = rows.len();
        let mut ranks = Vec::with_capacity(size * size);
        for r in rows {
            assert_eq!(r.len(), size, "corner rank matrix must be square");
            ranks.extend_from_slice(r);
        }
        CornerRankMatrix { size, ranks }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize) -> u8 {
        self.ranks[p * self.size + q]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.ranks.chunks(self.size).map(|c| c.to_vec()).collect()
    }

    pub fn leq(&self, other: &CornerRankMatrix) -> bool {
        self.size == other.size && self.ranks.iter().zip(&other.ranks).all(|(a, b)| a <= b)
    }

    /// The permutation with this corner rank matrix, if there is one.
    pub fn to_permutation(&self) -> Result<Permutation> {
        let n = self.size;
        let mut images = Vec::with_capacity(n);
        for q in 0..n {
            let diff = |p: usize| -> i32 {
                let left = if q == 0 { 0 } else { self.get(p, q - 1) as i32 };
                self.get(p, q) as i32 - left
            };
            // the column difference must be the indicator of {p <= u(q)}
            let top = (0..n).rev().find(|&p| diff(p) == 1).ok_or(Error::InvalidRankMatrix)?;
            if (0..n).any(|p| diff(p) != (p <= top) as i32) {
                return Err(Error::InvalidRankMatrix);
            }
            images.push(top);
        }
        let u = Permutation::from_images(&images).map_err(|_| Error::InvalidRankMatrix)?;
        if &u.corner_rank_matrix() != self {
            return Err(Error::InvalidRankMatrix);
        }
        Ok(u)
    }
}

impl fmt::Display for CornerRankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    // Bruhat order from its definition: downward paths in the Bruhat graph.
    fn reachable_down(from: Permutation, to: Permutation) -> bool {
        let mut stack = vec![from];
        let mut seen = std::collections::HashSet::new();
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if !seen.insert(v) {
                continue;
            }
            let n = v.size();
            for i in 0..n {
                for j in i + 1..n {
                    let u = v.swap_values(i, j);
                    if u.length() < v.length() && u.length() >= to.length() {
                        stack.push(u);
                    }
                }
            }
        }
        false
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        let a = p("102");
        assert_eq!(id.compose(&a).unwrap(), a);
        assert_eq!(a.compose(&p("021")).unwrap(), p("120"));
        let x = p("2031");
        assert_eq!(x.compose(&x.inverse()).unwrap(), Permutation::identity(4));
        assert_eq!(a.compose(&x), Err(Error::WindowMismatch(3, 4)));
    }

    #[test]
    fn length_examples() {
        assert_eq!(p("0123").length(), 0);
        assert_eq!(p("2031").length(), 3);
        for size in 1..8 {
            assert_eq!(Permutation::longest(size).length(), size * (size - 1) / 2);
        }
    }

    #[test]
    fn corner_rank_examples() {
        let r = p("1230").corner_rank_matrix();
        assert_eq!(r.rows(), vec![vec![1, 2, 3, 4], vec![1, 2, 3, 3], vec![0, 1, 2, 2], vec![0, 0, 1, 1]]);
        let r = p("2301").corner_rank_matrix();
        assert_eq!(r.rows(), vec![vec![1, 2, 3, 4], vec![1, 2, 2, 3], vec![1, 2, 2, 2], vec![0, 1, 1, 1]]);
        assert_eq!(p("01").corner_rank_matrix().rows(), vec![vec![1, 2], vec![0, 1]]);
        assert_eq!(r.to_permutation().unwrap(), p("2301"));
    }

    #[test]
    fn bruhat_examples() {
        assert!(p("0213").bruhat_leq(&p("2301")).unwrap());
        assert!(p("2031").bruhat_leq(&p("2031")).unwrap());
        assert!(!p("102").bruhat_leq(&p("021")).unwrap());
        assert!(p("102").bruhat_leq(&p("0213")).is_err());
    }

    #[test]
    fn bruhat_matches_path_search_exhaustively() {
        for size in 1..=5 {
            let all: Vec<_> = Permutation::all(size).collect();
            for &u in &all {
                for &v in &all {
                    assert_eq!(u.bruhat_leq(&v).unwrap(), reachable_down(v, u), "{u} {v}");
                }
            }
        }
    }

    #[test]
    fn pattern_restriction_examples() {
        assert_eq!(p("2031").pattern_restriction(&[0, 2]).unwrap(), p("01"));
        assert_eq!(p("0321").pattern_restriction(&[1, 3]).unwrap(), p("10"));
        assert_eq!(p("2031").pattern_restriction(&[0, 1, 2, 3]).unwrap(), p("2031"));
        assert!(p("2031").pattern_restriction(&[]).is_err());
        assert!(p("2031").pattern_restriction(&[1, 4]).is_err());
        assert!(p("2031").pattern_restriction(&[2, 1]).is_err());
    }

    #[test]
    fn upper_transposition_examples() {
        assert_eq!(Permutation::identity(3).upper_transpositions(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(Permutation::longest(5).upper_transpositions().is_empty());
        let u = p("0213");
        let brute: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let t = Permutation::transposition(4, i, j).unwrap();
                t.compose(&u).unwrap().length() > u.length()
            })
            .collect();
        assert_eq!(u.upper_transpositions(), brute);
        assert!(brute.contains(&(0, 2)));
        assert_eq!(u.swap_values(0, 2), p("2013"));
    }

    #[test]
    fn rank_roundtrip_and_order() {
        let all: Vec<_> = Permutation::all(5).collect();
        assert_eq!(all.len(), 120);
        for (i, q) in all.iter().enumerate() {
            assert_eq!(q.rank(), i as u64);
            assert_eq!(Permutation::unrank(5, i as u64), *q);
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("(2,0,3,1)"), p("2031"));
        let big = Permutation::longest(12);
        assert_eq!(big.to_string(), "11,10,9,8,7,6,5,4,3,2,1,0");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("0012".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
    }
}
