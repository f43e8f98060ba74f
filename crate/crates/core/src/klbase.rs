//! Classical Kazhdan-Lusztig polynomials of `S_{n+1}`.
//!
//! The table memoizes whole columns `x ↦ P_{x,y}` for fixed `y`, computed by
//! the simple-reflection recursion: with `s` the smallest simple reflection
//! such that `sy < y`,
//!
//! ```text
//! P_{x,y} = P_{sx,y}                                            if sx > x
//! P_{x,y} = P_{sx,sy} + q P_{x,sy}
//!           - Σ_{w < sy, sw < w} μ(w,sy) q^{(ℓ(y)-ℓ(w))/2} P_{x,w}   if sx < x
//! ```
//!
//! Columns live in `OnceLock`s, so lookups never take a lock. Two threads may
//! race to build the same column; they compute identical values and the
//! first insert wins.

use std::collections::BTreeMap;
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::IntPolynomial;

/// Largest window for which a full table can be indexed.
pub const MAX_TABLE_WINDOW: usize = 9;

struct Column {
    offsets: Vec<u32>,
    coeffs: Vec<i64>,
}

impl Column {
    fn from_polys(polys: Vec<IntPolynomial>) -> Self {
        let mut offsets = Vec::with_capacity(polys.len() + 1);
        let mut coeffs = Vec::new();
        offsets.push(0);
        for p in polys {
            coeffs.extend_from_slice(p.coeffs());
            offsets.push(coeffs.len() as u32);
        }
        Column { offsets, coeffs }
    }

    #[inline]
    fn get(&self, x: usize) -> &[i64] {
        &self.coeffs[self.offsets[x] as usize..self.offsets[x + 1] as usize]
    }

    fn poly(&self, x: usize) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.get(x).to_vec())
    }
}

pub struct KlTable {
    size: usize,
    perms: Vec<Permutation>,
    lengths: Vec<u8>,
    /// `left_simple[i][x]` is the index of `s_i · x`.
    left_simple: Vec<Vec<u32>>,
    by_length_desc: Vec<u32>,
    columns: Vec<OnceLock<Arc<Column>>>,
}

impl KlTable {
    /// An empty table for `S_size` (permutations of `{0, ..., size-1}`).
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_TABLE_WINDOW {
            return Err(Error::TableTooLarge(size));
        }
        let perms: Vec<Permutation> = Permutation::all(size).collect();
        let lengths: Vec<u8> = perms.iter().map(|p| p.length() as u8).collect();
        let left_simple = (0..size - 1)
            .map(|i| perms.iter().map(|p| p.swap_values(i, i + 1).rank() as u32).collect())
            .collect();
        let mut by_length_desc: Vec<u32> = (0..perms.len() as u32).collect();
        by_length_desc.sort_by_key(|&i| std::cmp::Reverse(lengths[i as usize]));
        let columns = (0..perms.len()).map(|_| OnceLock::new()).collect();
        Ok(KlTable { size, perms, lengths, left_simple, by_length_desc, columns })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of columns computed so far.
    pub fn computed_columns(&self) -> usize {
        self.columns.iter().filter(|c| c.get().is_some()).count()
    }

    fn check(&self, p: &Permutation) -> Result<usize> {
        if p.size() != self.size {
            return Err(Error::WindowMismatch(p.size(), self.size));
        }
        Ok(p.rank() as usize)
    }

    /// `P_{x,y}`; zero when `x` is not below `y`.
    pub fn kl(&self, x: &Permutation, y: &Permutation) -> Result<IntPolynomial> {
        let (xi, yi) = (self.check(x)?, self.check(y)?);
        Ok(self.column(yi)?.poly(xi))
    }

    /// The μ-coefficient of `P_{x,y}` for `x < y`.
    pub fn mu(&self, x: &Permutation, y: &Permutation) -> Result<i64> {
        let (xi, yi) = (self.check(x)?, self.check(y)?);
        if xi == yi || !x.bruhat_leq_unchecked(y) {
            return Err(Error::NotStrictlyBelow { x: *x, y: *y });
        }
        let d = self.lengths[yi] as usize - self.lengths[xi] as usize;
        if d.is_multiple_of(2) {
            return Ok(0);
        }
        Ok(self.column(yi)?.get(xi).get((d - 1) / 2).copied().unwrap_or(0))
    }

    /// `∂P_{x,y}`, the q-derivative with `N = ℓ(y) - ℓ(x)`.
    pub fn partial_kl(&self, x: &Permutation, y: &Permutation) -> Result<IntPolynomial> {
        self.check(x)?;
        self.check(y)?;
        if !x.bruhat_leq_unchecked(y) {
            return Err(Error::NotBelow { x: *x, y: *y });
        }
        let n = y.length() as i64 - x.length() as i64;
        self.kl(x, y)?.partial_transform(n)
    }

    /// Computes every column, one length layer at a time in parallel.
    pub fn prefill(&self) -> Result<()> {
        let max_len = self.lengths.iter().copied().max().unwrap_or(0);
        for len in 0..=max_len {
            let layer: Vec<usize> =
                (0..self.perms.len()).filter(|&i| self.lengths[i] == len).collect();
            layer.par_iter().try_for_each(|&y| self.column(y).map(|_| ()))?;
        }
        Ok(())
    }

    fn column(&self, y: usize) -> Result<&Arc<Column>> {
        if let Some(c) = self.columns[y].get() {
            return Ok(c);
        }
        let c = Arc::new(self.compute_column(y)?);
        let _ = self.columns[y].set(c);
        Ok(self.columns[y].get().expect("column was just set"))
    }

    fn compute_column(&self, y: usize) -> Result<Column> {
        let count = self.perms.len();
        let mut polys = vec![IntPolynomial::zero(); count];
        if self.lengths[y] == 0 {
            polys[y] = IntPolynomial::one();
            return Ok(Column::from_polys(polys));
        }
        let yp = &self.perms[y];
        let s = (0..self.size - 1)
            .find(|&i| yp.position_of(i) > yp.position_of(i + 1))
            .expect("non-identity has a left descent");
        let sm = &self.left_simple[s];
        let v = sm[y] as usize;
        let ly = self.lengths[y] as usize;
        let lv = self.lengths[v] as usize;
        let cv = Arc::clone(self.column(v)?);

        // correction terms (w, μ(w, v), shift)
        let mut corrections = Vec::new();
        for w in 0..count {
            let lw = self.lengths[w] as usize;
            if lw >= lv || (lv - lw).is_multiple_of(2) || self.lengths[sm[w] as usize] as usize > lw {
                continue;
            }
            let mu = cv.get(w).get((lv - lw - 1) / 2).copied().unwrap_or(0);
            if mu != 0 {
                corrections.push((Arc::clone(self.column(w)?), mu, (ly - lw) / 2));
            }
        }

        for &x in &self.by_length_desc {
            let x = x as usize;
            let sx = sm[x] as usize;
            if self.lengths[sx] > self.lengths[x] {
                polys[x] = polys[sx].clone();
                continue;
            }
            let mut p = IntPolynomial::from_coeffs(cv.get(sx).to_vec());
            p.add_scaled_shifted(1, 1, cv.get(x))?;
            for (cw, mu, shift) in &corrections {
                p.add_scaled_shifted(-mu, *shift, cw.get(x))?;
            }
            polys[x] = p;
        }
        Ok(Column::from_polys(polys))
    }

    /// Writes every computed entry with `P_{x,y} != 0` as `x<TAB>y<TAB>[c0,c1,...]`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(std::fs::File::create(path)?);
        for (y, cell) in self.columns.iter().enumerate() {
            let Some(col) = cell.get() else { continue };
            for x in 0..self.perms.len() {
                let c = col.get(x);
                if c.is_empty() {
                    continue;
                }
                let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}\t{}\t[{}]", self.perms[x], self.perms[y], body.join(","))?;
            }
        }
        out.flush()?;
        Ok(())
    }

    /// Loads a cache written by [`save`](Self::save), validating every column:
    /// entries present exactly for `x <= y`, `P_{y,y} = 1`, nonnegative
    /// coefficients, and the degree bound.
    pub fn load(path: &Path, size: usize) -> Result<Self> {
        let table = Self::new(size)?;
        let file = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut cols: BTreeMap<usize, BTreeMap<usize, IntPolynomial>> = BTreeMap::new();
        for (lineno, line) in file.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |m: &str| Error::Cache(format!("line {}: {m}", lineno + 1));
            let mut parts = line.split('\t');
            let (Some(xs), Some(ys), Some(ps), None) =
                (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(bad("expected three tab-separated fields"));
            };
            let x: Permutation = xs.parse().map_err(|_| bad("bad x"))?;
            let y: Permutation = ys.parse().map_err(|_| bad("bad y"))?;
            let p: IntPolynomial = ps.parse().map_err(|_| bad("bad polynomial"))?;
            let (xi, yi) = (table.check(&x).map_err(|_| bad("window"))?, table.check(&y).map_err(|_| bad("window"))?);
            if !x.bruhat_leq_unchecked(&y) {
                return Err(bad("entry for x not below y"));
            }
            if p.is_zero() || !p.is_nonnegative() {
                return Err(bad("polynomial must be nonzero with nonnegative coefficients"));
            }
            let d = table.lengths[yi] as i64 - table.lengths[xi] as i64;
            if xi == yi && p != IntPolynomial::one() {
                return Err(bad("P_{y,y} must be 1"));
            }
            if xi != yi && 2 * p.degree().unwrap() as i64 > d - 1 {
                return Err(bad("degree bound violated"));
            }
            cols.entry(yi).or_default().insert(xi, p);
        }
        for (yi, entries) in cols {
            let y = table.perms[yi];
            let expected = table.perms.iter().filter(|x| x.bruhat_leq_unchecked(&y)).count();
            if entries.len() != expected {
                return Err(Error::Cache(format!("column {y} is incomplete")));
            }
            let mut polys = vec![IntPolynomial::zero(); table.perms.len()];
            for (xi, p) in entries {
                polys[xi] = p;
            }
            let _ = table.columns[yi].set(Arc::new(Column::from_polys(polys)));
        }
        Ok(table)
    }
}
