use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LaurentError, LaurentPoly};

/// Dense row-major matrix over `Z[s^{±1}, t^{±1}]`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<LaurentPoly>,
    ) -> Result<Self, LaurentError> {
        if entries.len() != rows * cols {
            return Err(LaurentError::ShapeMismatch);
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, LaurentError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LaurentError::ShapeMismatch);
        }
        Self::from_entries(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[LaurentPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<Self, LaurentError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LaurentError::ShapeMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Block-diagonal assembly of square blocks.
    pub fn block_diagonal(blocks: &[PolyMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first multiplied by a monomial so all its exponents are
    /// non-negative; the accumulated monomial is divided back out at the end.
    /// The empty matrix has determinant 1.
    pub fn det(&self) -> Result<LaurentPoly, LaurentError> {
        if !self.is_square() {
            return Err(LaurentError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut a: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        let (mut shift_s, mut shift_t) = (0i32, 0i32);
        for r in 0..n {
            let row = self.row(r);
            let lo = row
                .iter()
                .filter_map(LaurentPoly::exponent_box)
                .fold(None, |acc: Option<(i32, i32)>, (s_lo, _, t_lo, _)| {
                    Some(acc.map_or((s_lo, t_lo), |(a, b)| (a.min(s_lo), b.min(t_lo))))
                });
            let Some((s_lo, t_lo)) = lo else {
                return Ok(LaurentPoly::zero());
            };
            shift_s += s_lo;
            shift_t += t_lo;
            a.push(row.iter().map(|p| p.shift(-s_lo, -t_lo)).collect());
        }

        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].len());
            let Some(p) = pivot else {
                return Ok(LaurentPoly::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            if k + 1 == n {
                break;
            }
            let (upper, lower) = a.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower.iter_mut() {
                let lead = std::mem::take(&mut row[k]);
                for j in k + 1..n {
                    let mut v = &row[j] * &pivot_row[k];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        v = &v - &(&lead * &pivot_row[j]);
                    }
                    row[j] = if prev.is_one() { v } else { v.exact_div(&prev)? };
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].shift(shift_s, shift_t);
        Ok(if negate { -d } else { d })
    }

    /// All `k×k` minors, ordered by row subset then column subset, both
    /// lexicographically. `k = 0` gives the single empty minor `1`.
    pub fn minors(&self, k: usize) -> Result<Vec<LaurentPoly>, LaurentError> {
        if k > self.rows.min(self.cols) {
            return Err(LaurentError::SizeTooLarge {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let picks: Vec<(Vec<usize>, Vec<usize>)> = (0..self.rows)
            .combinations(k)
            .cartesian_product((0..self.cols).combinations(k).collect_vec())
            .collect();
        // indexed parallel collect keeps the enumeration order
        picks
            .par_iter()
            .map(|(rs, cs)| self.submatrix(rs, cs).det())
            .collect()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  [{}]", self.row(r).iter().join(", "))?;
        }
        write!(f, "]")
    }
}
