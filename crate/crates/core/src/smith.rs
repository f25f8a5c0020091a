//! Exact integer matrices and Smith normal form with unimodular certificates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("entry count {found} does not match shape {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount { rows, cols, found: entries.len() });
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the
    /// same length; `cols` is needed only to shape a matrix with no rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix { rows: rows.len(), cols, entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let idx = r * out.cols + c;
                    out.entries[idx] += a * rhs.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Shape(format!("determinant of non-square {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Entries as nested `i64` rows, or `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows).map(|r| self.row(r).iter().map(ToPrimitive::to_i64).collect()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let v = &self.entries[src * self.cols + c] * factor;
            self.entries[dst * self.cols + c] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let v = &self.entries[r * self.cols + src] * factor;
            self.entries[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.entries[idx] = -std::mem::take(&mut self.entries[idx]);
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal, non-negative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| d > &BigInt::one()).collect()
    }
}

/// Position of the nonzero entry of least absolute value in the block
/// `[from.., from..]`, ties broken by `(row, col)`.
fn smallest_pivot(m: &IntegerMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for r in from..m.rows {
        for c in from..m.cols {
            let v = m.get(r, c);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((r, c), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form by pivoting on the entry of least absolute value.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(a.rows);
    let mut v = IntegerMatrix::identity(a.cols);

    for t in 0..a.rows.min(a.cols) {
        let Some((pr, pc)) = smallest_pivot(&s, t) else { break };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            // Clear column t below the pivot.
            let mut remainder = false;
            for r in t + 1..s.rows {
                if s.get(r, t).is_zero() {
                    continue;
                }
                let q = -(s.get(r, t).div_floor(s.get(t, t)));
                s.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                remainder |= !s.get(r, t).is_zero();
            }
            // Clear row t right of the pivot.
            for c in t + 1..s.cols {
                if s.get(t, c).is_zero() {
                    continue;
                }
                let q = -(s.get(t, c).div_floor(s.get(t, t)));
                s.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                remainder |= !s.get(t, c).is_zero();
            }
            if remainder {
                // A nonzero remainder is smaller than the pivot; move the
                // smallest entry of row/column t into the pivot slot.
                let (r, c) = smallest_in_cross(&s, t);
                s.swap_rows(t, r);
                u.swap_rows(t, r);
                s.swap_cols(t, c);
                v.swap_cols(t, c);
                continue;
            }
            // Pivot must divide the rest of the block.
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..s.rows).find(|&r| (t + 1..s.cols).any(|c| !s.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, s, v }
}

/// Least nonzero entry (by absolute value) in row `t` and column `t`
/// restricted to indices `>= t`.
fn smallest_in_cross(m: &IntegerMatrix, t: usize) -> (usize, usize) {
    let col = (t..m.rows).map(|r| (r, t));
    let row = (t + 1..m.cols).map(|c| (t, c));
    col.chain(row)
        .filter(|&(r, c)| !m.get(r, c).is_zero())
        .min_by(|&(r1, c1), &(r2, c2)| m.get(r1, c1).abs().cmp(&m.get(r2, c2).abs()).then((r1, c1).cmp(&(r2, c2))))
        .expect("cross contains the pivot")
}

/// Independent check of a Smith normal form certificate for `a`.
pub fn verify_snf(a: &IntegerMatrix, result: &SnfResult) -> Result<bool, MatrixError> {
    let SnfResult { u, s, v } = result;
    if u.rows != a.rows || u.cols != a.rows {
        return Err(MatrixError::Shape(format!("U is {}x{}, expected {}x{}", u.rows, u.cols, a.rows, a.rows)));
    }
    if v.rows != a.cols || v.cols != a.cols {
        return Err(MatrixError::Shape(format!("V is {}x{}, expected {}x{}", v.rows, v.cols, a.cols, a.cols)));
    }
    if s.rows != a.rows || s.cols != a.cols {
        return Err(MatrixError::Shape(format!("S is {}x{}, expected {}x{}", s.rows, s.cols, a.rows, a.cols)));
    }
    if u.mul(a)?.mul(v)? != *s {
        return Ok(false);
    }
    for det in [u.determinant()?, v.determinant()?] {
        if det.abs() != BigInt::one() {
            return Ok(false);
        }
    }
    for r in 0..s.rows {
        for c in 0..s.cols {
            if r != c && !s.get(r, c).is_zero() {
                return Ok(false);
            }
        }
    }
    let diag = result.diagonal();
    if diag.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    // d_i | d_{i+1}; zero divides only zero.
    let chain = diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
    Ok(chain)
}
