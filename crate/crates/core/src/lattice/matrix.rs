use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Basis matrices follow the column convention: each column is a lattice
/// vector and the column order is the orientation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// A `rows x 0` matrix: the basis of the rank-0 lattice in `Z^rows`.
    pub fn empty(rows: usize) -> Self {
        Self::zeros(rows, 0)
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows of machine integers.
    ///
    /// Panics if the rows are ragged; intended for literals and tests.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// Builds a `rows x cols.len()` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(r, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                m[(i, c)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn column_range(&self, range: std::ops::Range<usize>) -> Self {
        let idx: Vec<usize> = range.collect();
        self.select_columns(&idx)
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    // Elementary operations. These are what the normal-form routines use to
    // maintain their unimodular witnesses.

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_column_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source].clone();
            self.data[i * self.cols + target] += factor * s;
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j].clone();
            self.data[target * self.cols + j] += factor * s;
        }
    }

    /// Replaces columns `(a, b)` by `(p*a + q*b, r*a + s*b)`.
    pub(crate) fn combine_columns(&mut self, a: usize, b: usize, [p, q, r, s]: [&BigInt; 4]) {
        for i in 0..self.rows {
            let x = self.data[i * self.cols + a].clone();
            let y = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = p * &x + q * &y;
            self.data[i * self.cols + b] = r * &x + s * &y;
        }
    }

    /// Determinant by Bareiss fraction-free elimination. The 0x0 determinant is 1.
    ///
    /// Panics if the matrix is not square.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for i in rank + 1..a.rows {
                for j in col + 1..a.cols {
                    let v = &a[(i, j)] * &a[(rank, col)] - &a[(i, col)] * &a[(rank, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, col)] = BigInt::zero();
            }
            prev = a[(rank, col)].clone();
            rank += 1;
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on mismatched shapes; use [`IntMatrix::checked_mul`] otherwise.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

/// Text format: rows separated by `;`, entries by `,`. A matrix without
/// columns is written `r x 0`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cols == 0 || self.rows == 0 {
            return write!(f, "{} x {}", self.rows, self.cols);
        }
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[{}x{}]({})", self.rows, self.cols, self)
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((r, c)) = s.split_once('x') {
            let r = r.trim();
            let c = c.trim();
            if !r.is_empty() && r.chars().all(|ch| ch.is_ascii_digit()) {
                let rows: usize = r
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad row count in {s:?}")))?;
                let cols: usize = c
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad column count in {s:?}")))?;
                if cols != 0 && rows != 0 {
                    return Err(Error::Parse(format!(
                        "shape notation is only for empty matrices, got {s:?}"
                    )));
                }
                return Ok(IntMatrix::zeros(rows, cols));
            }
        }
        if s.is_empty() {
            return Err(Error::Parse("empty matrix text".into()));
        }
        let mut rows = Vec::new();
        for row in s.split(';') {
            let entries = row
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad entry {:?} in {s:?}", e.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(entries);
        }
        let ncols = rows[0].len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Parse(format!("ragged rows in {s:?}")));
        }
        let nrows = rows.len();
        IntMatrix::from_vec(nrows, ncols, rows.into_iter().flatten().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format_round_trip() {
        let m: IntMatrix = "1,0;1,2".parse().unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[1, 0], [1, 2]]));
        assert_eq!(m.to_string(), "1,0;1,2");
        let e: IntMatrix = "3 x 0".parse().unwrap();
        assert_eq!((e.rows(), e.cols()), (3, 0));
        assert_eq!(e.to_string(), "3 x 0");
        let col: IntMatrix = "1;-1".parse().unwrap();
        assert_eq!((col.rows(), col.cols()), (2, 1));
    }

    #[test]
    fn rejects_malformed_text() {
        assert!("1,2;3".parse::<IntMatrix>().is_err());
        assert!("1,a".parse::<IntMatrix>().is_err());
        assert!("".parse::<IntMatrix>().is_err());
        assert!("2 x 2".parse::<IntMatrix>().is_err());
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(IntMatrix::zeros(0, 0).det(), BigInt::one());
        assert_eq!(
            IntMatrix::from_rows(&[[2, 4], [0, 2]]).det(),
            BigInt::from(4)
        );
        assert_eq!(
            IntMatrix::from_rows(&[[0, 1], [1, 0]]).det(),
            BigInt::from(-1)
        );
        let m = IntMatrix::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
        assert_eq!(m.det(), BigInt::from(4));
        let singular = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert!(singular.det().is_zero());
    }

    #[test]
    fn rank_counts_independent_columns() {
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).rank(), 1);
        assert_eq!(IntMatrix::from_rows(&[[0, 0, 1], [0, 0, 2]]).rank(), 1);
        assert_eq!(IntMatrix::identity(4).rank(), 4);
        assert_eq!(IntMatrix::empty(3).rank(), 0);
    }
}
