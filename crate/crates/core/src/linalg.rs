//! Dense matrices over the rationals with exact Gaussian elimination.
//!
//! Matrices act on column vectors: a linear map `V -> W` is stored with
//! `dim W` rows and `dim V` columns, so composition `g . f` is `g * f`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (q nonzero) into a reduced rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
    }
}

/// Lowest-terms text form with positive denominator; integers print bare.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Builds a matrix from rows; an empty row list yields a `0 x cols` matrix.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    row.len(),
                    cols
                )));
            }
            data.extend(row);
        }
        Ok(QMatrix {
            rows: r,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(rows, cols).expect("ragged literal matrix")
    }

    pub fn from_columns(columns: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
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

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Q) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
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

    pub fn scale(&self, k: &Q) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn checked_mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Block-diagonal sum of the given matrices.
    pub fn block_diag(blocks: &[QMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &QMatrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &QMatrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                let idx = (r0 + r) * self.cols + c0 + c;
                self.data[idx] += b.get(r, c);
            }
        }
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = &factor * m.get(row, c);
                    let idx = r * m.cols + c;
                    m.data[idx] -= sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_basis(&self) -> QMatrix {
        let (_, pivots) = self.rref();
        let cols: Vec<Vec<Q>> = pivots.iter().map(|&c| self.column(c)).collect();
        QMatrix::from_columns(&cols, self.rows)
    }

    /// Solves `self * X = rhs`. Free variables are set to zero; `None` when
    /// the system is inconsistent.
    pub fn solve(&self, rhs: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = QMatrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, r.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// Affine solution set of `self * x = b`: a particular solution and a
    /// kernel basis, or `None` when inconsistent.
    pub fn solve_affine(&self, b: &[Q]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
        let rhs = QMatrix::from_columns(&[b.to_vec()], self.rows);
        let aug = self.hstack(&rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut particular = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = r.get(i, self.cols).clone();
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect();
        Some((particular, kernel))
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&QMatrix::identity(self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = QMatrix::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut m = QMatrix::zeros(self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    pub fn max_abs_entry(&self) -> Q {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("2/4"), Some(q_frac(1, 2)));
        assert_eq!(parse_q("-3"), Some(q(-3)));
        assert_eq!(parse_q("1/-2"), Some(q_frac(-1, 2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
        assert_eq!(format_q(&q_frac(2, -4)), "-1/2");
        assert_eq!(format_q(&q(5)), "5");
    }

    #[test]
    fn inverse_of_marks_table() {
        let t = QMatrix::from_i64(&[&[2, 0], &[1, 1]]);
        let inv = t.inverse().unwrap();
        assert_eq!(&t * &inv, QMatrix::identity(2));
        assert_eq!(inv.get(0, 0), &q_frac(1, 2));
        assert_eq!(inv.get(1, 0), &q_frac(-1, 2));
    }

    #[test]
    fn rank_and_solve() {
        let a = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert!(a.inverse().is_none());
        let b = QMatrix::from_i64(&[&[6], &[12], &[2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
        let bad = QMatrix::from_i64(&[&[1], &[0], &[0]]);
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn affine_solutions() {
        let a = QMatrix::from_i64(&[&[1, 1, 0]]);
        let (p, k) = a.solve_affine(&[q(3)]).unwrap();
        assert_eq!(a.apply(&p), vec![q(3)]);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(a.apply(v), vec![q(0)]);
        }
    }

    #[test]
    fn column_basis_spans() {
        let a = QMatrix::from_i64(&[&[1, 2, 0], &[0, 0, 1]]);
        let b = a.column_basis();
        assert_eq!(b.cols(), 2);
        assert!(b.solve(&a).is_some());
    }
}
