//! Dense exact matrices over `Q` and `Q(i)`.
//!
//! Rank is computed by fraction-free (Bareiss) elimination: each row is first
//! scaled by the lcm of its denominators so the work happens over `Z` (or the
//! Gaussian integers `Z[i]`), and every division in the elimination is exact.
//! Solving and null spaces use ordinary Gauss-Jordan over the field; the two
//! routes are cross-checked in the tests.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{common_denominator, ComplexRational, Rational};
use crate::error::{Error, Result};

/// Integral domain with exact division, the arena for Bareiss elimination.
pub trait ExactDomain: Clone + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    /// `self / other`, where the caller guarantees the quotient lies in the domain.
    fn div_exact(&self, other: &Self) -> Self;
}

impl ExactDomain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

/// Gaussian integer `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl ExactDomain for GaussianInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn zero() -> Self {
        GaussianInt {
            re: Zero::zero(),
            im: Zero::zero(),
        }
    }
    fn one() -> Self {
        GaussianInt {
            re: One::one(),
            im: Zero::zero(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        GaussianInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussianInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn div_exact(&self, o: &Self) -> Self {
        // (a+bi)(c-di) / (c^2+d^2)
        let norm = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        GaussianInt {
            re: re.div_exact(&norm),
            im: im.div_exact(&norm),
        }
    }
}

/// Field of exact scalars a [`Matrix`] can hold.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Integral: ExactDomain;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Multiply `row` by a common denominator and return the integral entries.
    fn integral_row(row: &[Self]) -> Vec<Self::Integral>;
}

impl Scalar for Rational {
    type Integral = BigInt;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_integer(n: i64) -> Self {
        Rational::from_integer(n)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn integral_row(row: &[Self]) -> Vec<BigInt> {
        let l = common_denominator(row);
        row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
    }
}

impl Scalar for ComplexRational {
    type Integral = GaussianInt;

    fn zero() -> Self {
        ComplexRational::zero()
    }
    fn one() -> Self {
        ComplexRational::one()
    }
    fn from_integer(n: i64) -> Self {
        ComplexRational::from_integers(n, 0)
    }
    fn is_zero(&self) -> bool {
        ComplexRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn integral_row(row: &[Self]) -> Vec<GaussianInt> {
        let l = common_denominator(row.iter().flat_map(|z| [&z.re, &z.im]));
        let scale = |q: &Rational| q.numer() * (&l / q.denom());
        row.iter()
            .map(|z| GaussianInt {
                re: scale(&z.re),
                im: scale(&z.im),
            })
            .collect()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;
pub type ComplexMatrix = Matrix<ComplexRational>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Shape(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [T] {
        &mut self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, t| acc.add(&self.get(i, t).mul(rhs.get(t, j))))
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, T::add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, T::sub)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v.mul(c)).collect(),
        }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "hstack of {} rows with {} rows",
                self.rows, rhs.rows
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    /// The submatrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::Shape(format!(
                "column of length {} in a matrix with {rows} rows",
                c.len()
            )));
        }
        Ok(Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<T::Integral>> = (0..self.rows).map(|i| T::integral_row(self.row(i))).collect();
        bareiss_rank(&mut work, self.cols)
    }

    /// Reduced row echelon form over the field, with the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(row, f).neg();
                }
                v
            })
            .collect()
    }

    /// Unique solution of `self·x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::Shape(format!(
                "solve needs a square system, got {}x{} with rhs of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let rhs = Matrix::from_columns(self.rows, &[b.to_vec()])?;
        let (r, pivots) = self.hstack(&rhs)?.rref();
        if pivots.len() != self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::Precondition("singular system".into()));
        }
        Ok(r.column(self.cols))
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n))?.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Err(Error::Precondition("singular matrix has no inverse".into()));
        }
        Ok(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl<T: Scalar + Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(D::Error::custom)
    }
}

/// Bareiss elimination in place; returns the rank.
fn bareiss_rank<D: ExactDomain>(m: &mut [Vec<D>], cols: usize) -> usize {
    let rows = m.len();
    let mut prev = D::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                let v = pivot_row[c].mul(&row[j]).sub(&row[c].mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[c] = D::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank of a rational matrix.
pub fn rational_rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Exact rank of a matrix over the Gaussian rationals.
pub fn complex_rank(m: &ComplexMatrix) -> usize {
    m.rank()
}

/// Convenience constructor from small integers.
pub fn int_matrix(rows: &[&[i64]]) -> RationalMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
            .collect(),
    )
    .expect("ragged integer matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(rational_rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rational_rank(&RationalMatrix::zeros(4, 2)), 0);
        assert_eq!(rational_rank(&RationalMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn rank_of_swap_matrix() {
        // controllability matrix of A=[[0,1],[0,0]], B=[0;1]
        assert_eq!(rational_rank(&int_matrix(&[&[0, 1], &[1, 0]])), 2);
    }

    #[test]
    fn rank_with_fractions_and_skipped_columns() {
        let m = RationalMatrix::from_rows(vec![
            vec![Rational::zero(), Rational::new(1, 2), Rational::new(1, 3)],
            vec![Rational::zero(), Rational::from(3), Rational::from(2)],
            vec![Rational::zero(), Rational::zero(), Rational::new(5, 7)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().1, vec![1, 2]);
    }

    #[test]
    fn complex_rank_differs_from_real_intuition() {
        // rows (1, i) and (i, -1) are Q(i)-proportional
        let i = ComplexRational::i();
        let one = ComplexRational::one();
        let m = ComplexMatrix::from_rows(vec![vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]]).unwrap();
        assert_eq!(complex_rank(&m), 1);
        let m2 = ComplexMatrix::from_rows(vec![vec![one.clone(), i.clone()], vec![i, one]]).unwrap();
        assert_eq!(complex_rank(&m2), 2);
    }

    #[test]
    fn solve_and_null_space() {
        let a = int_matrix(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[Rational::from(3), Rational::from(5)]).unwrap();
        assert_eq!(x, vec![Rational::new(4, 5), Rational::new(7, 5)]);
        let s = int_matrix(&[&[1, 2], &[2, 4]]);
        assert!(s.solve(&[Rational::one(), Rational::one()]).is_err());
        let ns = s.null_space();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![Rational::from(-2), Rational::one()]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = int_matrix(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert!(int_matrix(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(RationalMatrix::new(2, 2, vec![Rational::one(); 3]).is_err());
        assert!(RationalMatrix::from_rows(vec![vec![Rational::one()], vec![]]).is_err());
        let a = RationalMatrix::zeros(2, 3);
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn json_nested_arrays() {
        let m = RationalMatrix::from_rows(vec![vec![Rational::new(1, 2), Rational::from(-3)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","-3"]]"#);
        let back: RationalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<RationalMatrix>(r#"[["1"],["1","2"]]"#).is_err());
    }
}
