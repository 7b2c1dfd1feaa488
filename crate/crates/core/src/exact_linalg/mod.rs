//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: Smith normal form
//! with unimodular transforms, Hermite reduction for membership, and the
//! lattice operations built on top of them (saturation, indices, kernels).

mod hnf;
pub mod json;
mod lattice;
mod snf;

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize};
use thiserror::Error;

pub use lattice::{Lattice, LatticeIndex};
pub use snf::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors must have positive length")]
    EmptyVector,
    #[error("matrix must have at least one row")]
    EmptyMatrix,
    #[error("row {row} has length {found}, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// An integer vector of fixed positive length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IntVector(#[serde(with = "json::vec")] Vec<BigInt>);

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        IntVector::new(json::vec::deserialize(d)?).map_err(de::Error::custom)
    }
}

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.is_empty() {
            return Err(LinalgError::EmptyVector);
        }
        Ok(IntVector(entries))
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "IntVector must have positive length");
        IntVector(vec![BigInt::zero(); len])
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "IntVector must have positive length");
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }

    pub fn scaled(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.len(), other.len());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.len(), other.len());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(a: [i64; N]) -> Self {
        IntVector::from_i64s(&a)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

/// A rectangular integer matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct IntMatrix {
    #[serde(with = "json::matrix")]
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

#[derive(Deserialize)]
struct RawMatrix {
    #[serde(with = "json::matrix")]
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl TryFrom<RawMatrix> for IntMatrix {
    type Error = LinalgError;

    fn try_from(raw: RawMatrix) -> Result<Self, LinalgError> {
        for (i, r) in raw.rows.iter().enumerate() {
            if r.len() != raw.ncols {
                return Err(LinalgError::Ragged { row: i, expected: raw.ncols, found: r.len() });
            }
        }
        Ok(IntMatrix { rows: raw.rows, ncols: raw.ncols })
    }
}

impl IntMatrix {
    pub fn new(rows: Vec<IntVector>) -> Result<Self, LinalgError> {
        let ncols = rows.first().ok_or(LinalgError::EmptyMatrix)?.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(LinalgError::Ragged { row: i, expected: ncols, found: r.len() });
            }
        }
        Ok(IntMatrix { rows: rows.into_iter().map(IntVector::into_entries).collect(), ncols })
    }

    /// Builds from raw rows; `ncols` is needed so that a matrix with zero rows
    /// still knows its width.
    pub(crate) fn from_raw(rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        IntMatrix { rows, ncols }
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        IntMatrix::new(rows.iter().map(|r| IntVector::from_i64s(r.as_ref())).collect())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        IntMatrix { rows, ncols: n }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { rows: vec![vec![BigInt::zero(); ncols]; nrows], ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.rows[i].clone())
    }

    pub fn rows(&self) -> impl Iterator<Item = IntVector> + '_ {
        self.rows.iter().map(|r| IntVector(r.clone()))
    }

    pub(crate) fn raw_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix { rows, ncols: self.nrows() }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows(), "incompatible shapes");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|j| r.iter().zip(&other.rows).map(|(a, orow)| a * &orow[j]).sum())
                    .collect()
            })
            .collect();
        IntMatrix { rows, ncols: other.ncols }
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &IntVector) -> IntVector {
        assert_eq!(v.len(), self.nrows());
        IntVector(
            (0..self.ncols)
                .map(|j| v.0.iter().zip(&self.rows).map(|(a, r)| a * &r[j]).sum())
                .collect(),
        )
    }

    /// Submatrix on the given rows and columns (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: rows.iter().map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect()).collect(),
            ncols: cols.len(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(LinalgError::NotSquare { rows: n, cols: self.ncols });
        }
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn rank(&self) -> usize {
        hnf::echelon_rows(&self.rows, self.ncols).len()
    }

    /// A basis of the integer solutions of `A x = 0` (x a column vector),
    /// returned as rows. The basis spans a saturated lattice.
    pub fn right_kernel(&self) -> IntMatrix {
        let d = smith_normal_form(self);
        let r = d.rank();
        let right = d.right_transform();
        let rows = (r..self.ncols).map(|j| right.rows.iter().map(|row| row[j].clone()).collect()).collect();
        IntMatrix { rows, ncols: self.ncols }
    }

    /// Integer coefficients `c` with `c · A = v`, if any exist.
    pub fn solve_left(&self, v: &IntVector) -> Result<Option<IntVector>, LinalgError> {
        if v.len() != self.ncols {
            return Err(LinalgError::DimensionMismatch { expected: self.ncols, found: v.len() });
        }
        // No coefficient vector exists for a row-less matrix (IntVector is never empty).
        if self.nrows() == 0 {
            return Ok(None);
        }
        let d = smith_normal_form(self);
        // left·A·right = D, so c·A = v  <=>  (c·left⁻¹)·D = v·right.
        let target = d.right_transform().left_mul(v);
        let diag = d.diagonal();
        let mut y = vec![BigInt::zero(); self.nrows()];
        for (j, t) in target.0.iter().enumerate() {
            match diag.get(j) {
                Some(dj) if !dj.is_zero() => {
                    let (q, rem) = t.div_rem(dj);
                    if !rem.is_zero() {
                        return Ok(None);
                    }
                    y[j] = q;
                }
                _ => {
                    if !t.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(d.left_transform().left_mul(&IntVector(y))))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", IntVector(r.clone()))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn abs_min_nonzero<'a>(it: impl Iterator<Item = (usize, usize, &'a BigInt)>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, j, x) in it {
        if x.is_zero() {
            continue;
        }
        let a = x.abs();
        if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
            best = Some((i, j, a));
        }
    }
    best.map(|(i, j, _)| (i, j))
}
