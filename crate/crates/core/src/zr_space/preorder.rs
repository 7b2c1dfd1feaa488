use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exact_linalg::{IntMatrix, IntVector};

use super::ZrError;

/// The additive preorder `m ⪯ n ⇔ (<m,v_1>,…,<m,v_s>) ≤_lex (<n,v_1>,…,<n,v_s>)`
/// on `Z^r`. With no rows every element is equivalent to every other.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPreorder", into = "RawPreorder")]
pub struct Preorder {
    rank: usize,
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawPreorder {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<RawPreorder> for Preorder {
    type Error = ZrError;

    fn try_from(raw: RawPreorder) -> Result<Self, ZrError> {
        let rank = match (raw.rank, raw.rows.first()) {
            (Some(r), _) => r,
            (None, Some(v)) => v.len(),
            (None, None) => return Err(ZrError::UnknownRank),
        };
        Preorder::new(rank, raw.rows)
    }
}

impl From<Preorder> for RawPreorder {
    fn from(w: Preorder) -> Self {
        RawPreorder { rank: Some(w.rank), rows: w.rows }
    }
}

fn pair(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

impl Preorder {
    pub fn new(rank: usize, rows: Vec<Vec<i64>>) -> Result<Self, ZrError> {
        if rank == 0 {
            return Err(ZrError::UnknownRank);
        }
        if rows.len() > rank {
            return Err(ZrError::TooManyRows { rows: rows.len(), rank });
        }
        if let Some(v) = rows.iter().find(|v| v.len() != rank) {
            return Err(ZrError::DimensionMismatch { expected: rank, found: v.len() });
        }
        Ok(Preorder { rank, rows })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, ZrError> {
        let rank = rows.first().map(|v| v.as_ref().len()).ok_or(ZrError::UnknownRank)?;
        Preorder::new(rank, rows.iter().map(|v| v.as_ref().to_vec()).collect())
    }

    pub fn trivial(rank: usize) -> Self {
        Preorder { rank, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    fn check(&self, v: &[i64]) -> Result<(), ZrError> {
        if v.len() != self.rank {
            return Err(ZrError::DimensionMismatch { expected: self.rank, found: v.len() });
        }
        Ok(())
    }

    pub fn compare(&self, m: &[i64], n: &[i64]) -> Result<Ordering, ZrError> {
        self.check(m)?;
        self.check(n)?;
        Ok(self.compare_unchecked(m, n))
    }

    pub(crate) fn compare_unchecked(&self, m: &[i64], n: &[i64]) -> Ordering {
        self.rows.iter().map(|v| pair(m, v).cmp(&pair(n, v))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }

    /// Comparison of `m` with `0`.
    pub(crate) fn sign(&self, m: &[i64]) -> Ordering {
        self.rows.iter().map(|v| pair(m, v).cmp(&0)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }

    /// True when no nonzero vector is equivalent to `0`, i.e. the rows span `Q^r`.
    pub fn is_order(&self) -> bool {
        if self.rows.len() < self.rank {
            return false;
        }
        let rows: Vec<IntVector> = self.rows.iter().map(|v| IntVector::from_i64s(v)).collect();
        IntMatrix::new(rows).map(|m| m.rank() == self.rank).unwrap_or(false)
    }

    /// Rows orthogonalised over `Q` in order, dependent ones dropped, each
    /// scaled to a primitive integer vector. Two integer preorders are equal
    /// as relations on `Z^r` exactly when their canonical forms agree.
    pub fn canonical(&self) -> Preorder {
        let mut basis: Vec<Vec<BigRational>> = Vec::new();
        for v in &self.rows {
            let mut u: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            for b in &basis {
                let num: BigRational = u.iter().zip(b).map(|(x, y)| x * y).sum();
                let den: BigRational = b.iter().map(|y| y * y).sum();
                let c = num / den;
                for (x, y) in u.iter_mut().zip(b) {
                    *x -= &c * y;
                }
            }
            if u.iter().any(|x| !x.is_zero()) {
                basis.push(u);
            }
        }
        let rows = basis
            .into_iter()
            .map(|u| {
                let l = u.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
                let ints: Vec<BigInt> = u.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
                let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                ints.iter().map(|x| (x / &g).to_i64().expect("canonical row fits in i64")).collect()
            })
            .collect();
        Preorder { rank: self.rank, rows }
    }

    /// Equality as relations on `Z^r`.
    pub fn same_as(&self, other: &Preorder) -> bool {
        self.rank == other.rank && self.canonical().rows == other.canonical().rows
    }

    /// A random order whose rows have entries in `[-bound, bound]`.
    pub fn random_order<R: Rng + ?Sized>(rank: usize, bound: i64, rng: &mut R) -> Preorder {
        loop {
            let rows = (0..rank).map(|_| (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
            let w = Preorder { rank, rows };
            if w.is_order() {
                return w;
            }
        }
    }
}

impl fmt::Display for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows.iter().map(|v| format!("({})", v.iter().join(","))).join(",");
        write!(f, "w[{rows}]")
    }
}

impl fmt::Debug for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
