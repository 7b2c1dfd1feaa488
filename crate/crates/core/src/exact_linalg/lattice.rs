use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hnf::{echelon_rows, reduce};
use super::snf::smith_normal_form;
use super::{IntMatrix, IntVector, LinalgError};

/// Subgroup of `Z^n` spanned by the rows of a generator matrix.
/// Zero generator rows are allowed and ignored.
#[derive(Clone, Serialize, Deserialize)]
pub struct Lattice {
    ambient_rank: usize,
    generators: IntMatrix,
}

/// Index of a sublattice in `Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(k) => Some(k),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(k) => write!(f, "{k}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

impl Lattice {
    pub fn new(ambient_rank: usize, generators: Vec<IntVector>) -> Result<Self, LinalgError> {
        if ambient_rank == 0 {
            return Err(LinalgError::EmptyVector);
        }
        for g in &generators {
            if g.len() != ambient_rank {
                return Err(LinalgError::DimensionMismatch { expected: ambient_rank, found: g.len() });
            }
        }
        let rows = generators.into_iter().map(IntVector::into_entries).collect();
        Ok(Lattice { ambient_rank, generators: IntMatrix::from_raw(rows, ambient_rank) })
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        Lattice { ambient_rank: m.ncols(), generators: m.clone() }
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(ambient_rank: usize, rows: &[R]) -> Result<Self, LinalgError> {
        Lattice::new(ambient_rank, rows.iter().map(|r| IntVector::from_i64s(r.as_ref())).collect())
    }

    /// The full lattice `Z^n`.
    pub fn standard(n: usize) -> Self {
        Lattice::from_matrix(&IntMatrix::identity(n))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// Hermite basis of the lattice (rows are linearly independent).
    pub fn basis(&self) -> Vec<IntVector> {
        echelon_rows(self.generators.raw_rows(), self.ambient_rank)
            .into_iter()
            .map(|r| IntVector::new(r).expect("ambient rank is positive"))
            .collect()
    }

    pub fn rank(&self) -> usize {
        echelon_rows(self.generators.raw_rows(), self.ambient_rank).len()
    }

    pub fn contains(&self, v: &IntVector) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_rank {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_rank, found: v.len() });
        }
        let basis = echelon_rows(self.generators.raw_rows(), self.ambient_rank);
        Ok(reduce(&basis, v.entries()).iter().all(Zero::is_zero))
    }

    /// Elementary divisors of the generator matrix (nonzero ones only).
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        if self.generators.nrows() == 0 {
            return Vec::new();
        }
        smith_normal_form(&self.generators).elementary_divisors().to_vec()
    }

    /// `(Q ⊗ L) ∩ Z^n`, obtained by dividing out the elementary divisors.
    pub fn saturate(&self) -> Lattice {
        let n = self.ambient_rank;
        if self.generators.nrows() == 0 {
            return Lattice { ambient_rank: n, generators: IntMatrix::from_raw(Vec::new(), n) };
        }
        let d = smith_normal_form(&self.generators);
        let rows = d.right_inverse().raw_rows()[..d.rank()].to_vec();
        Lattice { ambient_rank: n, generators: IntMatrix::from_raw(rows, n) }
    }

    pub fn is_saturated(&self) -> bool {
        self.elementary_divisors().iter().all(One::is_one)
    }

    /// Vectors of the saturation that are missing from `self`, each paired
    /// with the smallest multiple that lands back in `self` (the torsion
    /// order of its class). One per elementary divisor greater than one.
    pub fn torsion_witnesses(&self) -> Vec<(IntVector, BigInt)> {
        if self.generators.nrows() == 0 {
            return Vec::new();
        }
        let d = smith_normal_form(&self.generators);
        d.elementary_divisors()
            .iter()
            .enumerate()
            .filter(|(_, k)| !k.is_one())
            .map(|(i, k)| (d.right_inverse().row(i), k.clone()))
            .collect()
    }

    /// Index in `Z^n`: the product of elementary divisors when the lattice
    /// has full rank, otherwise infinite.
    pub fn index(&self) -> LatticeIndex {
        let divs = self.elementary_divisors();
        if divs.len() < self.ambient_rank {
            LatticeIndex::Infinite
        } else {
            LatticeIndex::Finite(divs.iter().product())
        }
    }

    /// Equality as subgroups, by mutual membership of generators.
    pub fn same_as(&self, other: &Lattice) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.generators.rows().all(|g| other.contains(&g).unwrap_or(false))
            && other.generators.rows().all(|g| self.contains(&g).unwrap_or(false))
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.generators.rows().all(|g| other.contains(&g).unwrap_or(false))
    }

    /// A unimodular basis of `Z^n` whose first `rank` rows span the
    /// saturation of `self`. Returned together with its inverse.
    pub fn adapted_basis(&self) -> (IntMatrix, IntMatrix, usize) {
        let n = self.ambient_rank;
        if self.generators.nrows() == 0 {
            return (IntMatrix::identity(n), IntMatrix::identity(n), 0);
        }
        let d = smith_normal_form(&self.generators);
        (d.right_inverse().clone(), d.right_transform().clone(), d.rank())
    }

    /// Integer coefficients expressing `v` in the generators, if `v ∈ L`.
    pub fn coordinates(&self, v: &IntVector) -> Result<Option<IntVector>, LinalgError> {
        self.generators.solve_left(v)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice<Z^{}>{:?}", self.ambient_rank, self.generators)
    }
}
