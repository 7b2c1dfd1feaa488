use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial_ideal::BinomialSystem;
use crate::exact_linalg::{json, IntMatrix, IntVector, Lattice, LatticeIndex};
use crate::field::is_prime;

use super::JacobianError;

/// Rows `m^ℓ − n^ℓ` of a binomial system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationMatrix {
    rows: IntMatrix,
}

impl RelationMatrix {
    pub fn new(rows: IntMatrix) -> Result<Self, JacobianError> {
        if let Some(i) = rows.rows().position(|r| r.is_zero()) {
            return Err(JacobianError::ZeroRelation(i));
        }
        Ok(RelationMatrix { rows })
    }

    pub fn of_system(system: &BinomialSystem) -> Result<Self, JacobianError> {
        let rows: Vec<IntVector> = system.binomials().iter().map(|b| IntVector::from(b.difference())).collect();
        if rows.is_empty() {
            return Err(JacobianError::TooFewRelations { relations: 0, codim: system.nvars() });
        }
        Self::new(IntMatrix::new(rows)?)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.rows
    }

    pub fn nrelations(&self) -> usize {
        self.rows.nrows()
    }

    pub fn nvars(&self) -> usize {
        self.rows.ncols()
    }

    /// `Det_{G,L'}`: the minor on rows `rows` and columns `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        self.rows.select(rows, cols).determinant().expect("square selection")
    }
}

/// Semigroup generators `γ_i` as the rows of an `N × r` matrix; for a
/// numerical semigroup this is the column of weights.
pub fn gamma_from_weights(weights: &[u64]) -> IntMatrix {
    let rows: Vec<[i64; 1]> = weights.iter().map(|&w| [w as i64]).collect();
    IntMatrix::from_i64_rows(&rows).expect("nonempty weights")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameProjection {
    /// Variables not differentiated; the projection is onto these.
    pub kept_variables: Vec<usize>,
    /// The columns `G` of the minor.
    pub differentiated: Vec<usize>,
    /// The rows `L'` of the minor.
    pub rows: Vec<usize>,
    #[serde(with = "json")]
    pub minor_value: BigInt,
    /// Index of `Zγ_{i_1} + … + Zγ_{i_r}` in `Z^r`.
    pub index: LatticeIndex,
    /// Whether `|minor| = index` was required and verified.
    pub index_certified: bool,
}

impl TameProjection {
    pub fn coprime_to(&self, p: u64) -> bool {
        !self.minor_value.is_multiple_of(&BigInt::from(p))
    }
}

/// All minors `Det_{G,L'}` of size `c = N − r` that are nonzero mod `p`,
/// with the index of the lattice spanned by the γ's of the kept variables.
///
/// When `L = c`, the relation lattice is saturated and every row is used,
/// `|minor| = index` is enforced as a hard error.
pub fn find_tame_projections(relations: &RelationMatrix, gamma: &IntMatrix, p: u64) -> Result<Vec<TameProjection>, JacobianError> {
    if !is_prime(p) {
        return Err(JacobianError::NotPrime(p));
    }
    let n = relations.nvars();
    if gamma.nrows() != n {
        return Err(JacobianError::GammaShape { expected: n, found: gamma.nrows() });
    }
    let r = gamma.ncols();
    if r > n {
        return Err(JacobianError::GammaShape { expected: n, found: r });
    }
    let c = n - r;
    let l = relations.nrelations();
    if l < c {
        return Err(JacobianError::TooFewRelations { relations: l, codim: c });
    }
    let saturated = Lattice::from_matrix(relations.matrix()).is_saturated();
    let pb = BigInt::from(p);

    let mut out = Vec::new();
    for cols in (0..n).combinations(c) {
        let kept: Vec<usize> = (0..n).filter(|j| !cols.contains(j)).collect();
        let index = Lattice::from_matrix(&gamma.select(&kept, &(0..r).collect::<Vec<_>>())).index();
        for rows in (0..l).combinations(c) {
            let minor = relations.minor(&rows, &cols);
            if minor.is_multiple_of(&pb) {
                continue;
            }
            let certify = l == c && saturated;
            if certify && index.finite() != Some(&minor.abs()) {
                return Err(JacobianError::MinorIndexMismatch { minor: minor.to_string(), index: index.to_string() });
            }
            out.push(TameProjection {
                kept_variables: kept.clone(),
                differentiated: cols.clone(),
                rows,
                minor_value: minor,
                index: index.clone(),
                index_certified: certify,
            });
        }
    }
    if out.is_empty() {
        return Err(JacobianError::NoTameProjection(p));
    }
    Ok(out)
}

/// Whether every `γ_j` lies in the cone spanned by the kept `γ`'s. The kept
/// vectors must form a basis of `Q^r`; coordinates come from Cramer's rule.
pub fn projection_is_finite(gamma: &IntMatrix, kept: &[usize]) -> Result<bool, JacobianError> {
    let r = gamma.ncols();
    if kept.len() != r {
        return Err(JacobianError::KeptCount { expected: r, found: kept.len() });
    }
    if kept.iter().any(|&k| k >= gamma.nrows()) || kept.iter().duplicates().next().is_some() {
        return Err(JacobianError::BadSelection(format!("{kept:?}")));
    }
    let cols: Vec<usize> = (0..r).collect();
    let basis = gamma.select(kept, &cols);
    let det = basis.determinant()?;
    if det.is_zero() {
        return Err(JacobianError::DependentKept);
    }
    for g in gamma.rows() {
        for i in 0..r {
            // replace row i of the basis by g
            let mut rows: Vec<IntVector> = basis.rows().collect();
            rows[i] = g.clone();
            let di = IntMatrix::new(rows)?.determinant()?;
            if !di.is_zero() && di.signum() != det.signum() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn campillo(p: u64) -> (RelationMatrix, IntMatrix) {
        let s = BinomialSystem::campillo(p, false).unwrap();
        (RelationMatrix::of_system(&s).unwrap(), gamma_from_weights(s.weights()))
    }

    #[test]
    fn campillo_unique_projection() {
        for p in [2u64, 3, 5, 7] {
            let (rel, gamma) = campillo(p);
            let t = find_tame_projections(&rel, &gamma, p).unwrap();
            assert_eq!(t.len(), 1, "p = {p}");
            assert_eq!(t[0].kept_variables, vec![3]);
            let idx: u64 = (0..6).map(|k| p.pow(k)).sum();
            assert_eq!(t[0].minor_value.abs(), BigInt::from(idx));
            assert_eq!(t[0].index, LatticeIndex::Finite(BigInt::from(idx)));
            assert!(t[0].index_certified);
            assert!(t[0].coprime_to(p));
            // sign: -(p+1)(1+p^2+p^4)
            assert_eq!(t[0].minor_value, -BigInt::from((p + 1) * (1 + p * p + p.pow(4))));
        }
    }

    #[test]
    fn unimodular_example() {
        let rel = RelationMatrix::new(IntMatrix::from_i64_rows(&[[-1, -1, 1]]).unwrap()).unwrap();
        let gamma = IntMatrix::from_i64_rows(&[[1, 0], [0, 1], [1, 1]]).unwrap();
        for p in [2, 3, 5] {
            let t = find_tame_projections(&rel, &gamma, p).unwrap();
            let kept: Vec<Vec<usize>> = t.iter().map(|x| x.kept_variables.clone()).collect();
            assert_eq!(kept, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
            assert!(t.iter().all(|x| x.index == LatticeIndex::Finite(BigInt::from(1))));
        }
    }

    #[test]
    fn minors_with_a_zero_column_mod_p_vanish_mod_p() {
        for p in [2u64, 3, 5] {
            let (rel, _) = campillo(p);
            let m = rel.matrix();
            let pb = BigInt::from(p);
            for cols in (0..4).combinations(3) {
                let zero_col = cols.iter().any(|&j| (0..3).all(|i| m.get(i, j).is_multiple_of(&pb)));
                if zero_col {
                    assert!(rel.minor(&[0, 1, 2], &cols).is_multiple_of(&pb));
                }
            }
        }
    }

    #[test]
    fn finiteness() {
        let g = gamma_from_weights(&[8, 12, 30, 63]);
        assert!(projection_is_finite(&g, &[3]).unwrap());
        let g = IntMatrix::from_i64_rows(&[[1, 0], [0, 1], [1, 1]]).unwrap();
        assert!(!projection_is_finite(&g, &[0, 2]).unwrap());
        assert!(projection_is_finite(&g, &[0, 1]).unwrap());
        assert!(matches!(projection_is_finite(&g, &[0]), Err(JacobianError::KeptCount { .. })));
        let g = IntMatrix::from_i64_rows(&[[1, 1], [2, 2], [0, 1]]).unwrap();
        assert!(matches!(projection_is_finite(&g, &[0, 1]), Err(JacobianError::DependentKept)));
    }

    #[test]
    fn precondition_errors() {
        let rel = RelationMatrix::new(IntMatrix::from_i64_rows(&[[-1, -1, 1]]).unwrap()).unwrap();
        let gamma = IntMatrix::from_i64_rows(&[[1], [1], [2]]).unwrap();
        assert!(matches!(find_tame_projections(&rel, &gamma, 2), Err(JacobianError::TooFewRelations { .. })));
        assert!(matches!(find_tame_projections(&rel, &gamma, 4), Err(JacobianError::NotPrime(4))));
        assert!(RelationMatrix::new(IntMatrix::from_i64_rows(&[[0, 0]]).unwrap()).is_err());
    }
}
