//! Binomial systems `U^m − λU^n` with weights and overweight deformation
//! terms. Primality of the lattice ideal is decided at the torus level by
//! lattice saturation plus consistency of the coefficient character.

mod character;
mod primality;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::LinalgError;
use crate::field::{CoefficientField, FieldError};

pub use character::PartialCharacter;
pub use primality::{
    is_overweight, lattice_of, laurent_membership, primality_report, EquationWeights, OverweightReport,
    PrimalityReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinomialError {
    #[error("binomial coefficient must be a nonzero field element, got {0}")]
    ZeroLambda(i64),
    #[error("both monomials are equal after cancelling common factors")]
    EqualMonomials,
    #[error("exponent vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weight of variable {0} must be positive")]
    NonPositiveWeight(usize),
    #[error("expected {expected} deformation lists, got {found}")]
    DeformationCount { expected: usize, found: usize },
    #[error("system has no variables")]
    NoVariables,
    #[error("inconsistent character: relation {relation} among the generators gives {value}, expected 1")]
    InconsistentCharacter { relation: String, value: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `U^m − λ U^n`. Common factors of the two monomials are cancelled on
/// construction, so the supports are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Binomial {
    m: Vec<u64>,
    n: Vec<u64>,
    lambda: i64,
}

impl Binomial {
    pub fn new(mut m: Vec<u64>, mut n: Vec<u64>, lambda: i64) -> Result<Self, BinomialError> {
        if m.len() != n.len() {
            return Err(BinomialError::DimensionMismatch { expected: m.len(), found: n.len() });
        }
        if lambda == 0 {
            return Err(BinomialError::ZeroLambda(lambda));
        }
        for (a, b) in m.iter_mut().zip(n.iter_mut()) {
            let c = (*a).min(*b);
            *a -= c;
            *b -= c;
        }
        if m == n {
            return Err(BinomialError::EqualMonomials);
        }
        Ok(Binomial { m, n, lambda })
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn n(&self) -> &[u64] {
        &self.n
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    pub fn nvars(&self) -> usize {
        self.m.len()
    }

    /// `m − n` as signed integers.
    pub fn difference(&self) -> Vec<i64> {
        self.m.iter().zip(&self.n).map(|(&a, &b)| a as i64 - b as i64).collect()
    }
}

/// An extra term `c · U^e` added to one equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeformationTerm {
    pub exponent: Vec<u64>,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialSystem {
    variables: Vec<String>,
    weights: Vec<u64>,
    field: CoefficientField,
    binomials: Vec<Binomial>,
    deformations: Vec<Vec<DeformationTerm>>,
}

impl BinomialSystem {
    pub fn new(
        variables: Vec<String>,
        weights: Vec<u64>,
        field: CoefficientField,
        binomials: Vec<Binomial>,
        deformations: Vec<Vec<DeformationTerm>>,
    ) -> Result<Self, BinomialError> {
        let nv = variables.len();
        if nv == 0 {
            return Err(BinomialError::NoVariables);
        }
        if weights.len() != nv {
            return Err(BinomialError::DimensionMismatch { expected: nv, found: weights.len() });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(BinomialError::NonPositiveWeight(i));
        }
        for b in &binomials {
            if b.nvars() != nv {
                return Err(BinomialError::DimensionMismatch { expected: nv, found: b.nvars() });
            }
            if field.characteristic() != 0 && b.lambda.rem_euclid(field.characteristic() as i64) == 0 {
                return Err(BinomialError::ZeroLambda(b.lambda));
            }
        }
        if deformations.len() != binomials.len() {
            return Err(BinomialError::DeformationCount { expected: binomials.len(), found: deformations.len() });
        }
        for t in deformations.iter().flatten() {
            if t.exponent.len() != nv {
                return Err(BinomialError::DimensionMismatch { expected: nv, found: t.exponent.len() });
            }
        }
        Ok(BinomialSystem { variables, weights, field, binomials, deformations })
    }

    /// Binomials only, no deformation terms.
    pub fn undeformed(
        variables: Vec<String>,
        weights: Vec<u64>,
        field: CoefficientField,
        binomials: Vec<Binomial>,
    ) -> Result<Self, BinomialError> {
        let d = vec![Vec::new(); binomials.len()];
        Self::new(variables, weights, field, binomials, d)
    }

    /// The monomial curve `x = t^{p³}, y = t^{p³+p²}, u₂, u₃` of the semigroup
    /// `⟨p³, p³+p², p⁴+p³+p²+p, p⁵+…+1⟩` in its canonical relations
    /// `y^p − x^{p+1}, u₂^p − x^{p(p+1)}y, u₃^p − x^{p²(p+1)}u₂`. With
    /// `deformed` the terms `−u₂` and `−u₃` are added to the first two
    /// equations, which cuts out the plane branch.
    pub fn campillo(p: u64, deformed: bool) -> Result<Self, BinomialError> {
        let field = CoefficientField::new(p)?;
        let names = ["x", "y", "u2", "u3"].map(String::from).to_vec();
        let weights = vec![
            p.pow(3),
            p.pow(3) + p * p,
            p.pow(4) + p.pow(3) + p * p + p,
            (0..6).map(|k| p.pow(k)).sum(),
        ];
        let binomials = vec![
            Binomial::new(vec![0, p, 0, 0], vec![p + 1, 0, 0, 0], 1)?,
            Binomial::new(vec![0, 0, p, 0], vec![p * (p + 1), 1, 0, 0], 1)?,
            Binomial::new(vec![0, 0, 0, p], vec![p * p * (p + 1), 0, 1, 0], 1)?,
        ];
        let deformations = if deformed {
            vec![
                vec![DeformationTerm { exponent: vec![0, 0, 1, 0], coefficient: -1 }],
                vec![DeformationTerm { exponent: vec![0, 0, 0, 1], coefficient: -1 }],
                Vec::new(),
            ]
        } else {
            vec![Vec::new(); 3]
        };
        Self::new(names, weights, field, binomials, deformations)
    }

    /// The presentation in three variables that the plane equation seems to
    /// suggest: `y² − x³ − u₂, u₂⁴ − x¹⁵` for `p = 2`, and
    /// `y^p − x^{p+1} − u₂, u₂^{p²} − 2x^{p²(p+1)}y^p` for odd `p`.
    pub fn campillo_plane_pair(p: u64) -> Result<Self, BinomialError> {
        let field = CoefficientField::new(p)?;
        let names = ["x", "y", "u2"].map(String::from).to_vec();
        let weights = vec![p.pow(3), p.pow(3) + p * p, p.pow(4) + p.pow(3) + p * p + p];
        let second = if p == 2 {
            Binomial::new(vec![0, 0, 4], vec![15, 0, 0], 1)?
        } else {
            Binomial::new(vec![0, 0, p * p], vec![p * p * (p + 1), p, 0], 2)?
        };
        let binomials = vec![Binomial::new(vec![0, p, 0], vec![p + 1, 0, 0], 1)?, second];
        let deformations = vec![vec![DeformationTerm { exponent: vec![0, 0, 1], coefficient: -1 }], Vec::new()];
        Self::new(names, weights, field, binomials, deformations)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn binomials(&self) -> &[Binomial] {
        &self.binomials
    }

    pub fn deformations(&self) -> &[Vec<DeformationTerm>] {
        &self.deformations
    }

    pub fn is_deformed(&self) -> bool {
        self.deformations.iter().any(|d| !d.is_empty())
    }

    /// `⟨e, γ⟩`
    pub fn weight_of(&self, exponent: &[u64]) -> u64 {
        exponent.iter().zip(&self.weights).map(|(a, b)| a * b).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_common_factors() {
        let b = Binomial::new(vec![2, 1, 0], vec![1, 0, 3], 1).unwrap();
        assert_eq!(b.m(), &[1, 1, 0]);
        assert_eq!(b.n(), &[0, 0, 3]);
        assert_eq!(Binomial::new(vec![1, 1], vec![1, 1], 1), Err(BinomialError::EqualMonomials));
        assert_eq!(Binomial::new(vec![1, 0], vec![0, 1], 0), Err(BinomialError::ZeroLambda(0)));
    }

    #[test]
    fn lambda_must_survive_reduction() {
        let f = CoefficientField::new(2).unwrap();
        let b = Binomial::new(vec![1, 0], vec![0, 1], 2).unwrap();
        let r = BinomialSystem::undeformed(vec!["x".into(), "y".into()], vec![1, 1], f, vec![b]);
        assert_eq!(r, Err(BinomialError::ZeroLambda(2)));
    }

    #[test]
    fn campillo_weights_balance() {
        for p in [2, 3, 5] {
            let s = BinomialSystem::campillo(p, true).unwrap();
            for b in s.binomials() {
                assert_eq!(s.weight_of(b.m()), s.weight_of(b.n()));
            }
        }
        let s = BinomialSystem::campillo(2, false).unwrap();
        assert_eq!(s.weights(), &[8, 12, 30, 63]);
        assert_eq!(s.binomials()[0].difference(), vec![-3, 2, 0, 0]);
    }
}
