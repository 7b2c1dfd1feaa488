//! Jacobians of binomial systems in characteristic `p`, the integer minors
//! of the relation matrix, and the tame coordinate projections they select.

mod congruence;
mod jacobian;
mod tame;

use thiserror::Error;

use crate::binomial_ideal::BinomialError;
use crate::exact_linalg::LinalgError;

pub use congruence::{minor_congruence_check, minor_nonvanishing_on_torus, CongruenceReport, NonvanishingReport, SAMPLE_PRIME};
pub use jacobian::{determinant_over, jacobian, jacobian_over, minor_at, system_polynomials, SymbolicJacobian};
pub use tame::{find_tame_projections, gamma_from_weights, projection_is_finite, RelationMatrix, TameProjection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error("jacobians are taken in prime characteristic; got characteristic 0")]
    CharacteristicZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("{relations} relations cannot give minors of size {codim}")]
    TooFewRelations { relations: usize, codim: usize },
    #[error("gamma must have one row per variable ({expected}), got {found}")]
    GammaShape { expected: usize, found: usize },
    #[error("no minor is prime to {0}; the semigroup data are inconsistent")]
    NoTameProjection(u64),
    #[error("|minor| = {minor} differs from the index {index}")]
    MinorIndexMismatch { minor: String, index: String },
    #[error("expected {expected} kept variables, got {found}")]
    KeptCount { expected: usize, found: usize },
    #[error("kept generators are linearly dependent")]
    DependentKept,
    #[error("invalid selection: {0}")]
    BadSelection(String),
    #[error("the congruence check needs a pure binomial system (no deformation terms)")]
    Deformed,
    #[error("sample point does not satisfy equation {0}; coefficients must be 1 and weights balanced")]
    PointOffVariety(usize),
    #[error("minor does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Binomial(#[from] BinomialError),
}
