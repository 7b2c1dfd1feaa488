//! Value semigroups of plane branches given by a parametrization, and the
//! Zariski relations between characteristic exponents and semigroup
//! generators.

mod curve;
mod numerical;
mod series;
mod value;
mod zariski;

use thiserror::Error;

pub use curve::{campillo_parametrization, curve_equation_residual, curve_polynomial, curve_top_exponent, verify_curve_equation};
pub use numerical::NumericalSemigroup;
pub use series::{series_order, SeriesOrder, TruncatedSeries};
pub use value::{default_truncation, value_semigroup};
pub use zariski::{char_exponents_from_semigroup, semigroup_from_char_exponents, CharExponents};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one generator")]
    NoGenerators,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators have gcd {0}, so the complement is infinite")]
    NotCofinite(u64),
    #[error("series live over different fields")]
    FieldMismatch,
    #[error("series have different truncations ({0} and {1})")]
    TruncationMismatch(u64, u64),
    #[error("series is zero to the working precision")]
    ZeroSeries,
    #[error("series has order 0; the branch must pass through the origin")]
    UnitSeries,
    #[error("all exponents share the factor {0}; the parametrization is not primitive")]
    NonPrimitive(u64),
    #[error("truncation-exhausted: a subduction vanished modulo t^{truncation}; raise the truncation")]
    TruncationExhausted { truncation: u64 },
    #[error("truncation-too-small: need at least {needed}, got {got}")]
    TruncationTooSmall { needed: u64, got: u64 },
    #[error("malformed characteristic exponents {0}")]
    MalformedExponents(String),
    #[error("not-a-plane-branch-semigroup: {0}")]
    NotPlaneBranch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}
