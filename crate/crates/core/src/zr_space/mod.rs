//! Additive preorders on `Z^r` given by integer matrices, the cones they
//! dominate in fans and towers of fans, and the distances `d` and `d̃`.

mod dominate;
mod experiments;
mod metrics;
mod preorder;

use thiserror::Error;

use crate::fan_geometry::FanError;

pub use dominate::{dominated_cone, in_u_sigma, thread, DominationResult, DominationTable, Thread};
pub use experiments::{cantor_fiber_experiment, metric_comparison_experiment, Envelope, FiberReport, FiberRow, MetricReport, MetricSample};
pub use metrics::{difference_radius, distance_d, distance_dtilde, Distance, HeightLadder};
pub use preorder::Preorder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZrError {
    #[error("expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a preorder on Z^{rank} has at most {rank} rows, got {rows}")]
    TooManyRows { rows: usize, rank: usize },
    #[error("the rank of the preorder is unknown: give `rank` or at least one row")]
    UnknownRank,
    #[error("rank {0} is not supported here (only 2)")]
    UnsupportedRank(usize),
    #[error("no cone of the fan is dominated; is the fan complete?")]
    NoDominatedCone,
    #[error("{0} cones pass the domination test")]
    SeveralDominatedCones(usize),
    #[error("stage {0} does not refine the previous stage")]
    NotARefinement(usize),
    #[error("dominated cone at stage {0} is not inside the previous one")]
    ThreadNotNested(usize),
    #[error("caps must be positive")]
    ZeroCap,
    #[error(transparent)]
    Fan(#[from] FanError),
}
