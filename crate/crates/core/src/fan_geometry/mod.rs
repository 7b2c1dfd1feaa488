//! Rational polyhedral cones in rank at most three, their dual semigroups,
//! and fans with refinements, orbit posets and heights.

mod cone;
mod fan;
mod hilbert;
mod planar;

use thiserror::Error;

pub use cone::{dual_cone, is_primitive, primitive, Cone};
pub use fan::{common_refinement, height, orbit_map, orbit_poset, refine_check, stellar_subdivision, validate_fan, Fan, OrbitPoset, RawFan};
pub use hilbert::{hilbert_basis, semigroup_generators, HilbertBasis};
pub use planar::{
    angle_cmp, barycentric_subdivision, barycentric_tower, count_complete_fans, enumerate_complete_fans, fan_from_cyclic_rays,
    finest_complete_fan, primitive_rays, random_complete_fan,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("rank {0} is not supported (1 to 3 for cones, 2 for enumeration)")]
    UnsupportedRank(usize),
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not strictly convex")]
    NotStrictlyConvex(String),
    #[error("{0} is not full dimensional, so its dual is not strictly convex")]
    NotFullDimensional(String),
    #[error("not a fan: {first} and {second} do not meet in a common face")]
    NotAFan { first: String, second: String },
    #[error("{0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("{0:?} is outside the support of the fan")]
    OutsideSupport(Vec<i64>),
    #[error("the fans have different supports")]
    SupportMismatch,
    #[error("{0} is not a cone of the fan")]
    NotInFan(String),
    #[error("the first fan does not refine the second")]
    NotARefinement,
    #[error("the fan has no rays")]
    NoRays,
    #[error("ray index {index} out of range ({rays} rays)")]
    RayIndex { index: usize, rays: usize },
    #[error("the rays do not form a complete fan")]
    NotComplete,
}
