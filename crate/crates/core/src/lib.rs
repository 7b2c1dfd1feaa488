pub mod exact_linalg;
pub mod field;
pub mod poly;
pub mod branch_semigroup;
pub mod binomial_ideal;
pub mod toric_jacobian;
pub mod fan_geometry;
pub mod zr_space;
pub mod cli;
