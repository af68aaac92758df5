//! Lattice-point generating functions of cells and regions of a complex.

mod engine;
mod parallelepiped;
mod weight;

pub use engine::{
    check_reciprocity, euler_sum, genfun_cell, genfun_closed_cone, genfun_halfopen_simplicial,
    genfun_region, halfopen_decomposition, GenFunEngine, ReciprocityReport,
};
pub use parallelepiped::parallelepiped_points;
pub use weight::{
    validate_weight, validate_weight_on, GenFunSpec, PiecewiseWeight, WeightReport, WeightViolation,
};
