//! Exact lattice-point generating functions over rational polyhedral cell
//! complexes, Weyl-group-weighted sums of them, and checks of their
//! reciprocity and functional equations.
//!
//! Every generating function is a [`FactoredRational`] in two variables `q`
//! and `t`, where `t` stands for `q^-s`.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod genfun;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod par;
pub mod weyl;
pub mod zeta;

pub use algebra::{FactoredRational, LaurentPoly, Monomial};
pub use error::{Error, Result};
pub use genfun::{GenFunEngine, GenFunSpec, PiecewiseWeight};
pub use geometry::{Cell, CellComplex, Hyperplane, Sign, SignVector};
