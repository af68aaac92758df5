//! Exact bivariate Laurent rational functions in `q` and `t = q^-s`.

pub mod factored;
pub mod laurent;
pub mod multivar;
pub mod serial;

pub use factored::{CycloFactor, FactoredRational};
pub use laurent::{rat, LaurentPoly, Monomial};
pub use multivar::{specialize_monomials, MultiGenFun};
