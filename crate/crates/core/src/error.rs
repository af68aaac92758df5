use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate factor (1 - q^0 t^0)")]
    ZeroFactor,
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("direction {direction:?} has B.u = {pairing} <= 0, so the series does not converge")]
    NonPositiveDirection { direction: Vec<i64>, pairing: i64 },
    #[error("cannot expand (1 - q^{a} t^{b}) as a power series in t")]
    ExpansionDirection { a: i64, b: i64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid hyperplane: {0}")]
    Hyperplane(String),
    #[error("cone is not pointed")]
    NotPointed,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unsupported root system: {0}")]
    RootSystem(String),
    #[error("Weyl group exceeds the bound of {0} elements")]
    GroupTooLarge(usize),
    #[error("invalid weight datum: {0}")]
    WeightDatum(String),
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(i64, i64),
    #[error("parameter out of range: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
