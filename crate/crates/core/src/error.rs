use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("mapping formula not provided for N>2 (got {0} resonators); supply a Foster form directly")]
    UnsupportedModeCount(usize),

    #[error("asymmetric coupling capacitances ({0} fF vs {1} fF); the two-mode mapping assumes equal couplings")]
    AsymmetricCoupling(f64, f64),

    #[error("gauge parameter {0} outside [0, 1]")]
    EtaOutOfRange(f64),

    #[error("qubit basis not converged: level {level} moved by {shift:.3e} (relative) when the basis grew from {from} to {to}")]
    Truncation {
        level: usize,
        shift: f64,
        from: usize,
        to: usize,
    },

    #[error("Hilbert space dimension {dimension} exceeds the budget of {budget}")]
    DimensionBudget { dimension: usize, budget: usize },

    #[error("small energy denominator {value:.3e} between model state {model} and complement state {complement}")]
    SmallDenominator {
        model: usize,
        complement: usize,
        value: f64,
    },

    #[error("operator is not diagonal in the product basis (off-diagonal weight {0:.3e})")]
    NotDiagonal(f64),

    #[error("operators live on different bases")]
    BasisMismatch,

    #[error("grid too coarse: need at least {min} points, got {got}")]
    GridTooCoarse { min: usize, got: usize },

    #[error("spectrum too short: need {needed} levels, got {got}")]
    SpectrumLength { needed: usize, got: usize },

    #[error("no grid point could be evaluated")]
    NoValidPoints,

    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
