use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series did not converge within {terms} terms (|x| = {abs_x:e})")]
    NonConvergence { terms: usize, abs_x: f64 },

    #[error("need at least {needed} zeros, table holds {available}")]
    InsufficientZeros { needed: usize, available: usize },

    #[error("found only {found} of {requested} zeros below {upper_limit}")]
    NotEnoughZeros {
        found: usize,
        requested: usize,
        upper_limit: f64,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("singularity reached at r = {r}")]
    SingularityReached { r: f64 },

    #[error("no sign change in bracket ({lo}, {hi}): psi(lo) = {psi_lo}, psi(hi) = {psi_hi}")]
    BracketFailure { lo: f64, hi: f64, psi_lo: f64, psi_hi: f64 },

    #[error("residual {residual:e} exceeds {limit:e} at the root")]
    ResidualTooLarge { residual: f64, limit: f64 },
}

impl Error {
    /// Whether the failure comes from validating inputs rather than from a
    /// numerical procedure.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::PreconditionViolation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
