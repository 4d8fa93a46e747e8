use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input that violates an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate exponent: the k² coefficient is zero, no Gaussian form")]
    DegenerateExponent,

    /// A wavefunction product left the representable range.
    #[error("overflow evaluating integrand at x = {x}, y = {y}")]
    Overflow { x: f64, y: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Cli(#[from] clap::Error),

    #[error("validation failed: {0} check(s) out of tolerance")]
    ValidationFailed(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Cli(_) | Error::Json(_) => 1,
            Error::ValidationFailed(_) => 3,
            Error::InvalidInput(_)
            | Error::DegenerateExponent
            | Error::Overflow { .. }
            | Error::Unsupported(_)
            | Error::GridMismatch(_)
            | Error::Io(_) => 2,
        }
    }
}
