use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exact identity that must hold by construction did not. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("polynomial is not divisible by x (constant term {0})")]
    NotDivisibleByX(String),

    #[error("function has no derivative evaluator; use the c-coefficient path instead")]
    MissingDerivative,

    #[error(
        "quadrature did not converge after {levels} refinements: last estimate {last:e}, \
         previous {previous:e}, change {change:e} > tolerance {tol:e}"
    )]
    QuadratureNotConverged {
        levels: usize,
        last: f64,
        previous: f64,
        change: f64,
        tol: f64,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("expected {expected} roots in (0,1), found {found}")]
    RootCount { expected: usize, found: usize },

    #[error("sample table is missing required abscissas: {}", fmt_list(.missing))]
    SampleMismatch { missing: Vec<f64> },

    #[error("sample table: {0}")]
    SampleFormat(String),

    #[error(transparent)]
    Parse(#[from] crate::expr::ParseError),

    #[error("expansion file: {0}")]
    ExpansionFile(String),
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| crate::io::format_g17(*x))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
