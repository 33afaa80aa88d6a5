use thiserror::Error;

/// Errors raised by mesh construction, the linear algebra, the interpolants
/// and the experiment harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need at least {needed} nodes, got {got}")]
    TooFewNodes { needed: usize, got: usize },

    #[error("nodes are not strictly monotone at width {index} (h = {width})")]
    NonMonotone { index: usize, width: f64 },

    #[error("degenerate interval [{a}, {b}]")]
    DegenerateInterval { a: f64, b: f64 },

    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("zero pivot at row {row}")]
    SingularPivot { row: usize },

    #[error("off-diagonal entry at row {row} is zero; matrix is reducible")]
    Reducible { row: usize },

    #[error("zero width")]
    ZeroWidth,

    #[error("t = {t} lies outside [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("no {side} piece at node {index}")]
    SideUnavailable { side: &'static str, index: usize },

    #[error("edge scheme requires a uniform mesh (relative width spread {spread:e})")]
    NonUniformUnsupported { spread: f64 },

    #[error("scheme {scheme} is not valid here: {reason}")]
    InvalidScheme {
        scheme: &'static str,
        reason: &'static str,
    },

    #[error("need at least {needed} usable step sizes, got {got}")]
    InsufficientSweep { needed: usize, got: usize },

    #[error("unknown function {0:?}")]
    UnknownFunction(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by unreadable or malformed input rather than by
    /// a violated numerical precondition.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Parse { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
