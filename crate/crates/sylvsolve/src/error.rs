use std::fmt;

/// Errors produced by the matrix kernels and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes are incompatible for the requested operation.
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A constructor was handed data violating a type invariant.
    InvalidMatrix(String),
    /// A square matrix was required.
    NonSquare { rows: usize, cols: usize },
    /// A symmetric matrix was required (checked entrywise).
    NotSymmetric { max_asymmetry: f64 },
    /// A Kronecker-space operation exceeded its oracle-scale budget.
    OracleBudget { entries: usize, budget: usize },
    /// The splitting shift must be positive.
    NonPositiveShift(f64),
    /// The Hermitian part of the coefficient pair is not positive definite.
    IndefiniteHermitianPart { lambda_min: f64 },
    /// A direct factorization met a pivot below the singularity threshold,
    /// signalling a violated uniqueness assumption.
    SingularSystem { pivot: f64, threshold: f64 },
    /// An iterative method hit a zero or invalid denominator.
    Breakdown {
        method: &'static str,
        detail: String,
    },
    /// The current residual is nonzero but no progress is possible.
    Stagnation { method: &'static str, residual: f64 },
    /// An eigenvalue estimator failed to converge after all restarts.
    EigsUnconverged { steps: usize, bound: f64 },
    /// A file could not be parsed; `line` is 1-based.
    Parse { line: usize, msg: String },
    /// The input uses a feature this crate does not support.
    Unsupported(String),
    /// Invalid argument combination at an API boundary.
    InvalidInput(String),
    /// Wrapped I/O failure.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { op, left, right } => write!(
                f,
                "{op}: incompatible shapes {}x{} and {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::InvalidMatrix(msg) => write!(f, "invalid matrix: {msg}"),
            Error::NonSquare { rows, cols } => {
                write!(f, "square matrix required, got {rows}x{cols}")
            }
            Error::NotSymmetric { max_asymmetry } => {
                write!(f, "symmetric matrix required (max |A - A^T| entry = {max_asymmetry:e})")
            }
            Error::OracleBudget { entries, budget } => write!(
                f,
                "oracle-scale only: {entries} entries exceeds budget of {budget}"
            ),
            Error::NonPositiveShift(a) => write!(f, "shift alpha must be positive, got {a}"),
            Error::IndefiniteHermitianPart { lambda_min } => write!(
                f,
                "Hermitian part is not positive definite (lambda_min = {lambda_min:e})"
            ),
            Error::SingularSystem { pivot, threshold } => write!(
                f,
                "system is numerically singular (pivot {pivot:e} below {threshold:e}); \
                 the uniqueness assumption may be violated"
            ),
            Error::Breakdown { method, detail } => write!(f, "{method} breakdown: {detail}"),
            Error::Stagnation { method, residual } => write!(
                f,
                "{method} stagnated with residual norm {residual:e}"
            ),
            Error::EigsUnconverged { steps, bound } => write!(
                f,
                "eigenvalue estimation unconverged after {steps} steps (residual bound {bound:e})"
            ),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
