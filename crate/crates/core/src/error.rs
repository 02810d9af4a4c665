use thiserror::Error;

/// Errors raised by the geometric kernel and the solvers.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    /// Input objects are in a configuration the operation cannot handle
    /// (coincident points, point on its own line, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// A constraint's precondition does not hold.
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    /// The operation is one of the rejected combinations, or is not an
    /// elementary operation at all.
    #[error("invalid combination: {0}")]
    InvalidOperation(String),
    /// The instance has an infinite solution set that cannot be reported as
    /// a single parameterized family.
    #[error("ill-posed instance: {0}")]
    IllPosed(String),
    #[error("no envelope: {0}")]
    NoEnvelope(String),
    #[error("envelope verification failed at sample {sample} (params {params:?}): {reason} (error {error:e})")]
    VerificationFailed {
        sample: usize,
        params: Vec<f64>,
        reason: String,
        error: f64,
    },
    /// Every real number solves the polynomial (all coefficients vanish).
    #[error("all coefficients vanish: every real number is a root")]
    AllRealLine,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A scene or plane description is not well-formed.
    #[error("parse error at line {line}, column {column}, field `{field}`: {message}")]
    Parse {
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    /// A scene parses but refers to missing objects or breaks a constraint
    /// precondition.
    #[error("validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
    /// A solver produced output that violates a proven bound.
    #[error("solver invariant violated: {0}")]
    SolverInvariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
