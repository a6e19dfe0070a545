use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A recurrence denominator vanished while evaluating a polynomial.
    #[error("degenerate polynomial parameters: {0}")]
    DegenerateParameters(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("parameter `{name}` must be positive and finite, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("x = {x} lies outside the domain {domain}")]
    DomainViolation { x: f64, domain: String },

    #[error("level {level} is not bound on the {partner} branch (bound levels: {bound})")]
    LevelOutOfRange {
        level: usize,
        partner: &'static str,
        bound: String,
    },

    #[error("eigenfunction is not square integrable: {0}")]
    NotSquareIntegrable(String),

    #[error("window [{lo}, {hi}] leaves tail density {ratio:e} relative to the peak")]
    TailMassTooLarge { lo: f64, hi: f64, ratio: f64 },

    #[error("envelope undefined for {0}")]
    EnvelopeUndefined(&'static str),

    #[error(
        "window too small: V = {edge_potential} at x = {edge} is below the target energy {energy}"
    )]
    WindowTooSmall {
        edge: f64,
        edge_potential: f64,
        energy: f64,
    },

    #[error("eigensolver failed to converge for eigenvalue {index} after {iterations} iterations (residual {residual:e})")]
    ConvergenceFailure {
        index: usize,
        iterations: usize,
        residual: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
