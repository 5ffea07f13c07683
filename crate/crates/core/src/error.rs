use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra descriptor: {0}")]
    InvalidAlgebra(String),

    #[error("element does not match its descriptor: {0}")]
    Shape(String),

    #[error("operands belong to different algebras")]
    DescriptorMismatch,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("elements do not operator commute, so they share no Jordan frame")]
    NonCommuting,

    #[error("element is not idempotent (residual {residual:e})")]
    NotIdempotent { residual: f64 },

    #[error("not a primitive idempotent satisfying x∘c = σc (residual {residual:e})")]
    NotEigenIdempotent { residual: f64 },

    #[error("invalid Jordan frame: {0}")]
    InvalidFrame(String),

    #[error("point is outside the domain of {0}")]
    DomainViolation(String),

    #[error("subdifferential is empty")]
    EmptySubdifferential,

    #[error("vector is not a member of the requested subdifferential (distance {distance:e})")]
    NotASubgradient { distance: f64 },

    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("only {accepted} samples accepted, at least {required} required")]
    InsufficientSamples { accepted: usize, required: usize },

    #[error("too many points: {count} exceeds the cap of {cap}")]
    SizeCapExceeded { count: usize, cap: usize },

    #[error("cannot parse function id: {0}")]
    ParseFunctionId(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Numerical failures, as opposed to malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}
