use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector has {got} coordinates, ambient expects {expected}")]
    Arity { expected: usize, got: usize },

    #[error("invalid ambient algebra: {0}")]
    InvalidAmbient(String),

    #[error("generator {0} is not an element of the ambient semigroup")]
    NotInSemigroup(String),

    #[error("ideal is not primary to the maximal ideal (co-staircase exceeds grade {cap})")]
    NotMPrimary { cap: i64 },

    #[error("ideals live in different ambient algebras")]
    AmbientMismatch,

    #[error("ideal is not contained in the larger ideal")]
    NotContained,

    #[error("Hilbert table of length {len} does not stabilize; enlarge N")]
    WindowTooShort { len: usize },

    #[error("fitted coefficient e_{index} = {value} is not an integer")]
    NonIntegerCoefficient { index: usize, value: String },

    #[error("no n <= {cap} satisfies I^(n+1) = Q I^n")]
    NotAReduction { cap: usize },

    #[error("reduction is not contained in the ideal")]
    QNotContained,

    #[error("reduction is not parameter-shaped: {0}")]
    QNotParameterShaped(String),

    #[error("integral closure is only implemented for polynomial ambients")]
    SemigroupAmbientUnsupported,

    #[error("{theorem}: hypothesis failed: {hypothesis}")]
    HypothesisFailed { theorem: String, hypothesis: String },

    #[error("{theorem}: fitted e0(M) = {fitted} but i0 * e0(R/p) = {expected}")]
    MultiplicityMismatch {
        theorem: String,
        fitted: i64,
        expected: i64,
    },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("golden mismatch in {quantity}: expected {expected}, got {actual}")]
    GoldenMismatch {
        quantity: String,
        expected: String,
        actual: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn hypothesis(theorem: &str, hypothesis: impl Into<String>) -> Self {
        Error::HypothesisFailed {
            theorem: theorem.to_string(),
            hypothesis: hypothesis.into(),
        }
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::InternalInconsistency(msg.into())
    }
}
