use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("order cap exceeded (cap {cap})")]
    OrderCapExceeded { cap: usize },

    #[error("search budget exceeded after {nodes} branch nodes")]
    SearchBudgetExceeded { nodes: u64 },

    #[error("enumeration limit exceeded (limit {limit})")]
    EnumerationLimitExceeded { limit: usize },

    #[error("group not transitive")]
    NotTransitive,

    #[error("partition is not invariant under the group")]
    NonInvariantPartition,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("action not faithful")]
    ActionNotFaithful,

    #[error("kernel trivial — group intransitive")]
    KernelTrivial,

    #[error("seed code not multiplier-invariant")]
    SeedNotMultiplierInvariant,

    #[error("invalid code spec: {0}")]
    InvalidCodeSpec(String),

    #[error("degree not twice an odd prime")]
    DegreeNotTwiceOddPrime,

    #[error("unexpected simply primitive group of degree {degree} and order {order}")]
    UnexpectedSimplyPrimitive { degree: usize, order: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors raised when a cap or search budget runs out.
    pub fn is_resource_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::SearchBudgetExceeded { .. }
                | Error::EnumerationLimitExceeded { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
