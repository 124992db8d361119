use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NotPositive(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is outside the desk-scale range handled by trial division")]
    TooLarge(String),
    #[error("enclosure endpoints out of order: lo = {lo}, hi = {hi}")]
    InvertedEnclosure { lo: String, hi: String },
    #[error("base of a real power must be positive, lower end is {0}")]
    NonPositiveBase(String),
    #[error("logarithm of a non-positive value, lower end is {0}")]
    NonPositiveLogarithm(String),
    #[error("division by an enclosure that contains zero")]
    DivisionByZero,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("group order exceeds the configured cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("overgroup lattice exceeds the configured cap of {cap} nodes")]
    NodeCapExceeded { cap: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group order {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
