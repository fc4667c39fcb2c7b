use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {entry} is outside the alphabet 1..={n}")]
    EntryOutOfRange { entry: usize, n: usize },

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid vacillating tableau: {0}")]
    InvalidVacillating(String),

    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),

    #[error("letter {0} is already in the tableau")]
    LetterPresent(usize),

    #[error("letter {0} is not in the tableau")]
    LetterAbsent(usize),

    #[error("shape of P {insertion:?} does not match the final shape of Q {recording:?}")]
    ShapeMismatch {
        insertion: Vec<usize>,
        recording: Vec<usize>,
    },

    #[error("{what} = {value} is out of range (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        expected: String,
    },

    #[error("partition {partition:?} is not a vertex at level {level}")]
    NotAtLevel { partition: Vec<usize>, level: String },

    #[error("guard `{guard}` exceeded: {requested} > {limit}")]
    GuardExceeded {
        guard: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("height tuple {0:?} is not n-restricted")]
    NotRestricted(Vec<usize>),

    #[error("invalid q-set partition: {0}")]
    InvalidQSetPartition(String),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("matrix is singular")]
    Singular,

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid pure word: {0}")]
    InvalidWord(String),

    #[error("action is not a permutation of the basis: {0}")]
    NotPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
