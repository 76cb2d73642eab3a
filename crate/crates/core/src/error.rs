use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("letter {letter} is not a generator of type {group} with n = {n}")]
    InvalidLetter {
        letter: String,
        group: String,
        n: usize,
    },
    #[error("{perm} is not an element of type {group}")]
    WrongGroup { perm: String, group: String },
    #[error("insufficient truncation: operator needs input level {needed}, got {given}")]
    InsufficientTruncation { needed: usize, given: usize },
    #[error("polynomial uses x_{index} but is declared at level {level}")]
    LevelOverflow { index: usize, level: usize },
    #[error("numerator is not divisible by the operator denominator")]
    NotDivisible,
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("type D bases need n >= 2")]
    EmptyBase,
    #[error("move is not applicable: {0}")]
    InapplicableMove(String),
    #[error("{0} is not Grassmannian")]
    NotGrassmannian(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("dream does not match base: {0}")]
    DreamMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
