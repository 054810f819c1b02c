use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    #[error("image of generator `{0}` is not invertible")]
    NonInvertible(String),

    #[error("relator {index} (`{text}`) does not evaluate to the identity")]
    RelatorFailed { index: usize, text: String },

    #[error("cochain is not a cocycle: coboundary is nonzero at {tuple:?}")]
    NotCocycle { tuple: Vec<usize> },

    #[error("span is not stable: generator `{generator}` moves basis vector {vector} out of it")]
    NotStable { generator: String, vector: usize },

    #[error("pairing is not bilinear: {0}")]
    NotBilinear(String),

    #[error("non-integral decomposition: {0}")]
    NonIntegral(String),

    #[error("size cap exceeded: {0}")]
    TooLarge(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("inconsistent derivation: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
