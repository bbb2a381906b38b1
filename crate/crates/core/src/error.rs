use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("size {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("invalid address: prefix `{prefix}` lands on a leaf")]
    InvalidAddress { prefix: String },

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (must be below {bound})")]
    OutOfRange { index: usize, bound: usize },

    #[error("index sequence is not strictly increasing at position {position}")]
    NotIncreasing { position: usize },

    #[error("negative weight {weight}")]
    NegativeWeight { weight: String },

    #[error("weights sum to {sum}, expected 1")]
    NotNormalized { sum: String },

    #[error("element outside the carrier: {element}")]
    CarrierMismatch { element: String },

    #[error("function undefined at {element}")]
    Undefined { element: String },

    #[error("addresses `{0}` and `{1}` are compatible (one is a prefix of the other)")]
    CompatibleAddresses(String, String),

    #[error("value {value} outside [0, 1]")]
    ValueOutOfRange { value: String },

    #[error("coloring is not 0/1-valued at {tree}")]
    NotBinary { tree: String },

    #[error("reachable sets did not stabilize within size cap {cap}")]
    NoStabilization { cap: usize },

    #[error("element {element} is not the value of any tree of size {size}")]
    Unreachable { element: usize, size: usize },

    #[error("line {line}: {message}")]
    Data { line: usize, message: String },

    #[error("{0}")]
    Invalid(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
