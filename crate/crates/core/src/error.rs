use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("expected an alphabet with {expected} symbols, found {found}")]
    AlphabetArity { expected: usize, found: usize },

    #[error("alphabet mismatch: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("unknown symbol `{symbol}` at position {position}")]
    UnknownSymbol { symbol: String, position: usize },

    #[error("the empty pattern has no occurrences")]
    EmptyPattern,

    #[error("segment end {end} is out of bounds for a word of length {len}")]
    OutOfBounds { end: u64, len: u64 },

    #[error("invalid segment [{start}, {end}]")]
    InvalidSegment { start: u64, end: u64 },

    #[error("budget exceeded: {what} needs {requested}, limit is {limit}")]
    Budget {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("insufficient data: need at least {needed} symbols, have {available}")]
    InsufficientData { needed: u64, available: u64 },

    #[error("repetition count {0} is outside {{9, 10}}")]
    InvalidTau(u64),

    #[error("period must be non-empty")]
    EmptyPeriod,

    #[error("symbol `{0}` is not prolongable: its image must start with it and have length >= 2")]
    NotProlongable(String),

    #[error("symbol `{0}` has an empty image")]
    EmptyImage(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
