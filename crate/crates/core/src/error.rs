use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` must have positive arity")]
    NonPositiveArity(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable x{index} is out of range (at most x{bound} allowed)")]
    VariableOutOfRange { index: u32, bound: usize },
    #[error("no image given for symbol `{0}`")]
    MissingImage(String),
    #[error("image for symbol `{0}` given twice")]
    DuplicateImage(String),
    #[error("operands are over different signatures")]
    SignatureMismatch,
    #[error("hypersubstitution is not bijective")]
    NotBijective,
    #[error("expected a single binary operation symbol")]
    NotSemigroupSignature,
    #[error("{what} would produce {needed} items, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("empty word")]
    EmptyWord,
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}
