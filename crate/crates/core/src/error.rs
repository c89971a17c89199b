use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity {arity} out of range (max {max})")]
    Arity { arity: usize, max: usize },
    #[error("tuple {tuple:#x} does not fit arity {arity}")]
    TupleRange { tuple: u64, arity: usize },
    #[error("index {index} out of range for {len} positions")]
    Index { index: usize, len: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("empty constraint language")]
    EmptyLanguage,
    #[error("relation `{0}` is empty")]
    EmptyRelation(String),
    #[error("unknown relation or cost function `{0}`")]
    UnknownName(String),
    #[error("{vars} variables exceed the oracle cap of {cap}")]
    SizeCap { vars: usize, cap: usize },
    #[error("instance is unsatisfiable")]
    Unsatisfiable,
    #[error("language mismatch: {0}")]
    LanguageMismatch(String),
    #[error("variable {var} occurs in {count} constraints (bound {bound})")]
    DegreeBound { var: usize, count: usize, bound: usize },
    #[error("variable count {actual} violates declared bound {declared}")]
    VariableBound { actual: usize, declared: String },
    #[error("inconsistent lattice data: {0}")]
    Inconsistent(String),
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("not NP-hard: {0}")]
    NotHard(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { file: String::new(), line, message: message.into() }
    }

    pub fn in_file(self, file: &str) -> Self {
        match self {
            Error::Parse { line, message, .. } => Error::Parse { file: file.to_string(), line, message },
            other => other,
        }
    }
}
