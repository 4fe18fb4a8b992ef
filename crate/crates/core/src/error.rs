use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no elimination variable")]
    NoEliminationVariable,
    #[error("no roots to isolate")]
    NoRoots,
    #[error("empty refinement")]
    EmptyRefinement,
    #[error("ideal not zero-dimensional")]
    NotZeroDimensional,
    #[error("system not stabilizable")]
    NotStabilizable,
    #[error("not stabilizable or cap exceeded")]
    SpectrumCap,
    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),
    #[error("separating form search exhausted after {0} trials")]
    SeparatingFormExhausted(usize),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared variable `{name}` at line {line}, column {column}")]
    UndeclaredVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("empty system")]
    EmptySystem,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("membership check failed: {0}")]
    Membership(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
