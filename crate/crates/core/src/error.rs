use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground sets differ: {left} vs {right} elements")]
    GroundMismatch { left: usize, right: usize },

    #[error("ground set must be nonempty")]
    EmptyGround,

    #[error("ground set of {n} elements exceeds the supported maximum of {max}")]
    GroundTooLarge { n: usize, max: usize },

    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("blocks do not form a partition: {0}")]
    NotAPartition(String),

    #[error("{0} is not a block of the partition")]
    NotABlock(String),

    #[error("enumeration limit exceeded: ground size {n} > limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no weak-submodularity witness: {0}")]
    NoWitness(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
