use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("relation contains a directed cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("realizer orders do not range over the same element set")]
    MismatchedElementSets,
    #[error("order dimension exceeds two; a confluent diagram exists if and only if dim(P) <= 2")]
    DimensionExceedsTwo,
    #[error("instance of size {size} exceeds the oracle limit of {limit}")]
    TooLargeForOracle { size: usize, limit: usize },
    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(i64, i64),
    #[error("syntax error at offset {position}: expected {}", expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
    },
    #[error("duplicate leaf `{0}`")]
    DuplicateLeaf(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
