use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    /// A parameter violated its invariant. `field` is the dotted config key.
    #[error("invalid value for `{field}`: {reason}")]
    InvalidParam { field: &'static str, reason: String },

    #[error("exogenous TP sequence exhausted: requested period {requested}, sequence has {available} values")]
    SequenceExhausted { requested: usize, available: usize },

    #[error("TP input line {line}: {reason}")]
    InvalidTpLine { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
