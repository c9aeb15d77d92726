use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no usable edges")]
    EmptyInput,

    #[error("invalid stride: {0}")]
    InvalidStride(String),

    #[error("invalid split: {0}")]
    Split(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite value at epoch {epoch}, timestep {timestep}, row {row} (learning rate {learning_rate})")]
    NumericFailure {
        epoch: usize,
        timestep: usize,
        row: usize,
        learning_rate: f64,
    },

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("unknown node ids: {0:?}")]
    UnknownNodes(Vec<u64>),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
