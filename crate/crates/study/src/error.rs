use thiserror::Error;

#[derive(Debug, Error)]
pub enum StudyError {
    #[error(transparent)]
    Core(#[from] bwtex_core::CoreError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("render failed for {image}: {source}")]
    RenderFailure { image: String, source: bwtex_core::CoreError },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = StudyError> = std::result::Result<T, E>;
