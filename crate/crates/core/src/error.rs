use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid texture spec: {0}")]
    InvalidSpec(String),
    #[error("unknown glyph `{0}`")]
    UnknownGlyph(String),
    #[error("resolution must be at least 2 px/unit, got {0}")]
    InvalidResolution(u32),
    #[error("invalid chart spec: {0}")]
    InvalidChart(String),
    #[error("dataset does not match chart: {0}")]
    MismatchedDataset(String),
    #[error("pie chart values sum to zero")]
    EmptyPie,
    #[error("map chart is missing regions: {0}")]
    MissingRegions(String),
    #[error("no chart renderer registered for `{0}`")]
    UnknownChartKind(String),
    #[error("preset index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("asset error: {0}")]
    Asset(String),
    #[error("rasterization failed: {0}")]
    Render(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
