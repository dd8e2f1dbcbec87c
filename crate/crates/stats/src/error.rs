use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("no participants left after exclusion")]
    EmptyAfterExclusion,
    #[error("participant {participant} ranks more than one design first in block {block}")]
    DuplicateRankFirst { participant: String, block: String },
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("participant {participant} has no value for {condition}")]
    UnpairedParticipant { participant: String, condition: String },
    #[error("expected 5 items, got {0}")]
    BadItemCount(usize),
    #[error("item value {0} outside 1..=7")]
    OutOfRange(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = StatsError> = std::result::Result<T, E>;
