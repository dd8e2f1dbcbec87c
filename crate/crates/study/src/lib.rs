//! Chart-reading study machinery: constrained random datasets, blocked
//! trial schedules, stimulus export, a reference trial runner and
//! validators for trial and rating logs.

pub mod datasets;
pub mod error;
pub mod records;
pub mod runner;
pub mod schedule;
pub mod stimuli;
pub mod validate;

pub use datasets::{generate_datasets, StudyDataset};
pub use error::{Result, StudyError};
pub use records::{Answer, RatingRecord, TrialRecord};
pub use runner::{TrainingGate, TrialRunner};
pub use schedule::{build_trial_schedule, Fill, Question, Trial};
pub use stimuli::{export_stimuli, validate_manifest, Manifest};
pub use validate::{validate_rating_log, validate_trial_log, Violation};
