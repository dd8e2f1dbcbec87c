//! Analysis of study logs: BeauVis scores, percentile bootstrap intervals,
//! Bonferroni-corrected paired comparisons, accuracy and response-time
//! summaries under an exclusion policy, and rank-first tallies.

pub mod beauvis;
pub mod bootstrap;
pub mod error;
pub mod ratings;
pub mod report;
pub mod summary;

pub use beauvis::beauvis_score;
pub use bootstrap::{bootstrap_ci, pairwise_diffs_bonferroni, CIResult, ComparisonResult};
pub use error::{Result, StatsError};
pub use ratings::rank_first_counts;
pub use summary::{summarize_trials, ExclusionPolicy, TrialSummary};
