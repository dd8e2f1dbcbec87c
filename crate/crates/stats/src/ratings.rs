//! Rank-first tallies and per-design rating summaries.

use std::collections::BTreeMap;

use bwtex_study::records::RatingRecord;
use bwtex_study::validate::rating_block;
use serde::{Deserialize, Serialize};

use crate::beauvis::beauvis_score;
use crate::bootstrap::{bootstrap_ci, CIResult};
use crate::error::{Result, StatsError};

/// How often each design was ranked first. Every rated design appears,
/// with 0 when never first.
pub fn rank_first_counts(ratings: &[RatingRecord]) -> Result<BTreeMap<String, usize>> {
    let mut seen: BTreeMap<(&str, &str), &str> = BTreeMap::new();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for r in ratings {
        let c = counts.entry(r.design_id.clone()).or_default();
        if !r.rank_first {
            continue;
        }
        let block = rating_block(&r.design_id);
        if seen.insert((&r.participant_id, block), &r.design_id).is_some() {
            return Err(StatsError::DuplicateRankFirst { participant: r.participant_id.clone(), block: block.to_string() });
        }
        *c += 1;
    }
    Ok(counts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSummary {
    pub design_id: String,
    pub raters: usize,
    /// Bootstrap interval of per-rater BeauVis scores; `None` with fewer
    /// than two raters.
    pub beauvis: Option<CIResult>,
    pub beauvis_mean: f64,
    pub vibratory_mean: f64,
    pub rank_first: usize,
}

pub fn design_summaries(ratings: &[RatingRecord], iterations: usize, confidence: f64, seed: u64) -> Result<Vec<DesignSummary>> {
    let counts = rank_first_counts(ratings)?;
    let mut by_design: BTreeMap<&str, Vec<&RatingRecord>> = BTreeMap::new();
    for r in ratings {
        by_design.entry(&r.design_id).or_default().push(r);
    }
    by_design
        .into_iter()
        .map(|(design, rs)| {
            let scores = rs.iter().map(|r| beauvis_score(&r.items())).collect::<Result<Vec<f64>>>()?;
            let beauvis = if scores.len() >= 2 { Some(bootstrap_ci(&scores, iterations, confidence, seed)?) } else { None };
            Ok(DesignSummary {
                design_id: design.to_string(),
                raters: rs.len(),
                beauvis,
                beauvis_mean: scores.iter().sum::<f64>() / scores.len() as f64,
                vibratory_mean: rs.iter().map(|r| r.vibratory as f64).sum::<f64>() / rs.len() as f64,
                rank_first: counts[design],
            })
        })
        .collect()
}
