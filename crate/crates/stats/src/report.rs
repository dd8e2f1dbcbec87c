//! JSON reports and plot-ready interval CSVs.

use std::io::Write;

use bwtex_core::ChartKind;
use bwtex_study::records::{RatingRecord, TrialRecord};
use serde::{Deserialize, Serialize};

use crate::bootstrap::{bootstrap_ci, pairwise_diffs_bonferroni, CIResult, ComparisonResult, FAMILY_ALPHA};
use crate::error::{Result, StatsError};
use crate::ratings::{design_summaries, DesignSummary};
use crate::summary::{summarize_trials, ExclusionPolicy, TrialSummary};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub iterations: usize,
    pub confidence: f64,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { iterations: crate::bootstrap::DEFAULT_ITERATIONS, confidence: crate::bootstrap::DEFAULT_CONFIDENCE, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub measure: String,
    pub group: String,
    pub ci: CIResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub summary: TrialSummary,
    pub intervals: Vec<Interval>,
    pub comparisons: Vec<(String, ComparisonResult)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatingReport {
    pub designs: Vec<DesignSummary>,
}

fn paired_only(
    groups: std::collections::BTreeMap<String, std::collections::BTreeMap<String, f64>>,
) -> std::collections::BTreeMap<String, std::collections::BTreeMap<String, f64>> {
    // participants lacking a value in some condition cannot be paired
    let complete: Vec<String> = groups
        .values()
        .flat_map(|g| g.keys())
        .filter(|p| groups.values().all(|g| g.contains_key(*p)))
        .cloned()
        .collect();
    groups
        .into_iter()
        .map(|(c, g)| (c, g.into_iter().filter(|(p, _)| complete.contains(p)).collect()))
        .collect()
}

pub fn analyze_trials(records: &[TrialRecord], policy: &ExclusionPolicy, opts: &AnalysisOptions) -> Result<TrialReport> {
    let summary = summarize_trials(records, policy)?;
    let mut intervals = Vec::new();
    let mut comparisons = Vec::new();
    for chart in [ChartKind::Bar, ChartKind::Pie, ChartKind::Map] {
        for (measure, groups) in [("accuracy", summary.accuracy_groups(chart)), ("rt_ms", summary.rt_groups(chart))] {
            if groups.is_empty() {
                continue;
            }
            for (cond, values) in &groups {
                let v: Vec<f64> = values.values().copied().collect();
                match bootstrap_ci(&v, opts.iterations, opts.confidence, opts.seed) {
                    Ok(ci) => intervals.push(Interval { measure: measure.into(), group: cond.clone(), ci }),
                    Err(StatsError::TooFewSamples(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            let paired = paired_only(groups);
            if paired.len() >= 2 && paired.values().all(|g| g.len() >= 2) {
                for c in pairwise_diffs_bonferroni(&paired, FAMILY_ALPHA, opts.iterations, opts.seed)? {
                    comparisons.push((measure.to_string(), c));
                }
            }
        }
    }
    Ok(TrialReport { summary, intervals, comparisons })
}

pub fn analyze_ratings(ratings: &[RatingRecord], opts: &AnalysisOptions) -> Result<RatingReport> {
    Ok(RatingReport { designs: design_summaries(ratings, opts.iterations, opts.confidence, opts.seed)? })
}

impl TrialReport {
    /// One row per interval: `measure,group,mean,lower,upper,confidence`.
    pub fn write_intervals_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["measure", "group", "mean", "lower", "upper", "confidence"])?;
        for i in &self.intervals {
            write_ci(&mut w, &i.measure, &i.group, &i.ci)?;
        }
        for (measure, c) in &self.comparisons {
            write_ci(&mut w, &format!("{measure}_diff"), &format!("{} - {}", c.pair.0, c.pair.1), &c.ci)?;
        }
        w.flush()?;
        Ok(())
    }
}

impl RatingReport {
    pub fn write_intervals_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["measure", "group", "mean", "lower", "upper", "confidence"])?;
        for d in &self.designs {
            if let Some(ci) = &d.beauvis {
                write_ci(&mut w, "beauvis", &d.design_id, ci)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn write_ci<W: Write>(w: &mut csv::Writer<W>, measure: &str, group: &str, ci: &CIResult) -> csv::Result<()> {
    w.write_record([
        measure.to_string(),
        group.to_string(),
        ci.mean.to_string(),
        ci.lower.to_string(),
        ci.upper.to_string(),
        ci.confidence.to_string(),
    ])
}
