//! Row-wise and per-participant checks for trial and rating logs.
//! Problems come back as data; nothing here fails.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::datasets::DATASET_COUNT;
use crate::records::{Answer, RatingRecord, TrialRecord};
use crate::runner::{OVERRUN_GRACE_MS, TIMEOUT_MS};
use crate::schedule::TRIAL_COUNT;

pub const DESIGNS_PER_BLOCK: usize = 4;
pub const RATING_BLOCKS: usize = 2;
pub const LIKERT: std::ops::RangeInclusive<i64> = 1..=7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    TimeoutWithAnswer,
    MissingAnswer,
    CorrectWithoutAnswer,
    ResponseTooLate,
    SameTargets,
    UnknownDataset,
    Incomplete,
    MixedCharts,
    ItemOutOfRange,
    DuplicateDesign,
    BlockSize,
    RankFirstCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Zero-based data row, for row-level findings.
    pub row: Option<usize>,
    pub participant_id: String,
    pub rule: Rule,
    pub severity: Severity,
    pub message: String,
}

fn row_violation(row: usize, pid: &str, rule: Rule, message: String) -> Violation {
    Violation { row: Some(row), participant_id: pid.to_string(), rule, severity: Severity::Error, message }
}

pub fn validate_trial_log(rows: &[TrialRecord]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let pid = r.participant_id.as_str();
        if r.timed_out && r.answer != Answer::None {
            out.push(row_violation(i, pid, Rule::TimeoutWithAnswer, format!("timed out but answered {:?}", r.answer)));
        }
        if !r.timed_out && r.answer == Answer::None {
            out.push(row_violation(i, pid, Rule::MissingAnswer, "no answer and no timeout".into()));
        }
        if r.correct && (r.timed_out || r.answer == Answer::None) {
            out.push(row_violation(i, pid, Rule::CorrectWithoutAnswer, "marked correct without an answer".into()));
        }
        if !r.timed_out && r.response_ms > TIMEOUT_MS + OVERRUN_GRACE_MS {
            out.push(row_violation(
                i,
                pid,
                Rule::ResponseTooLate,
                format!("answer at {} ms is past the {} ms limit", r.response_ms, TIMEOUT_MS + OVERRUN_GRACE_MS),
            ));
        }
        if r.left == r.right {
            out.push(row_violation(i, pid, Rule::SameTargets, format!("left and right are both `{}`", r.left)));
        }
        if !(1..=DATASET_COUNT as u32).contains(&r.dataset_id) {
            out.push(row_violation(i, pid, Rule::UnknownDataset, format!("dataset {} out of range", r.dataset_id)));
        }
    }

    let mut per_participant: BTreeMap<&str, Vec<&TrialRecord>> = BTreeMap::new();
    for r in rows {
        per_participant.entry(&r.participant_id).or_default().push(r);
    }
    for (pid, trials) in per_participant {
        let main = trials.iter().filter(|t| !t.training).count();
        if main != TRIAL_COUNT {
            out.push(Violation {
                row: None,
                participant_id: pid.to_string(),
                rule: Rule::Incomplete,
                severity: Severity::Warning,
                message: format!("{main} trials instead of {TRIAL_COUNT}; participant retained"),
            });
        }
        let charts: BTreeSet<_> = trials.iter().map(|t| t.chart).collect();
        if charts.len() > 1 {
            out.push(Violation {
                row: None,
                participant_id: pid.to_string(),
                rule: Rule::MixedCharts,
                severity: Severity::Error,
                message: format!("trials span {} chart kinds", charts.len()),
            });
        }
    }
    out
}

/// Rating block of a design: the first character of its id (`B...` for
/// bar designs, `P...` for pie designs).
pub fn rating_block(design_id: &str) -> &str {
    design_id.get(..1).unwrap_or("")
}

pub fn validate_rating_log(rows: &[RatingRecord]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        for (k, v) in r.items().iter().enumerate() {
            if !LIKERT.contains(v) {
                out.push(row_violation(i, &r.participant_id, Rule::ItemOutOfRange, format!("b{} = {v}", k + 1)));
            }
        }
        if !LIKERT.contains(&r.vibratory) {
            out.push(row_violation(i, &r.participant_id, Rule::ItemOutOfRange, format!("vibratory = {}", r.vibratory)));
        }
    }

    let mut blocks: BTreeMap<&str, BTreeMap<&str, Vec<&RatingRecord>>> = BTreeMap::new();
    for r in rows {
        blocks.entry(&r.participant_id).or_default().entry(rating_block(&r.design_id)).or_default().push(r);
    }
    for (pid, by_block) in blocks {
        let err = |rule, message| Violation {
            row: None,
            participant_id: pid.to_string(),
            rule,
            severity: Severity::Error,
            message,
        };
        if by_block.len() != RATING_BLOCKS {
            out.push(err(Rule::BlockSize, format!("{} blocks instead of {RATING_BLOCKS}", by_block.len())));
        }
        for (block, rs) in by_block {
            let designs: BTreeSet<_> = rs.iter().map(|r| r.design_id.as_str()).collect();
            if designs.len() != rs.len() {
                out.push(err(Rule::DuplicateDesign, format!("block {block} rates a design twice")));
            }
            if rs.len() != DESIGNS_PER_BLOCK {
                out.push(err(Rule::BlockSize, format!("block {block} has {} ratings, expected {DESIGNS_PER_BLOCK}", rs.len())));
            }
            let firsts = rs.iter().filter(|r| r.rank_first).count();
            if firsts != 1 {
                out.push(err(Rule::RankFirstCount, format!("block {block} has {firsts} first-ranked designs")));
            }
        }
    }
    out
}
