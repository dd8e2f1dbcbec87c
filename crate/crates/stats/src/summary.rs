//! Accuracy and response-time summaries per condition under an exclusion
//! policy.
//!
//! Overall accuracy is correct answers over all main (non-training) trials
//! of a participant; timeouts count as incorrect. Condition means are
//! means of per-participant means.

use std::collections::{BTreeMap, BTreeSet};

use bwtex_core::ChartKind;
use bwtex_study::records::TrialRecord;
use bwtex_study::runner::TIMEOUT_MS;
use bwtex_study::schedule::Fill;
use serde::{Deserialize, Serialize};

use crate::error::{Result, StatsError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExclusionPolicy {
    /// Participants below this overall accuracy are dropped.
    pub min_accuracy: f64,
    /// Response times only from correct trials.
    pub correct_only_rt: bool,
    /// Timed-out trials never enter response times.
    pub drop_timeouts: bool,
    /// Answers this far past the timeout still count.
    pub overrun_grace_ms: u64,
    /// Overruns enter response-time means.
    pub overrun_in_rt: bool,
}

impl ExclusionPolicy {
    pub fn refined() -> Self {
        Self { min_accuracy: 0.9, correct_only_rt: true, drop_timeouts: true, overrun_grace_ms: 50, overrun_in_rt: false }
    }

    /// Keeps every participant and every answered trial.
    pub fn original() -> Self {
        Self { min_accuracy: 0.0, correct_only_rt: false, ..Self::refined() }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "refined" => Some(Self::refined()),
            "original" => Some(Self::original()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.min_accuracy) {
            return Err(StatsError::InvalidParameter(format!("min_accuracy {} outside [0, 1]", self.min_accuracy)));
        }
        if self.overrun_grace_ms > TIMEOUT_MS {
            return Err(StatsError::InvalidParameter("overrun grace longer than the timeout".into()));
        }
        Ok(())
    }

    pub fn is_overrun(&self, r: &TrialRecord) -> bool {
        !r.timed_out && r.response_ms > TIMEOUT_MS && r.response_ms <= TIMEOUT_MS + self.overrun_grace_ms
    }

    /// Correct answer given in time (grace included).
    pub fn counts_correct(&self, r: &TrialRecord) -> bool {
        r.correct && !r.timed_out && r.response_ms <= TIMEOUT_MS + self.overrun_grace_ms
    }

    pub fn enters_rt(&self, r: &TrialRecord) -> bool {
        if r.timed_out && self.drop_timeouts {
            return false;
        }
        if self.correct_only_rt && !self.counts_correct(r) {
            return false;
        }
        if r.response_ms > TIMEOUT_MS && !r.timed_out {
            return self.overrun_in_rt && self.is_overrun(r);
        }
        true
    }
}

impl Default for ExclusionPolicy {
    fn default() -> Self {
        Self::refined()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub chart: ChartKind,
    pub fill: Fill,
}

impl Condition {
    pub fn label(&self) -> String {
        format!("{}/{}", self.chart.name(), self.fill.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub condition: Condition,
    pub participants: usize,
    pub accuracy_mean: f64,
    /// `None` when no trial qualifies for response times.
    pub rt_mean_ms: Option<f64>,
    pub rt_trials: usize,
    pub timeouts: usize,
    pub overruns: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticipantSummary {
    pub accuracy: f64,
    pub trials: usize,
    pub accuracy_by_condition: BTreeMap<String, f64>,
    pub rt_by_condition: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub policy: ExclusionPolicy,
    pub participants_total: usize,
    pub retained: Vec<String>,
    /// Dropped participants with their overall accuracy.
    pub excluded: Vec<(String, f64)>,
    pub conditions: Vec<ConditionSummary>,
    pub participants: BTreeMap<String, ParticipantSummary>,
}

impl TrialSummary {
    pub fn condition(&self, chart: ChartKind, fill: Fill) -> Option<&ConditionSummary> {
        self.conditions.iter().find(|c| c.condition == Condition { chart, fill })
    }

    /// Per-participant accuracy for each condition of one chart kind.
    pub fn accuracy_groups(&self, chart: ChartKind) -> BTreeMap<String, BTreeMap<String, f64>> {
        self.groups(chart, |p| &p.accuracy_by_condition)
    }

    pub fn rt_groups(&self, chart: ChartKind) -> BTreeMap<String, BTreeMap<String, f64>> {
        self.groups(chart, |p| &p.rt_by_condition)
    }

    fn groups(
        &self,
        chart: ChartKind,
        pick: impl Fn(&ParticipantSummary) -> &BTreeMap<String, f64>,
    ) -> BTreeMap<String, BTreeMap<String, f64>> {
        let mut out: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
        for (pid, p) in &self.participants {
            for (cond, v) in pick(p) {
                if cond.starts_with(&format!("{}/", chart.name())) {
                    out.entry(cond.clone()).or_default().insert(pid.clone(), *v);
                }
            }
        }
        out
    }
}

fn mean(xs: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = xs.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

pub fn summarize_trials(records: &[TrialRecord], policy: &ExclusionPolicy) -> Result<TrialSummary> {
    policy.validate()?;
    let mut by_participant: BTreeMap<&str, Vec<&TrialRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| !r.training) {
        by_participant.entry(&r.participant_id).or_default().push(r);
    }

    let mut retained = Vec::new();
    let mut excluded = Vec::new();
    let mut participants = BTreeMap::new();
    for (pid, trials) in &by_participant {
        let correct = trials.iter().filter(|r| policy.counts_correct(r)).count();
        let accuracy = correct as f64 / trials.len() as f64;
        if accuracy < policy.min_accuracy {
            excluded.push((pid.to_string(), accuracy));
            continue;
        }
        retained.push(pid.to_string());
        let conditions: BTreeSet<Condition> = trials.iter().map(|r| Condition { chart: r.chart, fill: r.fill }).collect();
        let mut accuracy_by_condition = BTreeMap::new();
        let mut rt_by_condition = BTreeMap::new();
        for c in conditions {
            let in_c: Vec<&&TrialRecord> = trials.iter().filter(|r| r.chart == c.chart && r.fill == c.fill).collect();
            let acc = in_c.iter().filter(|r| policy.counts_correct(r)).count() as f64 / in_c.len() as f64;
            accuracy_by_condition.insert(c.label(), acc);
            if let Some(rt) = mean(in_c.iter().filter(|r| policy.enters_rt(r)).map(|r| r.response_ms as f64)) {
                rt_by_condition.insert(c.label(), rt);
            }
        }
        participants.insert(
            pid.to_string(),
            ParticipantSummary { accuracy, trials: trials.len(), accuracy_by_condition, rt_by_condition },
        );
    }
    if retained.is_empty() {
        return Err(StatsError::EmptyAfterExclusion);
    }

    let kept: BTreeSet<&str> = retained.iter().map(String::as_str).collect();
    let all_conditions: BTreeSet<Condition> = records
        .iter()
        .filter(|r| !r.training && kept.contains(r.participant_id.as_str()))
        .map(|r| Condition { chart: r.chart, fill: r.fill })
        .collect();
    let conditions = all_conditions
        .into_iter()
        .map(|c| {
            let label = c.label();
            let trials: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| !r.training && kept.contains(r.participant_id.as_str()) && r.chart == c.chart && r.fill == c.fill)
                .collect();
            let accs: Vec<f64> = participants.values().filter_map(|p| p.accuracy_by_condition.get(&label).copied()).collect();
            ConditionSummary {
                condition: c,
                participants: accs.len(),
                accuracy_mean: mean(accs).unwrap_or(0.0),
                rt_mean_ms: mean(participants.values().filter_map(|p| p.rt_by_condition.get(&label).copied())),
                rt_trials: trials.iter().filter(|r| policy.enters_rt(r)).count(),
                timeouts: trials.iter().filter(|r| r.timed_out).count(),
                overruns: trials.iter().filter(|r| policy.is_overrun(r)).count(),
            }
        })
        .collect();

    Ok(TrialSummary {
        policy: *policy,
        participants_total: by_participant.len(),
        retained,
        excluded,
        conditions,
        participants,
    })
}
