//! Headless reference trial runner and the training gate.

use bwtex_core::ChartKind;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::datasets::{generate_datasets, StudyDataset};
use crate::records::{Answer, TrialRecord};
use crate::schedule::{schedule_for, Fill, Question, Trial};

pub const TIMEOUT_MS: u64 = 5000;
pub const OVERRUN_GRACE_MS: u64 = 50;
pub const TRAINING_STREAK: usize = 3;

/// A participant's response: the side chosen and milliseconds since the
/// chart was revealed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Response {
    pub answer: Answer,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRunner {
    pub timeout_ms: u64,
    pub grace_ms: u64,
}

impl Default for TrialRunner {
    fn default() -> Self {
        Self { timeout_ms: TIMEOUT_MS, grace_ms: OVERRUN_GRACE_MS }
    }
}

impl TrialRunner {
    /// Answers later than the timeout plus grace (or none at all) time
    /// out; answers inside the grace window are kept and show up as
    /// overruns (`response_ms` above the timeout).
    pub fn run(
        &self,
        participant_id: &str,
        trial: &Trial,
        dataset: &StudyDataset,
        response: Option<Response>,
        training: bool,
    ) -> TrialRecord {
        let (answer, response_ms, timed_out) = match response {
            Some(r) if r.answer != Answer::None && r.elapsed_ms <= self.timeout_ms + self.grace_ms => {
                (r.answer, r.elapsed_ms, false)
            }
            _ => (Answer::None, self.timeout_ms, true),
        };
        TrialRecord {
            participant_id: participant_id.to_string(),
            chart: trial.chart,
            fill: trial.fill,
            question: trial.question,
            dataset_id: trial.dataset_id,
            left: trial.left_target.clone(),
            right: trial.right_target.clone(),
            answer,
            correct: !timed_out && answer == trial.expected_answer(dataset),
            response_ms,
            timed_out,
            training,
        }
    }

    pub fn is_overrun(&self, record: &TrialRecord) -> bool {
        !record.timed_out && record.response_ms > self.timeout_ms
    }
}

/// Unlocks a block after three consecutive correct training trials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrainingGate {
    streak: usize,
    attempts: usize,
}

impl TrainingGate {
    pub fn record(&mut self, correct: bool) -> bool {
        self.attempts += 1;
        self.streak = if correct { self.streak + 1 } else { 0 };
        self.passed()
    }

    pub fn passed(&self) -> bool {
        self.streak >= TRAINING_STREAK
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }
}

/// Endless supply of training trials for one block, built by the same
/// rules as the main schedule from a separate dataset stream.
pub struct TrainingTrials {
    datasets: Vec<StudyDataset>,
    trials: Vec<Trial>,
    next: usize,
    rng: ChaCha8Rng,
}

impl TrainingTrials {
    pub fn new(seed: u64, chart: ChartKind, question: Question, fill: Fill) -> Self {
        let training_seed = seed ^ 0x7472_6169_6e69_6e67;
        let datasets = generate_datasets(training_seed);
        let trials = schedule_for(&datasets, training_seed, chart)
            .into_iter()
            .filter(|t| t.question == question && t.fill == fill)
            .collect();
        Self { datasets, trials, next: 0, rng: ChaCha8Rng::seed_from_u64(training_seed) }
    }

    pub fn next_trial(&mut self) -> (Trial, &StudyDataset) {
        if self.next == self.trials.len() {
            self.trials.shuffle(&mut self.rng);
            self.next = 0;
        }
        let t = self.trials[self.next].clone();
        self.next += 1;
        let d = self.datasets.iter().find(|d| d.id == t.dataset_id).expect("dataset of trial");
        (t, d)
    }
}

/// Runs a whole schedule for one simulated participant. `respond` sees
/// each trial with its dataset and returns the response, if any.
pub fn simulate_participant(
    participant_id: &str,
    seed: u64,
    chart: ChartKind,
    mut respond: impl FnMut(&Trial, &StudyDataset) -> Option<Response>,
) -> Vec<TrialRecord> {
    let datasets = generate_datasets(seed);
    let runner = TrialRunner::default();
    schedule_for(&datasets, seed, chart)
        .iter()
        .map(|t| {
            let d = datasets.iter().find(|d| d.id == t.dataset_id).expect("dataset of trial");
            runner.run(participant_id, t, d, respond(t, d), false)
        })
        .collect()
}

/// The side that is not `a`.
pub fn other_side(a: Answer) -> Answer {
    match a {
        Answer::Left => Answer::Right,
        Answer::Right => Answer::Left,
        Answer::None => Answer::None,
    }
}
