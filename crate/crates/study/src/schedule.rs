//! Blocked trial schedules: two question blocks, each split into three
//! fill sub-blocks of ten trials (one per dataset).

use std::collections::BTreeMap;

use bwtex_core::{ChartKind, VEGETABLES};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::datasets::{generate_datasets, StudyDataset};
use crate::records::Answer;

pub const TRIAL_COUNT: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Question {
    More,
    Fewer,
}

impl Question {
    pub const ALL: [Question; 2] = [Question::More, Question::Fewer];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fill {
    Geometric,
    Iconic,
    Unicolor,
}

impl Fill {
    pub const ALL: [Fill; 3] = [Fill::Geometric, Fill::Iconic, Fill::Unicolor];

    pub fn name(self) -> &'static str {
        match self {
            Fill::Geometric => "geometric",
            Fill::Iconic => "iconic",
            Fill::Unicolor => "unicolor",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trial {
    pub index: usize,
    pub chart: ChartKind,
    pub question: Question,
    pub fill: Fill,
    pub dataset_id: u32,
    pub left_target: String,
    pub right_target: String,
    /// Category names in drawing order (left to right, or clockwise).
    pub category_order: Vec<String>,
}

impl Trial {
    pub fn position(&self, category: &str) -> Option<usize> {
        self.category_order.iter().position(|c| c == category)
    }

    /// The side a correct answer picks.
    pub fn expected_answer(&self, dataset: &StudyDataset) -> Answer {
        let (l, r) = (dataset.value(&self.left_target), dataset.value(&self.right_target));
        let left_bigger = l > r;
        match (self.question, left_bigger) {
            (Question::More, true) | (Question::Fewer, false) => Answer::Left,
            _ => Answer::Right,
        }
    }
}

fn chart_stream(chart: ChartKind) -> u64 {
    match chart {
        ChartKind::Bar => 1,
        ChartKind::Pie => 2,
        ChartKind::Map => 3,
    }
}

/// Schedule over explicit datasets. Each (fill, dataset) image gets one
/// shuffled category order, shared by both questions.
pub fn schedule_for(datasets: &[StudyDataset], seed: u64, chart: ChartKind) -> Vec<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chart_stream(chart));

    let names: Vec<String> = VEGETABLES.iter().map(|(v, _)| v.to_string()).collect();
    let mut orders = BTreeMap::new();
    for fill in Fill::ALL {
        for d in datasets {
            let mut order = names.clone();
            order.shuffle(&mut rng);
            orders.insert((fill, d.id), order);
        }
    }

    let mut questions = Question::ALL;
    questions.shuffle(&mut rng);
    let mut trials = Vec::with_capacity(TRIAL_COUNT);
    for question in questions {
        let mut fills = Fill::ALL;
        fills.shuffle(&mut rng);
        for fill in fills {
            let mut block: Vec<&StudyDataset> = datasets.iter().collect();
            block.shuffle(&mut rng);
            for d in block {
                let order = orders[&(fill, d.id)].clone();
                let (a, b) = &d.target_pair;
                let pos = |c: &str| order.iter().position(|o| o == c).expect("target in order");
                let (left, right) = if pos(a) < pos(b) { (a, b) } else { (b, a) };
                trials.push(Trial {
                    index: trials.len(),
                    chart,
                    question,
                    fill,
                    dataset_id: d.id,
                    left_target: left.clone(),
                    right_target: right.clone(),
                    category_order: order,
                });
            }
        }
    }
    trials
}

/// Sixty trials for one chart kind over the datasets generated from `seed`.
pub fn build_trial_schedule(seed: u64, chart: ChartKind) -> Vec<Trial> {
    schedule_for(&generate_datasets(seed), seed, chart)
}
