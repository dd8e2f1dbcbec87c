//! Random seven-value datasets with a designated pair of target categories.

use std::collections::BTreeMap;

use bwtex_core::{Dataset, VEGETABLES};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DATASET_COUNT: usize = 10;
pub const MIN_VALUE: u32 = 5;
pub const MAX_VALUE: u32 = 95;
pub const MIN_TARGET_GAP: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyDataset {
    /// 1-based.
    pub id: u32,
    pub values: BTreeMap<String, f64>,
    pub target_pair: (String, String),
}

impl StudyDataset {
    pub fn value(&self, category: &str) -> f64 {
        self.values[category]
    }

    pub fn target_gap(&self) -> f64 {
        (self.value(&self.target_pair.0) - self.value(&self.target_pair.1)).abs()
    }

    pub fn to_dataset(&self) -> Dataset {
        Dataset { values: self.values.clone() }
    }
}

fn draw(rng: &mut ChaCha8Rng, id: u32) -> StudyDataset {
    loop {
        let values: BTreeMap<String, f64> = VEGETABLES
            .iter()
            .map(|(name, _)| (name.to_string(), rng.gen_range(MIN_VALUE..=MAX_VALUE) as f64))
            .collect();
        let pick = index::sample(rng, VEGETABLES.len(), 2);
        let pair = (VEGETABLES[pick.index(0)].0.to_string(), VEGETABLES[pick.index(1)].0.to_string());
        let ds = StudyDataset { id, values, target_pair: pair };
        if ds.target_gap() >= MIN_TARGET_GAP {
            return ds;
        }
    }
}

/// Ten datasets of whole-number values in `[5, 95]` whose target values
/// differ by at least 5. Rejected draws are discarded whole.
pub fn generate_datasets(seed: u64) -> Vec<StudyDataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..=DATASET_COUNT as u32).map(|id| draw(&mut rng, id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraints_hold() {
        for seed in 0..50 {
            let sets = generate_datasets(seed);
            assert_eq!(sets.len(), 10);
            for d in &sets {
                assert_eq!(d.values.len(), 7);
                assert!(d.values.values().all(|v| (5.0..=95.0).contains(v) && v.fract() == 0.0));
                assert!(d.target_gap() >= 5.0);
                assert_ne!(d.target_pair.0, d.target_pair.1);
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(generate_datasets(3), generate_datasets(3));
        assert_ne!(generate_datasets(3), generate_datasets(4));
    }
}
