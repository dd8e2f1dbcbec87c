//! Percentile bootstrap of the mean.
//!
//! Iteration `i` draws from its own ChaCha stream (`set_stream(i)`), so
//! results are identical whether resampling runs serially or in parallel.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, StatsError};

pub const DEFAULT_ITERATIONS: usize = 10_000;
pub const DEFAULT_CONFIDENCE: f64 = 0.95;
pub const FAMILY_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CIResult {
    pub mean: f64,
    pub lower: f64,
    pub upper: f64,
    pub confidence: f64,
    pub iterations: usize,
}

impl CIResult {
    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Linear-interpolation percentile of sorted data, `q` in `[0, 1]`.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Sorted means of `iterations` resamples with replacement.
pub fn resampled_means(samples: &[f64], iterations: usize, seed: u64) -> Vec<f64> {
    let n = samples.len();
    let mut means: Vec<f64> = (0..iterations)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            (0..n).map(|_| samples[rng.gen_range(0..n)]).sum::<f64>() / n as f64
        })
        .collect();
    means.sort_by(f64::total_cmp);
    means
}

fn check(samples: &[f64], iterations: usize, confidence: f64) -> Result<()> {
    if samples.len() < 2 {
        return Err(StatsError::TooFewSamples(samples.len()));
    }
    if iterations == 0 {
        return Err(StatsError::InvalidParameter("iterations must be positive".into()));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(StatsError::InvalidParameter(format!("confidence {confidence} outside (0, 1)")));
    }
    Ok(())
}

fn interval(samples: &[f64], sorted_means: &[f64], confidence: f64) -> CIResult {
    if samples.iter().all(|&v| v == samples[0]) {
        let v = samples[0];
        return CIResult { mean: v, lower: v, upper: v, confidence, iterations: sorted_means.len() };
    }
    let alpha = 1.0 - confidence;
    CIResult {
        mean: mean(samples),
        lower: percentile(sorted_means, alpha / 2.0),
        upper: percentile(sorted_means, 1.0 - alpha / 2.0),
        confidence,
        iterations: sorted_means.len(),
    }
}

pub fn bootstrap_ci(samples: &[f64], iterations: usize, confidence: f64, seed: u64) -> Result<CIResult> {
    check(samples, iterations, confidence)?;
    Ok(interval(samples, &resampled_means(samples, iterations, seed), confidence))
}

/// Several confidence levels from one set of resamples.
pub fn bootstrap_cis(samples: &[f64], iterations: usize, confidences: &[f64], seed: u64) -> Result<Vec<CIResult>> {
    for &c in confidences {
        check(samples, iterations, c)?;
    }
    let means = resampled_means(samples, iterations, seed);
    Ok(confidences.iter().map(|&c| interval(samples, &means, c)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub pair: (String, String),
    /// Mean of `first - second` over participants.
    pub diff_mean: f64,
    /// Bonferroni-adjusted interval.
    pub ci: CIResult,
    /// Interval at the family-wise level, from the same resamples.
    pub unadjusted: CIResult,
    pub family_size: usize,
    /// The adjusted interval excludes zero.
    pub evidence: bool,
}

/// Per-comparison confidence for `k` conditions under Bonferroni.
pub fn bonferroni_confidence(family_alpha: f64, comparisons: usize) -> f64 {
    1.0 - family_alpha / comparisons as f64
}

/// Paired mean differences for every pair of conditions. `groups` maps a
/// condition to per-participant values; every participant must appear in
/// every condition.
pub fn pairwise_diffs_bonferroni(
    groups: &BTreeMap<String, BTreeMap<String, f64>>,
    family_alpha: f64,
    iterations: usize,
    seed: u64,
) -> Result<Vec<ComparisonResult>> {
    let k = groups.len();
    if k < 2 {
        return Err(StatsError::InvalidParameter(format!("need at least 2 conditions, got {k}")));
    }
    let participants: std::collections::BTreeSet<&String> = groups.values().flat_map(|g| g.keys()).collect();
    for (cond, g) in groups {
        if let Some(p) = participants.iter().find(|p| !g.contains_key(**p)) {
            return Err(StatsError::UnpairedParticipant { participant: p.to_string(), condition: cond.clone() });
        }
    }
    let family_size = k * (k - 1) / 2;
    let adjusted = bonferroni_confidence(family_alpha, family_size);
    let names: Vec<&String> = groups.keys().collect();
    let mut out = Vec::with_capacity(family_size);
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (&groups[names[i]], &groups[names[j]]);
            let diffs: Vec<f64> = participants.iter().map(|p| a[*p] - b[*p]).collect();
            let cis = bootstrap_cis(&diffs, iterations, &[adjusted, 1.0 - family_alpha], seed)?;
            out.push(ComparisonResult {
                pair: (names[i].clone(), names[j].clone()),
                diff_mean: cis[0].mean,
                ci: cis[0],
                unadjusted: cis[1],
                family_size,
                evidence: !cis[0].contains(0.0),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentile_interpolates() {
        let s = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&s, 0.0), 1.0);
        assert_eq!(percentile(&s, 1.0), 4.0);
        assert!((percentile(&s, 0.5) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_samples_give_zero_width() {
        let ci = bootstrap_ci(&[0.1; 30], 1000, 0.95, 1).unwrap();
        assert_eq!((ci.lower, ci.mean, ci.upper), (0.1, 0.1, 0.1));
    }

    #[test]
    fn too_few_samples() {
        assert_eq!(bootstrap_ci(&[1.0], 100, 0.95, 0), Err(StatsError::TooFewSamples(1)));
    }

    #[test]
    fn seed_determinism() {
        let s: Vec<f64> = (0..30).map(|i| (i * 7 % 11) as f64).collect();
        assert_eq!(bootstrap_ci(&s, 2000, 0.95, 9).unwrap(), bootstrap_ci(&s, 2000, 0.95, 9).unwrap());
    }
}
