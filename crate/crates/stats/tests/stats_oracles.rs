use std::collections::BTreeMap;

use bwtex_core::ChartKind;
use bwtex_stats::bootstrap::{bonferroni_confidence, bootstrap_ci, pairwise_diffs_bonferroni};
use bwtex_stats::ratings::rank_first_counts;
use bwtex_stats::{beauvis_score, summarize_trials, ExclusionPolicy, StatsError};
use bwtex_study::records::{RatingRecord, TrialRecord};
use bwtex_study::runner::{other_side, simulate_participant, Response};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Textbook bootstrap: one sequential generator, nearest-rank percentiles.
fn naive_ci(samples: &[f64], iterations: usize, confidence: f64, seed: u64) -> (f64, f64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = samples.len();
    let mut means = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let mut s = 0.0;
        for _ in 0..n {
            s += samples[rng.gen_range(0..n)];
        }
        means.push(s / n as f64);
    }
    means.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let alpha = 1.0 - confidence;
    let rank = |q: f64| means[((q * iterations as f64).ceil() as usize).clamp(1, iterations) - 1];
    (rank(alpha / 2.0), rank(1.0 - alpha / 2.0))
}

#[test]
fn matches_naive_oracle_on_binary_fixture() {
    let samples: Vec<f64> = (0..1000).map(|i| (i % 2) as f64).collect();
    let ci = bootstrap_ci(&samples, 10_000, 0.95, 17).unwrap();
    let (lo, hi) = naive_ci(&samples, 10_000, 0.95, 99);
    assert!((ci.lower - lo).abs() < 0.02 && (ci.upper - hi).abs() < 0.02, "{ci:?} vs ({lo}, {hi})");
}

#[test]
fn matches_naive_oracle_on_fifty_fixtures() {
    let mut gen = StdRng::seed_from_u64(2024);
    for fixture in 0..50 {
        let n = gen.gen_range(20..120);
        let scale = gen.gen_range(0.2..1.0);
        let samples: Vec<f64> = (0..n).map(|_| gen.gen_range(0.0..scale)).collect();
        let ci = bootstrap_ci(&samples, 10_000, 0.95, fixture).unwrap();
        let (lo, hi) = naive_ci(&samples, 10_000, 0.95, fixture + 1000);
        assert!(ci.contains(ci.mean));
        assert!((ci.lower - lo).abs() < 0.02 && (ci.upper - hi).abs() < 0.02, "fixture {fixture}: {ci:?} vs ({lo}, {hi})");
    }
}

#[test]
fn half_width_scales_with_root_n() {
    let mut gen = StdRng::seed_from_u64(5);
    let mut ratio_sum = 0.0;
    let reps = 20;
    for r in 0..reps {
        let small: Vec<f64> = (0..100).map(|_| gen.gen::<f64>()).collect();
        let large: Vec<f64> = (0..400).map(|_| gen.gen::<f64>()).collect();
        let a = bootstrap_ci(&small, 4000, 0.95, r).unwrap().width();
        let b = bootstrap_ci(&large, 4000, 0.95, r).unwrap().width();
        ratio_sum += b / (a / 2.0);
    }
    let ratio = ratio_sum / reps as f64;
    assert!((ratio - 1.0).abs() < 0.2, "ratio {ratio}");
}

fn groups(conds: &[(&str, &[f64])]) -> BTreeMap<String, BTreeMap<String, f64>> {
    conds
        .iter()
        .map(|(c, vs)| (c.to_string(), vs.iter().enumerate().map(|(i, v)| (format!("p{i:02}"), *v)).collect()))
        .collect()
}

#[test]
fn bonferroni_family_of_three() {
    let g = groups(&[
        ("a", &[0.9, 0.8, 0.95, 0.7, 0.85, 0.9]),
        ("b", &[0.6, 0.7, 0.65, 0.5, 0.7, 0.6]),
        ("c", &[0.9, 0.85, 0.9, 0.75, 0.8, 0.95]),
    ]);
    let res = pairwise_diffs_bonferroni(&g, 0.05, 5000, 3).unwrap();
    assert_eq!(res.len(), 3);
    for c in &res {
        assert_eq!(c.family_size, 3);
        assert_eq!(c.ci.confidence, 1.0 - 0.05 / 3.0);
        assert!(c.ci.lower <= c.unadjusted.lower && c.unadjusted.upper <= c.ci.upper);
    }
    assert_eq!(bonferroni_confidence(0.05, 3), 1.0 - 0.05 / 3.0);
    assert!(res[0].evidence, "a - b clearly positive: {:?}", res[0]);
}

#[test]
fn identical_groups_show_no_difference() {
    let v = [0.3, 0.9, 0.5, 0.7];
    let res = pairwise_diffs_bonferroni(&groups(&[("x", &v), ("y", &v), ("z", &v)]), 0.05, 1000, 1).unwrap();
    for c in res {
        assert_eq!(c.diff_mean, 0.0);
        assert!(c.ci.contains(0.0) && !c.evidence);
    }
}

#[test]
fn unpaired_participant_is_an_error() {
    let mut g = groups(&[("x", &[1.0, 2.0, 3.0]), ("y", &[1.0, 2.0, 3.0])]);
    g.get_mut("y").unwrap().remove("p01");
    assert!(matches!(pairwise_diffs_bonferroni(&g, 0.05, 100, 0), Err(StatsError::UnpairedParticipant { .. })));
}

proptest! {
    #[test]
    fn adjusted_contains_unadjusted(values in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0), 3..25), seed in any::<u64>()) {
        let a: Vec<f64> = values.iter().map(|v| v.0).collect();
        let b: Vec<f64> = values.iter().map(|v| v.1).collect();
        let c: Vec<f64> = values.iter().map(|v| v.2).collect();
        for r in pairwise_diffs_bonferroni(&groups(&[("a", &a), ("b", &b), ("c", &c)]), 0.05, 500, seed).unwrap() {
            prop_assert!(r.ci.lower <= r.unadjusted.lower && r.unadjusted.upper <= r.ci.upper);
        }
    }

    #[test]
    fn beauvis_is_bounded_and_order_free(items in prop::collection::vec(1i64..=7, 5)) {
        let s = beauvis_score(&items).unwrap();
        prop_assert!((1.0..=7.0).contains(&s));
        let mut rev = items.clone();
        rev.reverse();
        prop_assert_eq!(s, beauvis_score(&rev).unwrap());
    }
}

/// Participant answering exactly `correct` of 60 trials correctly, with
/// response time `rt(k)` for trial k.
fn participant(pid: &str, seed: u64, correct: usize, rt: impl Fn(usize) -> u64) -> Vec<TrialRecord> {
    let mut k = 0;
    simulate_participant(pid, seed, ChartKind::Bar, |t, d| {
        let right = t.expected_answer(d);
        let answer = if k < correct { right } else { other_side(right) };
        let r = Response { answer, elapsed_ms: rt(k) };
        k += 1;
        Some(r)
    })
}

#[test]
fn refined_policy_keeps_exactly_the_accurate_participants() {
    let mut log = Vec::new();
    let mut expected = Vec::new();
    for i in 0..150u64 {
        let correct = 30 + (i as usize * 7) % 31; // 30..=60
        let pid = format!("p{i:03}");
        if correct as f64 / 60.0 >= 0.9 {
            expected.push(pid.clone());
        }
        log.extend(participant(&pid, i, correct, |k| 800 + k as u64));
    }
    let s = summarize_trials(&log, &ExclusionPolicy::refined()).unwrap();
    assert_eq!(s.participants_total, 150);
    assert_eq!(s.retained, expected);
    assert_eq!(s.retained.len() + s.excluded.len(), 150);
    assert!(s.excluded.iter().all(|(_, acc)| *acc < 0.9));
    let o = summarize_trials(&log, &ExclusionPolicy::original()).unwrap();
    assert_eq!(o.retained.len(), 150);
}

#[test]
fn random_responder_is_excluded() {
    let mut rng = StdRng::seed_from_u64(8);
    let mut log = participant("good", 1, 60, |_| 900);
    log.extend(simulate_participant("coin", 2, ChartKind::Bar, |t, d| {
        let right = t.expected_answer(d);
        Some(Response { answer: if rng.gen_bool(0.5) { right } else { other_side(right) }, elapsed_ms: 900 })
    }));
    let s = summarize_trials(&log, &ExclusionPolicy::refined()).unwrap();
    assert_eq!(s.retained, vec!["good".to_string()]);
}

#[test]
fn overrun_counts_toward_accuracy_but_not_rt() {
    // every trial correct; trial 0 answered at 5004 ms
    let log = participant("p", 3, 60, |k| if k == 0 { 5004 } else { 1000 });
    assert!(log[0].correct && !log[0].timed_out && log[0].response_ms == 5004);
    let s = summarize_trials(&log, &ExclusionPolicy::refined()).unwrap();
    assert_eq!(s.participants["p"].accuracy, 1.0);
    let c = s.condition(ChartKind::Bar, log[0].fill).unwrap();
    assert_eq!(c.overruns, 1);
    assert_eq!(c.rt_trials, 19);
    assert_eq!(c.rt_mean_ms, Some(1000.0));
}

#[test]
fn timeout_is_counted_and_kept_out_of_rt() {
    let mut log = participant("p", 4, 60, |_| 1200);
    log[10].timed_out = true;
    log[10].answer = bwtex_study::Answer::None;
    log[10].correct = false;
    log[10].response_ms = 5000;
    let s = summarize_trials(&log, &ExclusionPolicy::refined()).unwrap();
    let c = s.condition(ChartKind::Bar, log[10].fill).unwrap();
    assert_eq!(c.timeouts, 1);
    assert_eq!(c.rt_trials, 19);
    assert_eq!(c.rt_mean_ms, Some(1200.0));
}

#[test]
fn policies_agree_when_nobody_is_excluded() {
    let mut log = Vec::new();
    for i in 0..12u64 {
        log.extend(participant(&format!("p{i}"), i, 60, |k| 700 + 13 * k as u64 + i));
    }
    let r = summarize_trials(&log, &ExclusionPolicy::refined()).unwrap();
    let o = summarize_trials(&log, &ExclusionPolicy::original()).unwrap();
    assert_eq!(r.conditions, o.conditions);
    assert_eq!(r.participants, o.participants);

    // with incorrect answers, accuracy still agrees
    let mut log = Vec::new();
    for i in 0..12u64 {
        log.extend(participant(&format!("p{i}"), i, 55 + (i as usize % 6), |k| 700 + k as u64));
    }
    let r = summarize_trials(&log, &ExclusionPolicy::refined()).unwrap();
    let o = summarize_trials(&log, &ExclusionPolicy::original()).unwrap();
    for (a, b) in r.conditions.iter().zip(&o.conditions) {
        assert_eq!((a.accuracy_mean, a.timeouts), (b.accuracy_mean, b.timeouts));
    }
}

#[test]
fn everyone_excluded_is_an_error() {
    let log = participant("p", 1, 10, |_| 900);
    assert_eq!(summarize_trials(&log, &ExclusionPolicy::refined()), Err(StatsError::EmptyAfterExclusion));
}

fn rating(pid: &str, design: &str, first: bool) -> RatingRecord {
    RatingRecord {
        participant_id: pid.into(),
        design_id: design.into(),
        b1: 4,
        b2: 4,
        b3: 4,
        b4: 4,
        b5: 4,
        vibratory: 3,
        rank_first: first,
    }
}

const BAR_DESIGNS: [&str; 4] = ["BG1", "BG2", "BI1", "BI2"];

#[test]
fn rank_first_tallies() {
    let mut rows = Vec::new();
    for p in 0..53 {
        for (k, d) in BAR_DESIGNS.iter().enumerate() {
            rows.push(rating(&format!("p{p}"), d, k == p % 4));
        }
    }
    let counts = rank_first_counts(&rows).unwrap();
    assert_eq!(counts.values().sum::<usize>(), 53);

    let always: Vec<_> = (0..20)
        .flat_map(|p| BAR_DESIGNS.iter().map(move |d| rating(&format!("p{p}"), d, *d == "BG2")))
        .collect();
    assert_eq!(rank_first_counts(&always).unwrap()["BG2"], 20);

    let none: Vec<_> = BAR_DESIGNS.iter().map(|d| rating("p", d, false)).collect();
    assert!(rank_first_counts(&none).unwrap().values().all(|&c| c == 0));

    let dup: Vec<_> = BAR_DESIGNS.iter().map(|d| rating("p", d, true)).collect();
    assert!(matches!(rank_first_counts(&dup), Err(StatsError::DuplicateRankFirst { .. })));
}
