//! Pairwise discriminability checks for a set of textures.
//!
//! Two same-kind textures are too close when their orientations differ by
//! less than 30 degrees (modulo the kind's rotational symmetry) while their
//! spacings differ by less than a factor of two.

use serde::{Deserialize, Serialize};

use super::{ink_ratio, PrimitiveKind, TextureSpec};

pub const MIN_ORIENTATION_DIFF_DEG: f64 = 30.0;
pub const MIN_SPACING_RATIO: f64 = 2.0;
pub const MIN_INK_DIFF: f64 = 0.05;
/// Resolution used for the ink comparison.
pub const LINT_PX_PER_UNIT: u32 = 4;
const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LintRule {
    OrientationTooClose,
    InkTooClose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LintFinding {
    /// Indices into the linted list, `first < second`.
    pub pair: (usize, usize),
    pub rule: LintRule,
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LintReport {
    pub findings: Vec<LintFinding>,
}

impl LintReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn count(&self, rule: LintRule) -> usize {
        self.findings.iter().filter(|f| f.rule == rule).count()
    }
}

/// Rotational period of a pair of same-kind textures, or `None` when the
/// kinds differ (or carry no orientation at all).
pub fn symmetry_period(a: &PrimitiveKind, b: &PrimitiveKind) -> Option<f64> {
    match (a, b) {
        (PrimitiveKind::Line, PrimitiveKind::Line) => Some(180.0),
        (PrimitiveKind::Grid { crossing_angle_deg: x }, PrimitiveKind::Grid { crossing_angle_deg: y }) => {
            let square = (x - 90.0).abs() < EPS && (y - 90.0).abs() < EPS;
            Some(if square { 90.0 } else { 180.0 })
        }
        (PrimitiveKind::Dot { .. }, PrimitiveKind::Dot { .. }) | (PrimitiveKind::Icon { .. }, PrimitiveKind::Icon { .. }) => {
            Some(360.0)
        }
        _ => None,
    }
}

/// Smallest angle between two orientations under a rotational period.
pub fn angular_difference(a_deg: f64, b_deg: f64, period: f64) -> f64 {
    let d = (a_deg - b_deg).rem_euclid(period);
    d.min(period - d)
}

pub fn spacing_ratio(a: &TextureSpec, b: &TextureSpec) -> f64 {
    a.density.max(b.density) / a.density.min(b.density)
}

pub fn lint_texture_set(specs: &[TextureSpec]) -> LintReport {
    let inks: Vec<Option<f64>> = specs.iter().map(|s| ink_ratio(s, LINT_PX_PER_UNIT).ok()).collect();
    let mut findings = Vec::new();
    for i in 0..specs.len() {
        for j in i + 1..specs.len() {
            let (a, b) = (&specs[i], &specs[j]);
            let Some(period) = symmetry_period(&a.primitive, &b.primitive) else { continue };
            let angle = angular_difference(a.orientation_deg, b.orientation_deg, period);
            let ratio = spacing_ratio(a, b);
            let same_bucket = angle < MIN_ORIENTATION_DIFF_DEG - EPS;
            if same_bucket && ratio < MIN_SPACING_RATIO - EPS {
                findings.push(LintFinding {
                    pair: (i, j),
                    rule: LintRule::OrientationTooClose,
                    severity: Severity::Error,
                    message: format!(
                        "orientations differ by {angle:.1} deg (< {MIN_ORIENTATION_DIFF_DEG}) and spacing ratio is {ratio:.2} (< {MIN_SPACING_RATIO})"
                    ),
                });
            }
            if let (Some(x), Some(y)) = (inks[i], inks[j]) {
                let diff = (x - y).abs();
                if same_bucket && diff < MIN_INK_DIFF {
                    findings.push(LintFinding {
                        pair: (i, j),
                        rule: LintRule::InkTooClose,
                        severity: Severity::Warning,
                        message: format!("ink ratios {x:.3} and {y:.3} differ by less than {MIN_INK_DIFF}"),
                    });
                }
            }
        }
    }
    findings.sort_by(|a, b| a.pair.cmp(&b.pair).then(a.rule.cmp(&b.rule)));
    LintReport { findings }
}
