//! Stimulus images for a schedule plus the manifest mapping trials to
//! files. Each (chart, fill, dataset) image is rendered once and shared by
//! both question blocks.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use bwtex_core::chart::render_chart;
use bwtex_core::presets::{winner_preset_id, AssetLibrary, FillKind};
use bwtex_core::raster::svg_to_png;
use bwtex_core::{ChartKind, ChartSpec};
use serde::{Deserialize, Serialize};

use crate::datasets::StudyDataset;
use crate::error::{Result, StudyError};
use crate::schedule::{Fill, Question, Trial};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StimulusOptions {
    /// Also write PNGs at this many pixels per unit.
    pub png_px_per_unit: Option<f32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestImage {
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub png: Option<String>,
    pub chart: ChartKind,
    pub fill: Fill,
    pub dataset_id: u32,
    pub category_order: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestTrial {
    pub chart: ChartKind,
    pub index: usize,
    pub question: Question,
    pub fill: Fill,
    pub dataset_id: u32,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub images: Vec<ManifestImage>,
    pub trials: Vec<ManifestTrial>,
}

pub fn image_name(chart: ChartKind, fill: Fill, dataset_id: u32) -> String {
    format!("{}-{}-d{dataset_id:02}", chart.name(), fill.name())
}

/// Chart used for one stimulus: the winning design for textured fills, the
/// light-gray baseline otherwise, with categories in `order`.
pub fn stimulus_chart(lib: &AssetLibrary, chart: ChartKind, fill: Fill, order: &[String]) -> Result<ChartSpec> {
    let mut spec = match fill {
        Fill::Geometric => lib.chart_for(winner_preset_id(chart, FillKind::Geometric)?, chart)?,
        Fill::Iconic => lib.chart_for(winner_preset_id(chart, FillKind::Iconic)?, chart)?,
        Fill::Unicolor => lib.unicolor_chart(chart),
    };
    let mut reordered = Vec::with_capacity(order.len());
    for name in order {
        let i = spec
            .category_index(name)
            .ok_or_else(|| StudyError::Invalid(format!("category `{name}` not in the stimulus chart")))?;
        reordered.push(spec.categories[i].clone());
    }
    if reordered.len() != spec.categories.len() {
        return Err(StudyError::Invalid("category order does not cover every category".into()));
    }
    spec.categories = reordered;
    Ok(spec)
}

pub fn export_stimuli(
    schedule: &[Trial],
    datasets: &[StudyDataset],
    lib: &AssetLibrary,
    out_dir: &Path,
    options: &StimulusOptions,
) -> Result<Manifest> {
    std::fs::create_dir_all(out_dir)?;
    let mut images = BTreeMap::new();
    let mut trials = Vec::with_capacity(schedule.len());
    for t in schedule {
        let name = image_name(t.chart, t.fill, t.dataset_id);
        if !images.contains_key(&name) {
            let dataset = datasets
                .iter()
                .find(|d| d.id == t.dataset_id)
                .ok_or_else(|| StudyError::Invalid(format!("no dataset {}", t.dataset_id)))?;
            let chart = stimulus_chart(lib, t.chart, t.fill, &t.category_order)?;
            let svg = render_chart(&chart, &dataset.to_dataset())
                .map_err(|source| StudyError::RenderFailure { image: name.clone(), source })?;
            let file = format!("{name}.svg");
            std::fs::write(out_dir.join(&file), &svg)?;
            let png = match options.png_px_per_unit {
                Some(ppu) => {
                    let bytes =
                        svg_to_png(&svg, ppu).map_err(|source| StudyError::RenderFailure { image: name.clone(), source })?;
                    let png = format!("{name}.png");
                    std::fs::write(out_dir.join(&png), bytes)?;
                    Some(png)
                }
                None => None,
            };
            images.insert(
                name.clone(),
                ManifestImage {
                    file,
                    png,
                    chart: t.chart,
                    fill: t.fill,
                    dataset_id: t.dataset_id,
                    category_order: t.category_order.clone(),
                },
            );
        }
        trials.push(ManifestTrial {
            chart: t.chart,
            index: t.index,
            question: t.question,
            fill: t.fill,
            dataset_id: t.dataset_id,
            image: images[&name].file.clone(),
        });
    }
    let manifest = Manifest { images: images.into_values().collect(), trials };
    std::fs::write(out_dir.join(MANIFEST_FILE), serde_json::to_string_pretty(&manifest)?)?;
    Ok(manifest)
}

/// Consistency findings between a manifest, its schedule and (optionally)
/// the files on disk. Empty means consistent.
pub fn validate_manifest(manifest: &Manifest, schedule: &[Trial], dir: Option<&Path>) -> Vec<String> {
    let mut findings = Vec::new();
    let by_file: BTreeMap<&str, &ManifestImage> = manifest.images.iter().map(|i| (i.file.as_str(), i)).collect();
    if by_file.len() != manifest.images.len() {
        findings.push("duplicate image file names".to_string());
    }
    if manifest.trials.len() != schedule.len() {
        findings.push(format!("{} trial entries for {} scheduled trials", manifest.trials.len(), schedule.len()));
    }
    let mut used = BTreeSet::new();
    for (m, t) in manifest.trials.iter().zip(schedule) {
        if (m.chart, m.index, m.question, m.fill, m.dataset_id) != (t.chart, t.index, t.question, t.fill, t.dataset_id) {
            findings.push(format!("trial {} of {} does not match the schedule", t.index, t.chart.name()));
        }
        match by_file.get(m.image.as_str()) {
            None => findings.push(format!("trial {} references unknown image {}", m.index, m.image)),
            Some(img) => {
                used.insert(img.file.as_str());
                if (img.chart, img.fill, img.dataset_id) != (t.chart, t.fill, t.dataset_id) {
                    findings.push(format!("image {} does not show trial {}", img.file, t.index));
                }
                if img.category_order != t.category_order {
                    findings.push(format!("image {} has a different category order than trial {}", img.file, t.index));
                }
            }
        }
    }
    for img in &manifest.images {
        if !used.contains(img.file.as_str()) {
            findings.push(format!("image {} is never used", img.file));
        }
        if let Some(dir) = dir {
            for f in std::iter::once(&img.file).chain(img.png.iter()) {
                if !dir.join(f).is_file() {
                    findings.push(format!("missing file {f}"));
                }
            }
        }
    }
    findings
}
