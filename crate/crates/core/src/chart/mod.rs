//! Textured bar charts, pie charts and region maps rendered to SVG.
//!
//! Each chart kind is a [`ChartRenderer`] registered by name in a
//! [`ChartRegistry`]; the renderer lays out marks, and the shared document
//! writer adds patterns, halos, outlines, axis and legend.
//!
//! Patterns use user-space units anchored at the document origin, so a
//! texture keeps the same phase across every mark and legend swatch that
//! uses it.

mod bar;
mod document;
mod halo;
mod legend;
mod map;
mod pie;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::geom::{Point, Shape};
use crate::glyph::GlyphRegistry;
use crate::texture::{BuildOptions, PrimitiveKind, TextureSpec};

pub use bar::BarRenderer;
pub use document::{pattern_id, RenderOptions, RenderedChart};
pub use halo::{apply_halo, ChartWarning, LayerStack};
pub use legend::{legend_layout, render_legend, render_legend_at, LegendEntry, LegendLayout};
pub use map::MapRenderer;
pub use pie::PieRenderer;

/// Gray level of the flat baseline fill.
pub const LIGHT_GRAY: f64 = 0.83;
pub const DEFAULT_SWATCH: f64 = 24.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartKind {
    Bar,
    Pie,
    Map,
}

impl ChartKind {
    pub fn name(self) -> &'static str {
        match self {
            ChartKind::Bar => "bar",
            ChartKind::Pie => "pie",
            ChartKind::Map => "map",
        }
    }
}

impl std::str::FromStr for ChartKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bar" => Ok(ChartKind::Bar),
            "pie" => Ok(ChartKind::Pie),
            "map" => Ok(ChartKind::Map),
            other => Err(CoreError::UnknownChartKind(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FillStyle {
    Texture { spec: TextureSpec },
    /// 0 is black, 1 is white.
    Unicolor { gray_level: f64 },
}

impl FillStyle {
    pub fn texture(&self) -> Option<&TextureSpec> {
        match self {
            FillStyle::Texture { spec } => Some(spec),
            FillStyle::Unicolor { .. } => None,
        }
    }

    pub fn texture_mut(&mut self) -> Option<&mut TextureSpec> {
        match self {
            FillStyle::Texture { spec } => Some(spec),
            FillStyle::Unicolor { .. } => None,
        }
    }
}

pub fn gray_hex(level: f64) -> String {
    let v = (level.clamp(0.0, 1.0) * 255.0).round() as u8;
    format!("#{v:02x}{v:02x}{v:02x}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Category {
    pub name: String,
    pub glyph_id: String,
    pub fill: FillStyle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LegendPlacement {
    None,
    Right,
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub category: String,
    /// One or more simple polygons, `[x, y]` vertices in map coordinates.
    pub polygons: Vec<Vec<[f64; 2]>>,
}

impl Region {
    pub fn rings(&self) -> Vec<Vec<Point>> {
        self.polygons.iter().map(|poly| poly.iter().map(|&[x, y]| Point::new(x, y)).collect()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionMap {
    pub regions: Vec<Region>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub kind: ChartKind,
    pub categories: Vec<Category>,
    pub outline_width: f64,
    #[serde(default)]
    pub halo_width: f64,
    pub legend: LegendPlacement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map_regions: Option<RegionMap>,
    /// Width and height in canvas units (CSS pixels).
    pub canvas: [u32; 2],
}

impl ChartSpec {
    pub fn category_index(&self, name: &str) -> Option<usize> {
        self.categories.iter().position(|c| c.name == name)
    }

    pub fn validate(&self, glyphs: &GlyphRegistry) -> Result<()> {
        let bad = |msg: String| Err(CoreError::InvalidChart(msg));
        if self.categories.is_empty() {
            return bad("at least one category is required".into());
        }
        let mut seen = BTreeSet::new();
        for c in &self.categories {
            if !seen.insert(c.name.as_str()) {
                return bad(format!("duplicate category `{}`", c.name));
            }
            match &c.fill {
                FillStyle::Unicolor { gray_level } if !(0.0..=1.0).contains(gray_level) => {
                    return bad(format!("{}: gray level {gray_level} outside [0, 1]", c.name));
                }
                FillStyle::Unicolor { .. } => {}
                FillStyle::Texture { spec } => {
                    spec.validate(&BuildOptions::default())?;
                    if let PrimitiveKind::Icon { glyph_id, .. } = &spec.primitive {
                        if *glyph_id != c.glyph_id {
                            return bad(format!("{}: icon fill uses glyph `{glyph_id}`, expected `{}`", c.name, c.glyph_id));
                        }
                        if !glyphs.contains_glyph(glyph_id) {
                            return Err(CoreError::UnknownGlyph(glyph_id.clone()));
                        }
                    }
                }
            }
        }
        for (name, w) in [("outline_width", self.outline_width), ("halo_width", self.halo_width)] {
            if !(w.is_finite() && w >= 0.0) {
                return bad(format!("{name} must be non-negative, got {w}"));
            }
        }
        if self.kind == ChartKind::Bar && self.halo_width != 0.0 {
            return bad("bar charts take no halo".into());
        }
        if self.canvas[0] == 0 || self.canvas[1] == 0 {
            return bad("canvas must be non-empty".into());
        }
        if self.kind == ChartKind::Map {
            let map = self.map_regions.as_ref().ok_or_else(|| CoreError::MissingRegions("no region map".into()))?;
            for c in &self.categories {
                let n = map.regions.iter().filter(|r| r.category == c.name).count();
                if n != 1 {
                    return Err(CoreError::MissingRegions(format!("`{}` has {n} regions, expected 1", c.name)));
                }
            }
            for r in &map.regions {
                if self.category_index(&r.category).is_none() {
                    return Err(CoreError::MissingRegions(format!("region for unknown category `{}`", r.category)));
                }
                if r.polygons.is_empty() || r.polygons.iter().any(|p| p.len() < 3) {
                    return Err(CoreError::MissingRegions(format!("`{}` has a degenerate polygon", r.category)));
                }
            }
        }
        Ok(())
    }
}

/// Category values driving one chart instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    pub values: BTreeMap<String, f64>,
}

impl Dataset {
    pub fn new(values: impl IntoIterator<Item = (String, f64)>) -> Self {
        Self { values: values.into_iter().collect() }
    }

    /// Values in chart category order.
    pub fn ordered_for(&self, chart: &ChartSpec) -> Result<Vec<f64>> {
        if self.values.len() != chart.categories.len() {
            return Err(CoreError::MismatchedDataset(format!(
                "{} values for {} categories",
                self.values.len(),
                chart.categories.len()
            )));
        }
        chart
            .categories
            .iter()
            .map(|c| {
                let v = *self
                    .values
                    .get(&c.name)
                    .ok_or_else(|| CoreError::MismatchedDataset(format!("no value for `{}`", c.name)))?;
                if !(v.is_finite() && v >= 0.0) {
                    return Err(CoreError::MismatchedDataset(format!("`{}` has invalid value {v}", c.name)));
                }
                Ok(v)
            })
            .collect()
    }
}

/// Rectangle available to the marks, in canvas units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotArea {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mark {
    pub category: usize,
    pub value: f64,
    /// Empty for zero-sized marks.
    pub shapes: Vec<Shape>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValueAxis {
    pub x: f64,
    pub top: f64,
    pub bottom: f64,
    pub max_value: f64,
    /// `(value, y)` per tick.
    pub ticks: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Label {
    pub at: Point,
    pub text: String,
    pub anchor: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartLayout {
    pub width: f64,
    pub height: f64,
    pub plot: PlotArea,
    /// One per category, in category order.
    pub marks: Vec<Mark>,
    pub axis: Option<ValueAxis>,
    pub labels: Vec<Label>,
    pub legend: Option<LegendLayout>,
}

pub trait ChartRenderer: Send + Sync {
    fn kind(&self) -> ChartKind;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    /// Places one mark per category inside `plot`.
    fn layout_marks(&self, chart: &ChartSpec, values: &[f64], plot: PlotArea) -> Result<MarkLayout>;
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MarkLayout {
    pub marks: Vec<Mark>,
    pub axis: Option<ValueAxis>,
    pub labels: Vec<Label>,
}

pub struct ChartRegistry {
    renderers: BTreeMap<&'static str, Box<dyn ChartRenderer>>,
}

impl ChartRegistry {
    pub fn with_builtins() -> Self {
        let mut reg = Self { renderers: BTreeMap::new() };
        reg.register(Box::new(BarRenderer));
        reg.register(Box::new(PieRenderer));
        reg.register(Box::new(MapRenderer));
        reg
    }

    pub fn global() -> &'static ChartRegistry {
        static GLOBAL: OnceLock<ChartRegistry> = OnceLock::new();
        GLOBAL.get_or_init(ChartRegistry::with_builtins)
    }

    pub fn register(&mut self, renderer: Box<dyn ChartRenderer>) {
        self.renderers.insert(renderer.name(), renderer);
    }

    pub fn get(&self, name: &str) -> Option<&dyn ChartRenderer> {
        self.renderers.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.renderers.keys().copied()
    }
}

const MARGIN: f64 = 12.0;

/// Full layout of a chart: legend reservation, then the kind's marks.
pub fn layout_chart(chart: &ChartSpec, data: &Dataset) -> Result<ChartLayout> {
    chart.validate(GlyphRegistry::global())?;
    let values = data.ordered_for(chart)?;
    let renderer = ChartRegistry::global()
        .get(chart.kind.name())
        .ok_or_else(|| CoreError::UnknownChartKind(chart.kind.name().to_string()))?;
    let (w, h) = (chart.canvas[0] as f64, chart.canvas[1] as f64);
    let full = PlotArea { x: MARGIN, y: MARGIN, width: w - 2.0 * MARGIN, height: h - 2.0 * MARGIN };
    let (plot, legend) = legend_layout(&chart.categories, DEFAULT_SWATCH, chart.legend, full);
    if plot.width <= 0.0 || plot.height <= 0.0 {
        return Err(CoreError::InvalidChart("canvas too small for the legend".into()));
    }
    let marks = renderer.layout_marks(chart, &values, plot)?;
    Ok(ChartLayout { width: w, height: h, plot, marks: marks.marks, axis: marks.axis, labels: marks.labels, legend })
}

/// Renders a chart to a standalone SVG document.
pub fn render_chart(chart: &ChartSpec, data: &Dataset) -> Result<String> {
    Ok(render_chart_with(chart, data, &RenderOptions::default())?.svg)
}

pub fn render_chart_with(chart: &ChartSpec, data: &Dataset, options: &RenderOptions) -> Result<RenderedChart> {
    let layout = layout_chart(chart, data)?;
    document::write_document(chart, layout, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::texture::PrimitiveKind;

    pub(crate) fn simple_chart(kind: ChartKind, names: &[&str]) -> ChartSpec {
        ChartSpec {
            kind,
            categories: names
                .iter()
                .enumerate()
                .map(|(i, n)| Category {
                    name: n.to_string(),
                    glyph_id: "carrot".into(),
                    fill: FillStyle::Texture {
                        spec: TextureSpec::new(PrimitiveKind::Line, 5.0 + i as f64, 1.0).with_orientation(30.0 * i as f64),
                    },
                })
                .collect(),
            outline_width: 1.0,
            halo_width: 0.0,
            legend: LegendPlacement::Right,
            map_regions: None,
            canvas: [600, 400],
        }
    }

    fn data(pairs: &[(&str, f64)]) -> Dataset {
        Dataset::new(pairs.iter().map(|(k, v)| (k.to_string(), *v)))
    }

    #[test]
    fn bar_heights_are_proportional() {
        let chart = simple_chart(ChartKind::Bar, &["a", "b"]);
        let layout = layout_chart(&chart, &data(&[("a", 10.0), ("b", 20.0)])).unwrap();
        let h = |m: &Mark| match &m.shapes[0] {
            Shape::Polygon { points } => points[2].y - points[0].y,
            _ => unreachable!(),
        };
        assert!((h(&layout.marks[1]) / h(&layout.marks[0]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_dataset_is_rejected() {
        let chart = simple_chart(ChartKind::Bar, &["a", "b"]);
        assert!(matches!(render_chart(&chart, &data(&[("a", 1.0)])), Err(CoreError::MismatchedDataset(_))));
        assert!(matches!(render_chart(&chart, &data(&[("a", 1.0), ("c", 2.0)])), Err(CoreError::MismatchedDataset(_))));
        assert!(matches!(render_chart(&chart, &data(&[("a", 1.0), ("b", -2.0)])), Err(CoreError::MismatchedDataset(_))));
    }

    #[test]
    fn empty_pie_is_rejected() {
        let chart = simple_chart(ChartKind::Pie, &["a", "b"]);
        assert!(matches!(render_chart(&chart, &data(&[("a", 0.0), ("b", 0.0)])), Err(CoreError::EmptyPie)));
    }

    #[test]
    fn map_without_regions_is_rejected() {
        let chart = simple_chart(ChartKind::Map, &["a", "b"]);
        assert!(matches!(render_chart(&chart, &data(&[("a", 1.0), ("b", 2.0)])), Err(CoreError::MissingRegions(_))));
    }

    #[test]
    fn bar_halo_is_rejected_and_names_must_be_unique() {
        let mut chart = simple_chart(ChartKind::Bar, &["a", "b"]);
        chart.halo_width = 2.0;
        assert!(matches!(chart.validate(GlyphRegistry::global()), Err(CoreError::InvalidChart(_))));
        let dup = simple_chart(ChartKind::Bar, &["a", "a"]);
        assert!(matches!(dup.validate(GlyphRegistry::global()), Err(CoreError::InvalidChart(_))));
    }

    #[test]
    fn registry_knows_every_kind() {
        let names: Vec<_> = ChartRegistry::with_builtins().names().collect();
        assert_eq!(names, ["bar", "map", "pie"]);
    }

    #[test]
    fn chart_json_rejects_unknown_keys() {
        let chart = simple_chart(ChartKind::Pie, &["a"]);
        let mut v = serde_json::to_value(&chart).unwrap();
        v["colour"] = serde_json::json!("red");
        assert!(serde_json::from_value::<ChartSpec>(v).is_err());
    }
}
