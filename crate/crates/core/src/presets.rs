//! Shipped texture sets, chart templates, the default dataset and the
//! region map fixture.
//!
//! Assets are compiled into the binary; setting `BWTEX_ASSETS` to an
//! asset directory replaces them at first use. The library is read-only
//! afterwards.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::chart::{Category, ChartKind, ChartSpec, Dataset, FillStyle, LegendPlacement, RegionMap, LIGHT_GRAY};
use crate::error::{CoreError, Result};
use crate::glyph::{GlyphRegistry, VEGETABLES};
use crate::texture::{PrimitiveKind, TextureSpec};

pub const BERTIN_SET_COUNT: usize = 5;
pub const DEFAULT_CANVAS: [u32; 2] = [600, 400];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FillKind {
    Geometric,
    Iconic,
}

impl std::str::FromStr for FillKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geometric" => Ok(FillKind::Geometric),
            "iconic" => Ok(FillKind::Iconic),
            other => Err(CoreError::UnknownPreset(format!("no fill kind `{other}`"))),
        }
    }
}

/// Seven textures, one per vegetable in alphabetical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSet {
    pub id: String,
    pub name: String,
    pub kind: FillKind,
    pub textures: Vec<TextureSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartTemplate {
    pub id: String,
    pub chart_kind: ChartKind,
    pub fill: FillKind,
    pub chart: ChartSpec,
}

#[derive(Debug, Clone)]
pub struct AssetLibrary {
    sets: Vec<PresetSet>,
    templates: Vec<ChartTemplate>,
    default_dataset: Dataset,
    region_map: RegionMap,
}

macro_rules! asset {
    ($path:literal) => {
        ($path, include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/assets/", $path)))
    };
}

const EMBEDDED_SETS: &[(&str, &str)] = &[
    asset!("presets/bertin-1.json"),
    asset!("presets/bertin-2.json"),
    asset!("presets/bertin-3.json"),
    asset!("presets/bertin-4.json"),
    asset!("presets/bertin-5.json"),
    asset!("presets/icons-detailed-outline.json"),
    asset!("presets/icons-detailed-filled.json"),
    asset!("presets/icons-simplified-outline.json"),
    asset!("presets/icons-simplified-filled.json"),
];

const EMBEDDED_TEMPLATES: &[(&str, &str)] = &[
    asset!("templates/BG2-like.json"),
    asset!("templates/BI1-like.json"),
    asset!("templates/PG1-like.json"),
    asset!("templates/PI1-like.json"),
];

const EMBEDDED_DATASET: (&str, &str) = asset!("datasets/default.json");
const EMBEDDED_MAP: (&str, &str) = asset!("maps/vegetables.json");

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CoreError::Asset(format!("{name}: {e}")))
}

impl AssetLibrary {
    pub fn embedded() -> Self {
        Self::from_sources(
            EMBEDDED_SETS.iter().map(|(n, t)| (n.to_string(), t.to_string())),
            EMBEDDED_TEMPLATES.iter().map(|(n, t)| (n.to_string(), t.to_string())),
            EMBEDDED_DATASET.1,
            EMBEDDED_MAP.1,
            GlyphRegistry::global(),
        )
        .expect("embedded assets are valid")
    }

    /// Reads `presets/*.json`, `templates/*.json`, `datasets/default.json`
    /// and `maps/vegetables.json` below `dir`.
    pub fn load_dir(dir: &Path, glyphs: &GlyphRegistry) -> Result<Self> {
        let read_all = |sub: &str| -> Result<Vec<(String, String)>> {
            let mut files: Vec<_> = std::fs::read_dir(dir.join(sub))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            files.into_iter().map(|p| Ok((p.display().to_string(), std::fs::read_to_string(&p)?))).collect()
        };
        let dataset = std::fs::read_to_string(dir.join("datasets/default.json"))?;
        let map = std::fs::read_to_string(dir.join("maps/vegetables.json"))?;
        Self::from_sources(read_all("presets")?, read_all("templates")?, &dataset, &map, glyphs)
    }

    fn from_sources(
        sets: impl IntoIterator<Item = (String, String)>,
        templates: impl IntoIterator<Item = (String, String)>,
        dataset: &str,
        map: &str,
        glyphs: &GlyphRegistry,
    ) -> Result<Self> {
        let sets = sets.into_iter().map(|(n, t)| parse::<PresetSet>(&n, &t)).collect::<Result<Vec<_>>>()?;
        let templates = templates.into_iter().map(|(n, t)| parse::<ChartTemplate>(&n, &t)).collect::<Result<Vec<_>>>()?;
        let lib = Self {
            sets,
            templates,
            default_dataset: parse("datasets/default.json", dataset)?,
            region_map: parse("maps/vegetables.json", map)?,
        };
        lib.check(glyphs)?;
        Ok(lib)
    }

    fn check(&self, glyphs: &GlyphRegistry) -> Result<()> {
        let mut ids = std::collections::BTreeSet::new();
        for s in &self.sets {
            if !ids.insert(s.id.as_str()) {
                return Err(CoreError::Asset(format!("duplicate preset id `{}`", s.id)));
            }
            if s.textures.len() != VEGETABLES.len() {
                return Err(CoreError::Asset(format!("{}: {} textures, expected 7", s.id, s.textures.len())));
            }
            self.set_chart(s, ChartKind::Bar).validate(glyphs)?;
        }
        for t in &self.templates {
            if !ids.insert(t.id.as_str()) {
                return Err(CoreError::Asset(format!("duplicate preset id `{}`", t.id)));
            }
            if t.chart.kind != t.chart_kind {
                return Err(CoreError::Asset(format!("{}: chart kind mismatch", t.id)));
            }
            t.chart.validate(glyphs)?;
        }
        self.default_dataset.ordered_for(&self.set_chart(&self.sets[0], ChartKind::Bar))?;
        Ok(())
    }

    /// Process-wide library, honoring `BWTEX_ASSETS` on first use.
    pub fn global() -> &'static AssetLibrary {
        static GLOBAL: OnceLock<AssetLibrary> = OnceLock::new();
        GLOBAL.get_or_init(|| match std::env::var_os("BWTEX_ASSETS") {
            Some(dir) => AssetLibrary::load_dir(Path::new(&dir), GlyphRegistry::global())
                .unwrap_or_else(|e| panic!("BWTEX_ASSETS: {e}")),
            None => AssetLibrary::embedded(),
        })
    }

    pub fn sets(&self) -> &[PresetSet] {
        &self.sets
    }

    pub fn templates(&self) -> &[ChartTemplate] {
        &self.templates
    }

    pub fn set(&self, id: &str) -> Option<&PresetSet> {
        self.sets.iter().find(|s| s.id == id)
    }

    pub fn template(&self, id: &str) -> Option<&ChartTemplate> {
        self.templates.iter().find(|t| t.id == id)
    }

    /// Every id accepted by [`AssetLibrary::chart_for`].
    pub fn preset_ids(&self) -> Vec<&str> {
        self.sets.iter().map(|s| s.id.as_str()).chain(self.templates.iter().map(|t| t.id.as_str())).collect()
    }

    pub fn bertin_set(&self, index: usize) -> Result<&PresetSet> {
        if !(1..=BERTIN_SET_COUNT).contains(&index) {
            return Err(CoreError::OutOfRange { index, max: BERTIN_SET_COUNT });
        }
        self.set(&format!("bertin-{index}")).ok_or_else(|| CoreError::UnknownPreset(format!("bertin-{index}")))
    }

    pub fn default_dataset(&self) -> &Dataset {
        &self.default_dataset
    }

    pub fn region_map(&self) -> &RegionMap {
        &self.region_map
    }

    fn set_chart(&self, set: &PresetSet, kind: ChartKind) -> ChartSpec {
        let fills = set.textures.iter().map(|t| FillStyle::Texture { spec: t.clone() });
        vegetable_chart(kind, fills, default_halo(kind), self.map_for(kind))
    }

    fn map_for(&self, kind: ChartKind) -> Option<RegionMap> {
        (kind == ChartKind::Map).then(|| self.region_map.clone())
    }

    /// Chart for a texture set or template id, converted to `kind`.
    pub fn chart_for(&self, id: &str, kind: ChartKind) -> Result<ChartSpec> {
        if let Some(set) = self.set(id) {
            return Ok(self.set_chart(set, kind));
        }
        let template = self.template(id).ok_or_else(|| CoreError::UnknownPreset(id.to_string()))?;
        let mut chart = template.chart.clone();
        if chart.kind != kind {
            chart.kind = kind;
            chart.halo_width = if kind == ChartKind::Bar { 0.0 } else { chart.halo_width.max(default_halo(kind)) };
        }
        chart.map_regions = self.map_for(kind);
        Ok(chart)
    }

    /// Flat light-gray chart used as the textureless baseline.
    pub fn unicolor_chart(&self, kind: ChartKind) -> ChartSpec {
        let fills = VEGETABLES.iter().map(|_| FillStyle::Unicolor { gray_level: LIGHT_GRAY });
        vegetable_chart(kind, fills, 0.0, self.map_for(kind))
    }
}

fn default_halo(kind: ChartKind) -> f64 {
    match kind {
        ChartKind::Bar => 0.0,
        ChartKind::Pie | ChartKind::Map => 2.0,
    }
}

fn vegetable_chart(
    kind: ChartKind,
    fills: impl Iterator<Item = FillStyle>,
    halo_width: f64,
    map_regions: Option<RegionMap>,
) -> ChartSpec {
    ChartSpec {
        kind,
        categories: VEGETABLES
            .iter()
            .zip(fills)
            .map(|(&(name, glyph), fill)| Category { name: name.to_string(), glyph_id: glyph.to_string(), fill })
            .collect(),
        outline_width: 1.0,
        halo_width,
        legend: LegendPlacement::Right,
        map_regions,
        canvas: DEFAULT_CANVAS,
    }
}

pub fn load_bertin_set(index: usize) -> Result<PresetSet> {
    AssetLibrary::global().bertin_set(index).cloned()
}

pub fn default_dataset() -> Dataset {
    AssetLibrary::global().default_dataset().clone()
}

pub fn winner_preset_id(chart: ChartKind, fill: FillKind) -> Result<&'static str> {
    match (chart, fill) {
        (ChartKind::Bar, FillKind::Geometric) => Ok("BG2-like"),
        (ChartKind::Bar, FillKind::Iconic) => Ok("BI1-like"),
        (ChartKind::Pie, FillKind::Geometric) => Ok("PG1-like"),
        (ChartKind::Pie, FillKind::Iconic) => Ok("PI1-like"),
        (ChartKind::Map, _) => Err(CoreError::UnknownPreset("no winning design for maps".into())),
    }
}

/// Chart template approximating the preferred design for a chart and fill
/// type.
pub fn winner_preset(chart: ChartKind, fill: FillKind) -> Result<ChartTemplate> {
    let id = winner_preset_id(chart, fill)?;
    AssetLibrary::global().template(id).cloned().ok_or_else(|| CoreError::UnknownPreset(id.to_string()))
}

/// Whether every texture of a set uses a geometric (non-icon) primitive.
pub fn is_geometric(set: &PresetSet) -> bool {
    set.textures.iter().all(|t| !matches!(t.primitive, PrimitiveKind::Icon { .. }))
}
