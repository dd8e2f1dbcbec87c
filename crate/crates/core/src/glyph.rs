//! Vegetable icon artwork used as iconic texture primitives.
//!
//! Glyphs are drawn in the unit box (y down) as closed polygons filled with
//! the nonzero winding rule.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::geom::{winding, Point};

/// The seven data categories, alphabetical, paired with their glyph ids.
pub const VEGETABLES: [(&str, &str); 7] = [
    ("carrots", "carrot"),
    ("celery", "celery"),
    ("corn", "corn"),
    ("eggplant", "eggplant"),
    ("mushrooms", "mushroom"),
    ("olives", "olive"),
    ("tomatoes", "tomato"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IconDetail {
    Detailed,
    Simplified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IconWeight {
    Outline,
    Filled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IconStyle {
    pub detail: IconDetail,
    pub weight: IconWeight,
}

impl IconStyle {
    pub const ALL: [IconStyle; 4] = [
        IconStyle { detail: IconDetail::Detailed, weight: IconWeight::Outline },
        IconStyle { detail: IconDetail::Detailed, weight: IconWeight::Filled },
        IconStyle { detail: IconDetail::Simplified, weight: IconWeight::Outline },
        IconStyle { detail: IconDetail::Simplified, weight: IconWeight::Filled },
    ];

    /// File-name suffix, e.g. `detailed-outline`.
    pub fn slug(&self) -> &'static str {
        match (self.detail, self.weight) {
            (IconDetail::Detailed, IconWeight::Outline) => "detailed-outline",
            (IconDetail::Detailed, IconWeight::Filled) => "detailed-filled",
            (IconDetail::Simplified, IconWeight::Outline) => "simplified-outline",
            (IconDetail::Simplified, IconWeight::Filled) => "simplified-filled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IconGlyph {
    pub glyph_id: String,
    pub vegetable: String,
    pub style: IconStyle,
    /// Path data exactly as stored in the asset file.
    pub outline_path: String,
    pub contours: Vec<Vec<Point>>,
}

impl IconGlyph {
    /// Nonzero fill test in glyph-local unit coordinates.
    pub fn covers(&self, p: Point) -> bool {
        if !(0.0..=1.0).contains(&p.x) || !(0.0..=1.0).contains(&p.y) {
            return false;
        }
        self.contours.iter().map(|c| winding(c, p)).sum::<i32>() != 0
    }
}

/// Parses the `M x y L x y ... Z` subset of SVG path data used by the glyph
/// assets.
pub fn parse_polygon_path(d: &str) -> Result<Vec<Vec<Point>>, CoreError> {
    let bad = |msg: &str| CoreError::Asset(format!("glyph path: {msg}"));
    let mut contours = Vec::new();
    let mut current: Vec<Point> = Vec::new();
    let mut tokens = d.split_whitespace().peekable();
    while let Some(tok) = tokens.next() {
        let (cmd, rest) = tok.split_at(1);
        match cmd {
            "M" | "L" => {
                if cmd == "M" && !current.is_empty() {
                    return Err(bad("unterminated subpath"));
                }
                let x: f64 = rest.parse().map_err(|_| bad("bad x"))?;
                let y: f64 = tokens.next().ok_or_else(|| bad("missing y"))?.parse().map_err(|_| bad("bad y"))?;
                current.push(Point::new(x, y));
            }
            "Z" => {
                if current.len() < 3 {
                    return Err(bad("degenerate subpath"));
                }
                contours.push(std::mem::take(&mut current));
            }
            _ => return Err(bad("unsupported command")),
        }
    }
    if !current.is_empty() {
        return Err(bad("unterminated subpath"));
    }
    Ok(contours)
}

fn extract_path_data(svg: &str) -> Option<&str> {
    let start = svg.find(" d=\"")? + 4;
    let len = svg[start..].find('"')?;
    Some(&svg[start..start + len])
}

macro_rules! embedded_glyphs {
    ($($veg:literal),*) => {
        &[$(
            ($veg, "detailed-outline", include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/assets/glyphs/", $veg, "-detailed-outline.svg"))),
            ($veg, "detailed-filled", include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/assets/glyphs/", $veg, "-detailed-filled.svg"))),
            ($veg, "simplified-outline", include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/assets/glyphs/", $veg, "-simplified-outline.svg"))),
            ($veg, "simplified-filled", include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/assets/glyphs/", $veg, "-simplified-filled.svg"))),
        )*]
    };
}

const EMBEDDED: &[(&str, &str, &str)] =
    embedded_glyphs!("carrot", "celery", "corn", "eggplant", "mushroom", "olive", "tomato");

#[derive(Debug, Clone)]
pub struct GlyphRegistry {
    glyphs: Vec<IconGlyph>,
}

impl GlyphRegistry {
    pub fn embedded() -> Self {
        Self::from_sources(EMBEDDED.iter().map(|(v, s, svg)| (v.to_string(), s.to_string(), svg.to_string())))
            .expect("embedded glyph assets are valid")
    }

    /// Loads `glyphs/<glyph>-<style>.svg` from an asset directory.
    pub fn load_dir(assets: &Path) -> Result<Self, CoreError> {
        let mut sources = Vec::new();
        for (_, glyph) in VEGETABLES {
            for style in IconStyle::ALL {
                let path = assets.join("glyphs").join(format!("{glyph}-{}.svg", style.slug()));
                let svg = std::fs::read_to_string(&path)
                    .map_err(|e| CoreError::Asset(format!("{}: {e}", path.display())))?;
                sources.push((glyph.to_string(), style.slug().to_string(), svg));
            }
        }
        Self::from_sources(sources)
    }

    fn from_sources(sources: impl IntoIterator<Item = (String, String, String)>) -> Result<Self, CoreError> {
        let mut glyphs = Vec::new();
        for (glyph_id, slug, svg) in sources {
            let style = *IconStyle::ALL
                .iter()
                .find(|s| s.slug() == slug)
                .ok_or_else(|| CoreError::Asset(format!("unknown icon style {slug}")))?;
            let vegetable = VEGETABLES
                .iter()
                .find(|(_, g)| *g == glyph_id)
                .map(|(v, _)| v.to_string())
                .ok_or_else(|| CoreError::Asset(format!("unknown glyph {glyph_id}")))?;
            let d = extract_path_data(&svg).ok_or_else(|| CoreError::Asset(format!("{glyph_id}: no path data")))?;
            glyphs.push(IconGlyph {
                contours: parse_polygon_path(d)?,
                outline_path: d.to_string(),
                glyph_id,
                vegetable,
                style,
            });
        }
        Ok(Self { glyphs })
    }

    /// Process-wide registry. Honors `BWTEX_ASSETS` on first use and is
    /// read-only afterwards.
    pub fn global() -> &'static GlyphRegistry {
        static GLOBAL: OnceLock<GlyphRegistry> = OnceLock::new();
        GLOBAL.get_or_init(|| match std::env::var_os("BWTEX_ASSETS") {
            Some(dir) => GlyphRegistry::load_dir(Path::new(&dir)).unwrap_or_else(|e| panic!("BWTEX_ASSETS: {e}")),
            None => GlyphRegistry::embedded(),
        })
    }

    pub fn get(&self, glyph_id: &str, style: IconStyle) -> Option<&IconGlyph> {
        self.glyphs.iter().find(|g| g.glyph_id == glyph_id && g.style == style)
    }

    pub fn contains_glyph(&self, glyph_id: &str) -> bool {
        self.glyphs.iter().any(|g| g.glyph_id == glyph_id)
    }

    pub fn len(&self) -> usize {
        self.glyphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glyphs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &IconGlyph> {
        self.glyphs.iter()
    }
}
