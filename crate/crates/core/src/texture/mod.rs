//! Parameterized black-and-white textures.
//!
//! A [`TextureSpec`] is turned into a seamlessly repeatable [`TileGeometry`]
//! by the primitive layout registered for its kind, then emitted as an SVG
//! `<pattern>`.
//!
//! Lengths are abstract units. Density counts primitives per 100 units, so
//! the lattice pitch (line spacing or dot spacing) is `100 / density`.

mod jitter;
pub mod lint;
mod pattern;
pub mod primitives;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::geom::{Affine, Point};
use crate::glyph::{GlyphRegistry, IconGlyph, IconStyle};
use crate::raster::Bitmap;

pub use jitter::{jitter_offset, jitter_unit};
pub use lint::{lint_texture_set, LintFinding, LintReport, LintRule, Severity};
pub use pattern::emit_pattern;
pub use primitives::{PrimitiveLayout, PrimitiveRegistry};

/// Length of the reference cell that density is expressed against.
pub const REFERENCE_LENGTH: f64 = 100.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PrimitiveKind {
    /// Background only.
    Plain,
    Dot {
        #[serde(default = "default_true")]
        filled: bool,
    },
    Line,
    Grid {
        #[serde(default = "default_crossing")]
        crossing_angle_deg: f64,
    },
    Icon { glyph_id: String, style: IconStyle },
}

fn default_true() -> bool {
    true
}

fn default_crossing() -> f64 {
    90.0
}

impl PrimitiveKind {
    /// Registry key of the layout strategy for this kind.
    pub fn name(&self) -> &'static str {
        match self {
            PrimitiveKind::Plain => "plain",
            PrimitiveKind::Dot { .. } => "dot",
            PrimitiveKind::Line => "line",
            PrimitiveKind::Grid { .. } => "grid",
            PrimitiveKind::Icon { .. } => "icon",
        }
    }

    pub fn is_icon(&self) -> bool {
        matches!(self, PrimitiveKind::Icon { .. })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Background {
    #[default]
    White,
    Black,
}

impl Background {
    pub fn flipped(self) -> Self {
        match self {
            Background::White => Background::Black,
            Background::Black => Background::White,
        }
    }

    pub fn hex(self) -> &'static str {
        match self {
            Background::White => "#ffffff",
            Background::Black => "#000000",
        }
    }

    /// Color primitives are drawn in.
    pub fn ink_hex(self) -> &'static str {
        self.flipped().hex()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TextureSpec {
    pub primitive: PrimitiveKind,
    pub density: f64,
    pub size: f64,
    #[serde(default)]
    pub orientation_deg: f64,
    #[serde(default)]
    pub primitive_rotation_deg: f64,
    #[serde(default)]
    pub background: Background,
    #[serde(default)]
    pub randomness: f64,
    #[serde(default)]
    pub phase: [f64; 2],
    #[serde(default)]
    pub seed: u64,
}

impl TextureSpec {
    pub fn new(primitive: PrimitiveKind, density: f64, size: f64) -> Self {
        Self {
            primitive,
            density,
            size,
            orientation_deg: 0.0,
            primitive_rotation_deg: 0.0,
            background: Background::White,
            randomness: 0.0,
            phase: [0.0, 0.0],
            seed: 0,
        }
    }

    pub fn with_orientation(mut self, deg: f64) -> Self {
        self.orientation_deg = deg;
        self
    }

    pub fn with_background(mut self, background: Background) -> Self {
        self.background = background;
        self
    }

    pub fn with_randomness(mut self, randomness: f64, seed: u64) -> Self {
        self.randomness = randomness;
        self.seed = seed;
        self
    }

    /// Nominal lattice pitch (line spacing or dot spacing) in units.
    pub fn pitch(&self) -> f64 {
        REFERENCE_LENGTH / self.density
    }

    pub fn validate(&self, options: &BuildOptions) -> Result<()> {
        let bad = |msg: String| Err(CoreError::InvalidSpec(msg));
        if !(self.density.is_finite() && self.density > 0.0) {
            return bad(format!("density must be positive, got {}", self.density));
        }
        if !(self.size.is_finite() && self.size > 0.0) {
            return bad(format!("size must be positive, got {}", self.size));
        }
        if !(0.0..=1.0).contains(&self.randomness) {
            return bad(format!("randomness must lie in [0, 1], got {}", self.randomness));
        }
        for (name, v) in [("orientation", self.orientation_deg), ("primitive rotation", self.primitive_rotation_deg)] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        if !self.phase.iter().all(|v| v.is_finite()) {
            return bad("phase must be finite".into());
        }
        if let PrimitiveKind::Grid { crossing_angle_deg } = self.primitive {
            if !(crossing_angle_deg > 0.0 && crossing_angle_deg < 180.0) {
                return bad(format!("grid crossing angle must lie in (0, 180), got {crossing_angle_deg}"));
            }
        }
        if !matches!(self.primitive, PrimitiveKind::Plain) && self.pitch() < self.size * options.min_pitch_ratio {
            return bad(format!(
                "pitch {:.4} is below the floor of {} x size {}",
                self.pitch(),
                options.min_pitch_ratio,
                self.size
            ));
        }
        Ok(())
    }
}

/// Tunables for tile synthesis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    /// Smallest allowed pitch as a multiple of primitive size.
    pub min_pitch_ratio: f64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { min_pitch_ratio: 0.25 }
    }
}

/// One positioned primitive in pattern space.
#[derive(Debug, Clone, PartialEq)]
pub enum TileElement {
    Rect { x: f64, y: f64, width: f64, height: f64 },
    Disc { cx: f64, cy: f64, radius: f64 },
    Ring { cx: f64, cy: f64, outer: f64, inner: f64 },
    Icon { glyph: Arc<IconGlyph>, cx: f64, cy: f64, size: f64, rotation_deg: f64 },
}

impl TileElement {
    /// Axis-aligned bounds `(x0, y0, x1, y1)`.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        match *self {
            TileElement::Rect { x, y, width, height } => (x, y, x + width, y + height),
            TileElement::Disc { cx, cy, radius } | TileElement::Ring { cx, cy, outer: radius, .. } => {
                (cx - radius, cy - radius, cx + radius, cy + radius)
            }
            TileElement::Icon { cx, cy, size, .. } => {
                let h = size * std::f64::consts::FRAC_1_SQRT_2;
                (cx - h, cy - h, cx + h, cy + h)
            }
        }
    }

    pub fn translated(&self, dx: f64, dy: f64) -> TileElement {
        let mut e = self.clone();
        match &mut e {
            TileElement::Rect { x, y, .. } => {
                *x += dx;
                *y += dy;
            }
            TileElement::Disc { cx, cy, .. } | TileElement::Ring { cx, cy, .. } | TileElement::Icon { cx, cy, .. } => {
                *cx += dx;
                *cy += dy;
            }
        }
        e
    }

    /// Coverage test at `p`, with the element shifted by `offset`. Callers
    /// pass the shift separately so tiled and single-cell rasterization
    /// evaluate identical expressions.
    pub fn covers(&self, p: Point, offset: (f64, f64)) -> bool {
        let (px, py) = (p.x - offset.0, p.y - offset.1);
        match self {
            TileElement::Rect { x, y, width, height } => px >= *x && px < x + width && py >= *y && py < y + height,
            TileElement::Disc { cx, cy, radius } => {
                let (dx, dy) = (px - cx, py - cy);
                dx * dx + dy * dy <= radius * radius
            }
            TileElement::Ring { cx, cy, outer, inner } => {
                let (dx, dy) = (px - cx, py - cy);
                let d2 = dx * dx + dy * dy;
                d2 <= outer * outer && d2 > inner * inner
            }
            TileElement::Icon { glyph, cx, cy, size, rotation_deg } => {
                let back = Affine::rotate_deg(-rotation_deg);
                let local = back.apply(Point::new(px - cx, py - cy));
                glyph.covers(Point::new(local.x / size + 0.5, local.y / size + 0.5))
            }
        }
    }

    fn approx_eq(&self, other: &TileElement, tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= tol;
        match (self, other) {
            (TileElement::Rect { x, y, width, height }, TileElement::Rect { x: x2, y: y2, width: w2, height: h2 }) => {
                close(*x, *x2) && close(*y, *y2) && close(*width, *w2) && close(*height, *h2)
            }
            (TileElement::Disc { cx, cy, radius }, TileElement::Disc { cx: a, cy: b, radius: r }) => {
                close(*cx, *a) && close(*cy, *b) && close(*radius, *r)
            }
            (TileElement::Ring { cx, cy, outer, inner }, TileElement::Ring { cx: a, cy: b, outer: o, inner: i }) => {
                close(*cx, *a) && close(*cy, *b) && close(*outer, *o) && close(*inner, *i)
            }
            (
                TileElement::Icon { glyph, cx, cy, size, rotation_deg },
                TileElement::Icon { glyph: g2, cx: a, cy: b, size: s, rotation_deg: r },
            ) => glyph == g2 && close(*cx, *a) && close(*cy, *b) && close(*size, *s) && close(*rotation_deg, *r),
            _ => false,
        }
    }
}

/// One repeatable cell of a texture in pattern space.
///
/// Elements crossing the cell boundary appear once per wrapped position, so
/// clipping each repetition to its own cell reproduces the unbounded texture.
#[derive(Debug, Clone, PartialEq)]
pub struct TileGeometry {
    pub cell_width: f64,
    pub cell_height: f64,
    pub elements: Vec<TileElement>,
    pub background: Background,
    /// Whole-texture rotation, normalized to `[0, 360)`.
    pub rotation_deg: f64,
    /// Pattern space to user space (rotation, plus the grid crossing shear).
    pub transform: Affine,
}

impl TileGeometry {
    pub fn approx_eq(&self, other: &TileGeometry, tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= tol;
        let t = (&self.transform, &other.transform);
        close(self.cell_width, other.cell_width)
            && close(self.cell_height, other.cell_height)
            && self.background == other.background
            && close(self.rotation_deg, other.rotation_deg)
            && [t.0.a - t.1.a, t.0.b - t.1.b, t.0.c - t.1.c, t.0.d - t.1.d, t.0.e - t.1.e, t.0.f - t.1.f]
                .iter()
                .all(|d| d.abs() <= tol)
            && self.elements.len() == other.elements.len()
            && self.elements.iter().zip(&other.elements).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Whole-pixel raster of one cell. See [`crate::raster::rasterize_tile`].
    pub fn rasterize(&self, px_per_unit: u32) -> Bitmap {
        crate::raster::rasterize_tile(self, px_per_unit)
    }
}

/// Everything a layout strategy may consult besides the `TextureSpec`.
pub struct LayoutContext<'a> {
    pub glyphs: &'a GlyphRegistry,
    pub options: BuildOptions,
}

pub fn build_tile(spec: &TextureSpec) -> Result<TileGeometry> {
    build_tile_with(spec, GlyphRegistry::global(), PrimitiveRegistry::global(), BuildOptions::default())
}

pub fn build_tile_with(
    spec: &TextureSpec,
    glyphs: &GlyphRegistry,
    registry: &PrimitiveRegistry,
    options: BuildOptions,
) -> Result<TileGeometry> {
    spec.validate(&options)?;
    let strategy = registry
        .get(spec.primitive.name())
        .ok_or_else(|| CoreError::InvalidSpec(format!("no layout registered for `{}`", spec.primitive.name())))?;
    let layout = strategy.layout(spec, &LayoutContext { glyphs, options })?;
    let (w, h) = (layout.cell_width, layout.cell_height);
    let mut elements = Vec::with_capacity(layout.elements.len());
    for e in &layout.elements {
        wrap_into_cell(e, w, h, &mut elements);
    }
    let rotation_deg = spec.orientation_deg.rem_euclid(360.0);
    Ok(TileGeometry {
        cell_width: w,
        cell_height: h,
        elements,
        background: spec.background,
        rotation_deg,
        transform: Affine::rotate_deg(rotation_deg).then_after(layout.shear),
    })
}

/// Pushes every periodic copy of `e` that intersects the open cell.
fn wrap_into_cell(e: &TileElement, w: f64, h: f64, out: &mut Vec<TileElement>) {
    let (x0, y0, x1, y1) = e.bounds();
    let kx = ((-x1) / w).floor() as i64..=((w - x0) / w).ceil() as i64;
    let ky = ((-y1) / h).floor() as i64..=((h - y0) / h).ceil() as i64;
    for j in ky {
        for i in kx.clone() {
            let (dx, dy) = (i as f64 * w, j as f64 * h);
            if x0 + dx < w && x1 + dx > 0.0 && y0 + dy < h && y1 + dy > 0.0 {
                out.push(if i == 0 && j == 0 { e.clone() } else { e.translated(dx, dy) });
            }
        }
    }
}

/// Fraction of a rasterized tile covered by the ink (contrast) color.
pub fn ink_ratio(spec: &TextureSpec, px_per_unit: u32) -> Result<f64> {
    if px_per_unit < 2 {
        return Err(CoreError::InvalidResolution(px_per_unit));
    }
    if matches!(spec.primitive, PrimitiveKind::Plain) {
        spec.validate(&BuildOptions::default())?;
        return Ok(0.0);
    }
    Ok(build_tile(spec)?.rasterize(px_per_unit).coverage())
}

/// Grows primitives by `k` while spreading them by `k`, which keeps the
/// black/white ratio.
pub fn scale_in_sync(spec: &TextureSpec, k: f64) -> Result<TextureSpec> {
    if !(k.is_finite() && k > 0.0) {
        return Err(CoreError::InvalidSpec(format!("scale factor must be positive, got {k}")));
    }
    let mut out = spec.clone();
    out.size = spec.size * k;
    out.density = spec.density / k;
    out.validate(&BuildOptions::default())?;
    Ok(out)
}

/// Exchanges two textures. Icons keep their own glyph when both sides are
/// iconic; otherwise everything moves.
pub fn swap_parameters(a: &TextureSpec, b: &TextureSpec) -> (TextureSpec, TextureSpec) {
    let (mut a2, mut b2) = (b.clone(), a.clone());
    if let (
        PrimitiveKind::Icon { glyph_id: own_a, .. },
        PrimitiveKind::Icon { glyph_id: own_b, .. },
        PrimitiveKind::Icon { glyph_id: new_a, .. },
        PrimitiveKind::Icon { glyph_id: new_b, .. },
    ) = (&a.primitive, &b.primitive, &mut a2.primitive, &mut b2.primitive)
    {
        new_a.clone_from(own_a);
        new_b.clone_from(own_b);
    }
    (a2, b2)
}
