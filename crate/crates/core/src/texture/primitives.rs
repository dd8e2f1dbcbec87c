//! Layout strategies, one per primitive kind, looked up by name.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use super::{jitter_offset, LayoutContext, PrimitiveKind, TextureSpec, TileElement, REFERENCE_LENGTH};
use crate::error::{CoreError, Result};
use crate::geom::Affine;

/// Unwrapped cell content produced by a strategy. Elements may extend past
/// the cell; `build_tile` adds the wrapped copies.
#[derive(Debug, Clone)]
pub struct TileLayout {
    pub cell_width: f64,
    pub cell_height: f64,
    /// Extra pattern-space transform applied before the texture rotation.
    pub shear: Affine,
    pub elements: Vec<TileElement>,
}

pub trait PrimitiveLayout: Send + Sync {
    fn name(&self) -> &'static str;
    fn layout(&self, spec: &TextureSpec, ctx: &LayoutContext<'_>) -> Result<TileLayout>;
}

/// A lattice direction quantized so the cell spans a whole number of units
/// and a whole number of pitches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeAxis {
    pub count: u64,
    pub cell: f64,
    pub pitch: f64,
}

impl LatticeAxis {
    pub fn for_pitch(nominal: f64) -> Self {
        let count = (REFERENCE_LENGTH / nominal).round().max(1.0) as u64;
        let cell = (count as f64 * nominal).round().max(1.0);
        LatticeAxis { count, cell, pitch: cell / count as f64 }
    }

    /// Position of lattice slot `i` (slots sit at half-pitch offsets).
    pub fn slot(&self, i: u64, phase: f64) -> f64 {
        (i as f64 + 0.5) * self.pitch + phase
    }
}

pub struct PlainLayout;

impl PrimitiveLayout for PlainLayout {
    fn name(&self) -> &'static str {
        "plain"
    }

    fn layout(&self, _spec: &TextureSpec, _ctx: &LayoutContext<'_>) -> Result<TileLayout> {
        Ok(TileLayout {
            cell_width: REFERENCE_LENGTH,
            cell_height: REFERENCE_LENGTH,
            shear: Affine::IDENTITY,
            elements: Vec::new(),
        })
    }
}

/// Parallel stripes of width `size`, horizontal before rotation.
pub struct LineLayout;

fn stripes(axis: &LatticeAxis, width: f64, phase: f64, length: f64, out: &mut Vec<TileElement>) {
    for j in 0..axis.count {
        let c = axis.slot(j, phase).rem_euclid(axis.cell);
        out.push(TileElement::Rect { x: 0.0, y: c - width / 2.0, width: length, height: width });
    }
}

impl PrimitiveLayout for LineLayout {
    fn name(&self) -> &'static str {
        "line"
    }

    fn layout(&self, spec: &TextureSpec, _ctx: &LayoutContext<'_>) -> Result<TileLayout> {
        let axis = LatticeAxis::for_pitch(spec.pitch());
        let mut elements = Vec::new();
        stripes(&axis, spec.size, spec.phase[1], axis.cell, &mut elements);
        Ok(TileLayout { cell_width: axis.cell, cell_height: axis.cell, shear: Affine::IDENTITY, elements })
    }
}

/// Two stripe families crossing at the configured angle. Density counts
/// stripes per family. The second family is laid out vertically and then
/// sheared into place, widened by `1 / sin(angle)` so its drawn width and
/// spacing match the first family.
pub struct GridLayout;

impl PrimitiveLayout for GridLayout {
    fn name(&self) -> &'static str {
        "grid"
    }

    fn layout(&self, spec: &TextureSpec, _ctx: &LayoutContext<'_>) -> Result<TileLayout> {
        let PrimitiveKind::Grid { crossing_angle_deg } = spec.primitive else {
            return Err(CoreError::InvalidSpec("grid layout needs a grid primitive".into()));
        };
        let stretch = 1.0 / crossing_angle_deg.to_radians().sin();
        let rows = LatticeAxis::for_pitch(spec.pitch());
        let cols = LatticeAxis::for_pitch(spec.pitch() * stretch);
        let mut elements = Vec::new();
        stripes(&rows, spec.size, spec.phase[1], cols.cell, &mut elements);
        let width = spec.size * stretch;
        for i in 0..cols.count {
            let c = cols.slot(i, spec.phase[0]).rem_euclid(cols.cell);
            elements.push(TileElement::Rect { x: c - width / 2.0, y: 0.0, width, height: rows.cell });
        }
        let shear = if (crossing_angle_deg - 90.0).abs() < 1e-12 {
            Affine::IDENTITY
        } else {
            Affine::crossing_shear(crossing_angle_deg)
        };
        Ok(TileLayout { cell_width: cols.cell, cell_height: rows.cell, shear, elements })
    }
}

/// Square point lattice with optional jitter; `make` builds the primitive.
fn point_lattice(spec: &TextureSpec, mut make: impl FnMut(f64, f64) -> TileElement) -> TileLayout {
    let axis = LatticeAxis::for_pitch(spec.pitch());
    let mut elements = Vec::with_capacity((axis.count * axis.count) as usize);
    for j in 0..axis.count {
        for i in 0..axis.count {
            let (dx, dy) = jitter_offset(spec.seed, axis.count, i, j, spec.randomness, axis.pitch);
            let x = (axis.slot(i, spec.phase[0]) + dx).rem_euclid(axis.cell);
            let y = (axis.slot(j, spec.phase[1]) + dy).rem_euclid(axis.cell);
            elements.push(make(x, y));
        }
    }
    TileLayout { cell_width: axis.cell, cell_height: axis.cell, shear: Affine::IDENTITY, elements }
}

/// Discs of radius `size`, or rings when not filled.
pub struct DotLayout;

/// Inner radius of an unfilled dot relative to its outer radius.
pub const RING_INNER_RATIO: f64 = 2.0 / 3.0;

impl PrimitiveLayout for DotLayout {
    fn name(&self) -> &'static str {
        "dot"
    }

    fn layout(&self, spec: &TextureSpec, _ctx: &LayoutContext<'_>) -> Result<TileLayout> {
        let filled = !matches!(spec.primitive, PrimitiveKind::Dot { filled: false });
        let r = spec.size;
        Ok(point_lattice(spec, |cx, cy| {
            if filled {
                TileElement::Disc { cx, cy, radius: r }
            } else {
                TileElement::Ring { cx, cy, outer: r, inner: r * RING_INNER_RATIO }
            }
        }))
    }
}

/// Icons whose bounding box edge is `size`, each rotated by the primitive
/// rotation about its own center.
pub struct IconLayout;

impl PrimitiveLayout for IconLayout {
    fn name(&self) -> &'static str {
        "icon"
    }

    fn layout(&self, spec: &TextureSpec, ctx: &LayoutContext<'_>) -> Result<TileLayout> {
        let PrimitiveKind::Icon { glyph_id, style } = &spec.primitive else {
            return Err(CoreError::InvalidSpec("icon layout needs an icon primitive".into()));
        };
        let glyph = Arc::new(
            ctx.glyphs.get(glyph_id, *style).cloned().ok_or_else(|| CoreError::UnknownGlyph(glyph_id.clone()))?,
        );
        let rotation_deg = spec.primitive_rotation_deg.rem_euclid(360.0);
        Ok(point_lattice(spec, |cx, cy| TileElement::Icon { glyph: glyph.clone(), cx, cy, size: spec.size, rotation_deg }))
    }
}

pub struct PrimitiveRegistry {
    layouts: BTreeMap<&'static str, Box<dyn PrimitiveLayout>>,
}

impl PrimitiveRegistry {
    pub fn empty() -> Self {
        Self { layouts: BTreeMap::new() }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(PlainLayout));
        reg.register(Box::new(LineLayout));
        reg.register(Box::new(GridLayout));
        reg.register(Box::new(DotLayout));
        reg.register(Box::new(IconLayout));
        reg
    }

    pub fn global() -> &'static PrimitiveRegistry {
        static GLOBAL: OnceLock<PrimitiveRegistry> = OnceLock::new();
        GLOBAL.get_or_init(PrimitiveRegistry::with_builtins)
    }

    /// Registers a strategy, replacing any previous one with the same name.
    pub fn register(&mut self, layout: Box<dyn PrimitiveLayout>) {
        self.layouts.insert(layout.name(), layout);
    }

    pub fn get(&self, name: &str) -> Option<&dyn PrimitiveLayout> {
        self.layouts.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.layouts.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glyph::GlyphRegistry;
    use crate::texture::{build_tile_with, BuildOptions};

    #[test]
    fn lattice_quantization() {
        assert_eq!(LatticeAxis::for_pitch(10.0), LatticeAxis { count: 10, cell: 100.0, pitch: 10.0 });
        let a = LatticeAxis::for_pitch(100.0 / 7.5);
        assert_eq!((a.count, a.cell), (8, 107.0));
        assert!((a.pitch - 13.375).abs() < 1e-12);
        let sparse = LatticeAxis::for_pitch(250.0);
        assert_eq!((sparse.count, sparse.cell), (1, 250.0));
    }

    #[test]
    fn builtins_are_registered_by_name() {
        let reg = PrimitiveRegistry::with_builtins();
        assert_eq!(reg.names().collect::<Vec<_>>(), ["dot", "grid", "icon", "line", "plain"]);
    }

    #[test]
    fn empty_registry_rejects_every_kind() {
        let spec = TextureSpec::new(PrimitiveKind::Line, 10.0, 1.0);
        let err = build_tile_with(&spec, GlyphRegistry::global(), &PrimitiveRegistry::empty(), BuildOptions::default());
        assert!(err.is_err());
    }

    #[test]
    fn grid_shear_preserves_area() {
        let spec = TextureSpec::new(PrimitiveKind::Grid { crossing_angle_deg: 60.0 }, 8.0, 1.0);
        let tile = build_tile_with(&spec, GlyphRegistry::global(), &PrimitiveRegistry::with_builtins(), BuildOptions::default())
            .unwrap();
        let t = tile.transform;
        assert!((t.a * t.d - t.b * t.c - 1.0).abs() < 1e-12);
        assert!(tile.cell_width > tile.cell_height);
    }
}
