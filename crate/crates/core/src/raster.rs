//! Rasterization.
//!
//! Tiles are rasterized directly from their geometry by sampling pixel
//! centers (no anti-aliasing), which makes pixel counts exact and
//! reproducible. Whole SVG documents go through resvg.

use std::sync::{Arc, OnceLock};

use resvg::{tiny_skia, usvg};

use crate::error::{CoreError, Result};
use crate::geom::Point;
use crate::texture::TileGeometry;

/// Binary image; `true` marks ink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitmap {
    pub width: usize,
    pub height: usize,
    data: Vec<bool>,
}

impl Bitmap {
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height, data: vec![false; width * height] }
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.data[y * self.width + x] = v;
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&v| v).count()
    }

    /// Inked fraction.
    pub fn coverage(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.count() as f64 / self.data.len() as f64
    }

    pub fn crop(&self, x: usize, y: usize, width: usize, height: usize) -> Bitmap {
        let mut out = Bitmap::new(width, height);
        for j in 0..height {
            for i in 0..width {
                out.set(i, j, self.get(x + i, y + j));
            }
        }
        out
    }

    /// Number of positions where the two bitmaps differ. Panics on size
    /// mismatch.
    pub fn diff_count(&self, other: &Bitmap) -> usize {
        assert_eq!((self.width, self.height), (other.width, other.height), "bitmap size mismatch");
        self.data.iter().zip(&other.data).filter(|(a, b)| a != b).count()
    }

    pub fn inverted(&self) -> Bitmap {
        Bitmap { width: self.width, height: self.height, data: self.data.iter().map(|v| !v).collect() }
    }
}

fn cell_pixels(len: f64, px_per_unit: u32) -> usize {
    (len * px_per_unit as f64).round() as usize
}

fn paint(tile: &TileGeometry, px_per_unit: u32, bitmap: &mut Bitmap, offset: (f64, f64)) {
    let s = px_per_unit as f64;
    for e in &tile.elements {
        let (x0, y0, x1, y1) = e.bounds();
        let (x0, x1) = (x0 + offset.0, x1 + offset.0);
        let (y0, y1) = (y0 + offset.1, y1 + offset.1);
        let i0 = (x0 * s - 0.5).floor().max(0.0) as usize;
        let j0 = (y0 * s - 0.5).floor().max(0.0) as usize;
        let i1 = ((x1 * s).ceil().max(0.0) as usize).min(bitmap.width);
        let j1 = ((y1 * s).ceil().max(0.0) as usize).min(bitmap.height);
        for j in j0..j1 {
            for i in i0..i1 {
                if bitmap.get(i, j) {
                    continue;
                }
                let p = Point::new((i as f64 + 0.5) / s, (j as f64 + 0.5) / s);
                if e.covers(p, offset) {
                    bitmap.set(i, j, true);
                }
            }
        }
    }
}

/// Ink coverage of one cell in pattern space (before the pattern
/// transform), sampled at pixel centers.
pub fn rasterize_tile(tile: &TileGeometry, px_per_unit: u32) -> Bitmap {
    let mut bitmap = Bitmap::new(cell_pixels(tile.cell_width, px_per_unit), cell_pixels(tile.cell_height, px_per_unit));
    paint(tile, px_per_unit, &mut bitmap, (0.0, 0.0));
    bitmap
}

/// Ink coverage of `cols x rows` copies of the tile with every copy drawn
/// unclipped, so primitives spill into neighbouring cells.
pub fn rasterize_repeated(tile: &TileGeometry, px_per_unit: u32, cols: usize, rows: usize) -> Bitmap {
    let (cw, ch) = (cell_pixels(tile.cell_width, px_per_unit), cell_pixels(tile.cell_height, px_per_unit));
    let mut bitmap = Bitmap::new(cw * cols, ch * rows);
    for r in 0..rows {
        for c in 0..cols {
            paint(tile, px_per_unit, &mut bitmap, (c as f64 * tile.cell_width, r as f64 * tile.cell_height));
        }
    }
    bitmap
}

/// Rendered colors of a tile: `true` is black, regardless of which of
/// background or ink that is.
pub fn rasterize_tile_colors(tile: &TileGeometry, px_per_unit: u32) -> Bitmap {
    let ink = rasterize_tile(tile, px_per_unit);
    match tile.background {
        crate::texture::Background::White => ink,
        crate::texture::Background::Black => ink.inverted(),
    }
}

/// RGBA raster of an SVG document.
pub struct Raster {
    pixmap: tiny_skia::Pixmap,
}

impl Raster {
    pub fn width(&self) -> usize {
        self.pixmap.width() as usize
    }

    pub fn height(&self) -> usize {
        self.pixmap.height() as usize
    }

    pub fn rgba(&self, x: usize, y: usize) -> [u8; 4] {
        let i = (y * self.width() + x) * 4;
        let d = self.pixmap.data();
        [d[i], d[i + 1], d[i + 2], d[i + 3]]
    }

    /// Luminance composited over white, in `[0, 255]`.
    pub fn luma(&self, x: usize, y: usize) -> f64 {
        let [r, g, b, a] = self.rgba(x, y);
        // premultiplied
        let over_white = |c: u8| c as f64 + (255.0 - a as f64);
        0.2126 * over_white(r) + 0.7152 * over_white(g) + 0.0722 * over_white(b)
    }

    /// Dark pixel: luminance below half.
    pub fn is_ink(&self, x: usize, y: usize) -> bool {
        self.luma(x, y) < 127.5
    }

    pub fn to_bitmap(&self) -> Bitmap {
        let mut b = Bitmap::new(self.width(), self.height());
        for y in 0..self.height() {
            for x in 0..self.width() {
                b.set(x, y, self.is_ink(x, y));
            }
        }
        b
    }

    pub fn encode_png(&self) -> Result<Vec<u8>> {
        self.pixmap.encode_png().map_err(|e| CoreError::Render(e.to_string()))
    }
}

/// Renders an SVG document with `px_per_unit` device pixels per user unit.
pub fn render_svg(svg: &str, px_per_unit: f32) -> Result<Raster> {
    static FONTS: OnceLock<Arc<usvg::fontdb::Database>> = OnceLock::new();
    let fonts = FONTS.get_or_init(|| {
        let mut db = usvg::fontdb::Database::new();
        db.load_system_fonts();
        // generic families default to names that may not be installed
        let sans = db
            .faces()
            .flat_map(|f| f.families.iter().map(|(name, _)| name.clone()))
            .filter(|n| n.contains("Sans") && !n.contains("Mono"))
            .min();
        if let Some(name) = sans {
            db.set_sans_serif_family(name);
        }
        Arc::new(db)
    });
    let options = usvg::Options { fontdb: fonts.clone(), ..usvg::Options::default() };
    let tree = usvg::Tree::from_str(svg, &options).map_err(|e| CoreError::Render(e.to_string()))?;
    let size = tree.size();
    let w = (size.width() * px_per_unit).round() as u32;
    let h = (size.height() * px_per_unit).round() as u32;
    let mut pixmap = tiny_skia::Pixmap::new(w, h).ok_or_else(|| CoreError::Render(format!("bad raster size {w}x{h}")))?;
    resvg::render(&tree, tiny_skia::Transform::from_scale(px_per_unit, px_per_unit), &mut pixmap.as_mut());
    Ok(Raster { pixmap })
}

pub fn svg_to_png(svg: &str, px_per_unit: f32) -> Result<Vec<u8>> {
    render_svg(svg, px_per_unit)?.encode_png()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::texture::{build_tile, Background, PrimitiveKind, TextureSpec};

    #[test]
    fn line_tile_pixel_count_is_exact() {
        let tile = build_tile(&TextureSpec::new(PrimitiveKind::Line, 10.0, 2.0)).unwrap();
        let b = rasterize_tile(&tile, 4);
        assert_eq!((b.width, b.height), (400, 400));
        // 10 stripes, 8 pixel rows each, 400 pixels per row
        assert_eq!(b.count(), 10 * 8 * 400);
    }

    #[test]
    fn black_background_inverts_colors() {
        let spec = TextureSpec::new(PrimitiveKind::Dot { filled: true }, 8.0, 2.0);
        let white = rasterize_tile_colors(&build_tile(&spec).unwrap(), 4);
        let black = rasterize_tile_colors(&build_tile(&spec.with_background(Background::Black)).unwrap(), 4);
        assert_eq!(white.diff_count(&black), white.width * white.height);
    }

    #[test]
    fn svg_raster_reads_colors() {
        let svg = r##"<svg xmlns="http://www.w3.org/2000/svg" width="4" height="2"><rect width="4" height="2" fill="#fff"/><rect width="2" height="2" fill="#000"/></svg>"##;
        let r = render_svg(svg, 2.0).unwrap();
        assert_eq!((r.width(), r.height()), (8, 4));
        assert!(r.is_ink(0, 0));
        assert!(!r.is_ink(7, 3));
        assert!(r.encode_png().unwrap().starts_with(b"\x89PNG"));
    }
}
