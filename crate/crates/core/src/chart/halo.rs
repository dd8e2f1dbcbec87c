//! White separation band between a mark's texture and its outline.
//!
//! The texture is drawn inset from the mark boundary by
//! `halo_width + outline_width / 2`; the band in between is white and the
//! outline stroke, centered on the boundary, covers its outer half.

use serde::{Deserialize, Serialize};

use crate::geom::Shape;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ChartWarning {
    /// The texture inset swallows the whole mark; it is drawn white.
    DegenerateInset { category: String, inset: f64, inradius: f64 },
}

impl std::fmt::Display for ChartWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChartWarning::DegenerateInset { category, inset, inradius } => write!(
                f,
                "`{category}`: texture inset {inset:.2} exceeds the mark's inradius {inradius:.2}; drawn without texture"
            ),
        }
    }
}

/// Draw order for one mark: texture, then white band, then outline.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack {
    pub shape: Shape,
    /// Distance from the boundary to the textured region.
    pub texture_inset: f64,
    pub halo_width: f64,
    pub outline_width: f64,
    /// Inradius, when the inset leaves no textured region.
    pub degenerate: Option<f64>,
}

impl LayerStack {
    pub fn has_band(&self) -> bool {
        self.halo_width > 0.0 && self.degenerate.is_none()
    }

    /// Stroke width that, clipped to the shape, paints the white band.
    pub fn band_stroke_width(&self) -> f64 {
        2.0 * self.texture_inset
    }
}

pub fn apply_halo(shape: &Shape, halo_width: f64, outline_width: f64) -> LayerStack {
    let texture_inset = halo_width + outline_width / 2.0;
    let inradius = shape.inradius();
    let degenerate = (texture_inset > 0.0 && texture_inset > inradius).then_some(inradius);
    LayerStack { shape: shape.clone(), texture_inset, halo_width, outline_width, degenerate }
}
