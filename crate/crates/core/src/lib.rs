//! Black-and-white texture synthesis and textured chart rendering.
//!
//! * [`texture`] turns a [`TextureSpec`] into a seamless tile and an SVG
//!   pattern, measures ink coverage and lints texture sets.
//! * [`chart`] renders bar charts, pie charts and region maps filled with
//!   textures or flat gray.
//! * [`presets`] ships the default texture sets, icon artwork, datasets and
//!   chart templates.

pub mod chart;
pub mod error;
pub mod geom;
pub mod glyph;
pub mod presets;
pub mod raster;
pub mod svg;
pub mod texture;

pub use chart::{
    layout_chart, render_chart, render_chart_with, Category, ChartKind, ChartLayout, ChartSpec, Dataset, FillStyle,
    LegendPlacement, RegionMap, RenderOptions,
};
pub use error::{CoreError, Result};
pub use glyph::{GlyphRegistry, IconDetail, IconStyle, IconWeight, VEGETABLES};
pub use texture::{
    build_tile, emit_pattern, ink_ratio, lint_texture_set, scale_in_sync, swap_parameters, Background, PrimitiveKind,
    TextureSpec, TileGeometry,
};
