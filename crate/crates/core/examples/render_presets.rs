//! Renders every shipped preset to PNG files in the given directory.

use bwtex_core::chart::{render_chart_with, RenderOptions};
use bwtex_core::presets::AssetLibrary;
use bwtex_core::raster::svg_to_png;
use bwtex_core::ChartKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "preset-renders".into()));
    std::fs::create_dir_all(&out)?;
    let lib = AssetLibrary::global();
    for id in lib.preset_ids() {
        for kind in [ChartKind::Bar, ChartKind::Pie, ChartKind::Map] {
            let chart = lib.chart_for(id, kind)?;
            let r = render_chart_with(&chart, lib.default_dataset(), &RenderOptions { selected: Some(0) })?;
            for w in &r.warnings {
                eprintln!("{id} {}: {w}", kind.name());
            }
            std::fs::write(out.join(format!("{id}-{}.png", kind.name())), svg_to_png(&r.svg, 2.0)?)?;
        }
    }
    Ok(())
}
