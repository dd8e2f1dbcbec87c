use crate::geom::Point;
use crate::svg::{fmt_num, xml_escape};

use super::{document::fill_ref, Category, LegendPlacement, PlotArea};

const RIGHT_WIDTH: f64 = 150.0;
const ROW_GAP: f64 = 8.0;
const LABEL_WIDTH: f64 = 96.0;

#[derive(Debug, Clone, PartialEq)]
pub struct LegendEntry {
    pub category: usize,
    /// Swatch square: top-left corner and edge length.
    pub x: f64,
    pub y: f64,
    pub size: f64,
    pub label_at: Point,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegendLayout {
    pub placement: LegendPlacement,
    pub entries: Vec<LegendEntry>,
}

fn entry(category: usize, x: f64, y: f64, size: f64) -> LegendEntry {
    LegendEntry { category, x, y, size, label_at: Point::new(x + size + 6.0, y + size / 2.0 + 4.0) }
}

/// Splits `area` into the plot area and the legend.
pub fn legend_layout(
    categories: &[Category],
    swatch_size: f64,
    placement: LegendPlacement,
    area: PlotArea,
) -> (PlotArea, Option<LegendLayout>) {
    let row = swatch_size + ROW_GAP;
    match placement {
        LegendPlacement::None => (area, None),
        LegendPlacement::Right => {
            let x = area.x + area.width - RIGHT_WIDTH + ROW_GAP;
            let entries = (0..categories.len()).map(|i| entry(i, x, area.y + i as f64 * row, swatch_size)).collect();
            let plot = PlotArea { width: area.width - RIGHT_WIDTH, ..area };
            (plot, Some(LegendLayout { placement, entries }))
        }
        LegendPlacement::Bottom => {
            let entry_w = swatch_size + LABEL_WIDTH;
            let per_row = ((area.width / entry_w).floor() as usize).max(1);
            let rows = categories.len().div_ceil(per_row);
            let height = rows as f64 * row;
            let top = area.y + area.height - height + ROW_GAP;
            let entries = (0..categories.len())
                .map(|i| entry(i, area.x + (i % per_row) as f64 * entry_w, top + (i / per_row) as f64 * row, swatch_size))
                .collect();
            let plot = PlotArea { height: area.height - height, ..area };
            (plot, Some(LegendLayout { placement, entries }))
        }
    }
}

/// Legend entries stacked vertically from the origin. Swatches reference
/// the same pattern ids as the chart marks.
pub fn render_legend(categories: &[Category], swatch_size: f64) -> String {
    let area = PlotArea { x: 0.0, y: 0.0, width: RIGHT_WIDTH, height: categories.len() as f64 * (swatch_size + ROW_GAP) };
    let (_, layout) = legend_layout(categories, swatch_size, LegendPlacement::Right, area);
    let mut layout = layout.expect("right legend");
    for e in &mut layout.entries {
        e.x -= ROW_GAP;
        e.label_at.x -= ROW_GAP;
    }
    render_legend_at(categories, &layout)
}

pub fn render_legend_at(categories: &[Category], layout: &LegendLayout) -> String {
    let mut out = String::from("<g class=\"legend\">");
    for e in &layout.entries {
        let c = &categories[e.category];
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{s}\" height=\"{s}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            fmt_num(e.x),
            fmt_num(e.y),
            fill_ref(e.category, &c.fill),
            s = fmt_num(e.size),
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            fmt_num(e.label_at.x),
            fmt_num(e.label_at.y),
            xml_escape(&c.name)
        ));
    }
    out.push_str("</g>");
    out
}
