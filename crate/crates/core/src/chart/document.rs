use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::svg::{fmt_num, shape_path, xml_escape};
use crate::texture::{build_tile, emit_pattern};

use super::halo::{apply_halo, ChartWarning};
use super::legend::render_legend_at;
use super::{gray_hex, ChartLayout, ChartSpec, FillStyle};

pub const SELECTION_COLOR: &str = "#1f6feb";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RenderOptions {
    /// Category marked with a blue dot.
    #[serde(default)]
    pub selected: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RenderedChart {
    pub svg: String,
    pub warnings: Vec<ChartWarning>,
    pub layout: ChartLayout,
}

/// Pattern id shared by a category's marks and its legend swatch.
pub fn pattern_id(category: usize) -> String {
    format!("tex-{category}")
}

pub(crate) fn fill_ref(category: usize, fill: &FillStyle) -> String {
    match fill {
        FillStyle::Texture { .. } => format!("url(#{})", pattern_id(category)),
        FillStyle::Unicolor { gray_level } => gray_hex(*gray_level),
    }
}

pub(crate) fn write_document(chart: &ChartSpec, layout: ChartLayout, options: &RenderOptions) -> Result<RenderedChart> {
    let (w, h) = (fmt_num(layout.width), fmt_num(layout.height));
    let mut defs = String::new();
    for (i, c) in chart.categories.iter().enumerate() {
        if let FillStyle::Texture { spec } = &c.fill {
            defs.push_str(&emit_pattern(&build_tile(spec)?, &pattern_id(i)));
        }
    }

    let mut warnings = Vec::new();
    let mut marks = String::from("<g class=\"marks\">");
    let mut outlines = String::new();
    for mark in &layout.marks {
        let category = &chart.categories[mark.category];
        let fill = fill_ref(mark.category, &category.fill);
        for (k, shape) in mark.shapes.iter().enumerate() {
            let d = shape_path(shape);
            let stack = apply_halo(shape, chart.halo_width, chart.outline_width);
            if let Some(inradius) = stack.degenerate {
                warnings.push(ChartWarning::DegenerateInset {
                    category: category.name.clone(),
                    inset: stack.texture_inset,
                    inradius,
                });
                marks.push_str(&format!("<path d=\"{d}\" fill=\"#ffffff\"/>"));
            } else {
                marks.push_str(&format!("<path d=\"{d}\" fill=\"{fill}\"/>"));
            }
            if stack.has_band() {
                let clip = format!("clip-{}-{k}", mark.category);
                defs.push_str(&format!("<clipPath id=\"{clip}\"><path d=\"{d}\"/></clipPath>"));
                marks.push_str(&format!(
                    "<path d=\"{d}\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"{}\" stroke-linejoin=\"miter\" stroke-miterlimit=\"64\" clip-path=\"url(#{clip})\"/>",
                    fmt_num(stack.band_stroke_width())
                ));
            }
            if chart.outline_width > 0.0 {
                outlines.push_str(&format!("<path d=\"{d}\"/>"));
            }
        }
    }
    marks.push_str("</g>");

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\"><defs>{defs}</defs><rect width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>"
    );
    svg.push_str(&marks);
    if !outlines.is_empty() {
        svg.push_str(&format!(
            "<g class=\"outlines\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\" stroke-linejoin=\"miter\" stroke-miterlimit=\"64\">{outlines}</g>",
            fmt_num(chart.outline_width)
        ));
    }
    if let Some(axis) = &layout.axis {
        let right = layout.plot.x + layout.plot.width;
        svg.push_str("<g class=\"axis\" stroke=\"#000000\" stroke-width=\"1\" fill=\"none\">");
        svg.push_str(&format!(
            "<path d=\"M{x} {} L{x} {b} L{} {b}\"/>",
            fmt_num(axis.top),
            fmt_num(right),
            x = fmt_num(axis.x),
            b = fmt_num(axis.bottom)
        ));
        for (_, y) in &axis.ticks {
            svg.push_str(&format!("<path d=\"M{} {y} L{} {y}\"/>", fmt_num(axis.x - 4.0), fmt_num(axis.x), y = fmt_num(*y)));
        }
        svg.push_str("</g><g class=\"tick-labels\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">");
        for (v, y) in &axis.ticks {
            svg.push_str(&format!("<text x=\"{}\" y=\"{}\">{}</text>", fmt_num(axis.x - 6.0), fmt_num(y + 3.5), fmt_num(*v)));
        }
        svg.push_str("</g>");
    }
    if !layout.labels.is_empty() {
        svg.push_str("<g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\">");
        for l in &layout.labels {
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"{}\">{}</text>",
                fmt_num(l.at.x),
                fmt_num(l.at.y),
                l.anchor,
                xml_escape(&l.text)
            ));
        }
        svg.push_str("</g>");
    }
    if let Some(legend) = &layout.legend {
        svg.push_str(&render_legend_at(&chart.categories, legend));
    }
    if let Some(sel) = options.selected.filter(|&s| s < chart.categories.len()) {
        let at = layout.marks[sel].shapes.first().map(|s| s.anchor()).or_else(|| {
            layout.legend.as_ref().map(|l| {
                let e = &l.entries[sel];
                crate::geom::Point::new(e.x + e.size / 2.0, e.y + e.size / 2.0)
            })
        });
        if let Some(p) = at {
            svg.push_str(&format!(
                "<circle class=\"selection\" cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{SELECTION_COLOR}\" stroke=\"#ffffff\" stroke-width=\"1.5\"/>",
                fmt_num(p.x),
                fmt_num(p.y)
            ));
        }
    }
    svg.push_str("</svg>");
    Ok(RenderedChart { svg, warnings, layout })
}
