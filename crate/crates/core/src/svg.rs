//! Small helpers for writing stable SVG text.

use crate::geom::{point_on_circle, Shape};

fn fmt_with(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Coordinates: four decimals, trailing zeros trimmed.
pub fn fmt_num(v: f64) -> String {
    fmt_with(v, 4)
}

/// Transform coefficients: six decimals, trailing zeros trimmed.
pub fn fmt_fine(v: f64) -> String {
    fmt_with(v, 6)
}

pub fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Path data for a mark outline.
pub fn shape_path(shape: &Shape) -> String {
    match shape {
        Shape::Polygon { points } => {
            let mut d = String::new();
            for (i, p) in points.iter().enumerate() {
                d.push_str(if i == 0 { "M" } else { " L" });
                d.push_str(&format!("{} {}", fmt_num(p.x), fmt_num(p.y)));
            }
            d.push_str(" Z");
            d
        }
        Shape::Sector { center, radius, start_deg, sweep_deg } => {
            let r = fmt_num(*radius);
            if *sweep_deg >= 360.0 - 1e-9 {
                let top = point_on_circle(*center, *radius, 0.0);
                let bottom = point_on_circle(*center, *radius, 180.0);
                return format!(
                    "M{} {} A{r} {r} 0 1 1 {} {} A{r} {r} 0 1 1 {} {} Z",
                    fmt_num(top.x),
                    fmt_num(top.y),
                    fmt_num(bottom.x),
                    fmt_num(bottom.y),
                    fmt_num(top.x),
                    fmt_num(top.y)
                );
            }
            let a = point_on_circle(*center, *radius, *start_deg);
            let b = point_on_circle(*center, *radius, start_deg + sweep_deg);
            let large = if *sweep_deg > 180.0 { 1 } else { 0 };
            format!(
                "M{} {} L{} {} A{r} {r} 0 {large} 1 {} {} Z",
                fmt_num(center.x),
                fmt_num(center.y),
                fmt_num(a.x),
                fmt_num(a.y),
                fmt_num(b.x),
                fmt_num(b.y)
            )
        }
    }
}
