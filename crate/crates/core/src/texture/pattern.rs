use std::fmt::Write;

use super::{TileElement, TileGeometry};
use crate::svg::{fmt_fine, fmt_num, xml_escape};

/// Serializes a tile as an SVG `<pattern>` anchored at the user-space
/// origin. Output is byte-stable for identical input.
pub fn emit_pattern(tile: &TileGeometry, pattern_id: &str) -> String {
    let (w, h) = (fmt_num(tile.cell_width), fmt_num(tile.cell_height));
    let mut out = String::new();
    let _ = write!(
        out,
        r#"<pattern id="{}" patternUnits="userSpaceOnUse" x="0" y="0" width="{w}" height="{h}""#,
        xml_escape(pattern_id)
    );
    if !tile.transform.is_identity() {
        let t = tile.transform;
        let _ = write!(
            out,
            r#" patternTransform="matrix({} {} {} {} {} {})""#,
            fmt_fine(t.a),
            fmt_fine(t.b),
            fmt_fine(t.c),
            fmt_fine(t.d),
            fmt_fine(t.e),
            fmt_fine(t.f)
        );
    }
    let _ = write!(out, r#"><rect x="0" y="0" width="{w}" height="{h}" fill="{}"/>"#, tile.background.hex());
    if !tile.elements.is_empty() {
        let _ = write!(out, r#"<g fill="{}">"#, tile.background.ink_hex());
        for e in &tile.elements {
            write_element(&mut out, e, tile.background.ink_hex());
        }
        out.push_str("</g>");
    }
    out.push_str("</pattern>");
    out
}

fn write_element(out: &mut String, e: &TileElement, ink: &str) {
    let _ = match e {
        TileElement::Rect { x, y, width, height } => write!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
            fmt_num(*x),
            fmt_num(*y),
            fmt_num(*width),
            fmt_num(*height)
        ),
        TileElement::Disc { cx, cy, radius } => {
            write!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, fmt_num(*cx), fmt_num(*cy), fmt_num(*radius))
        }
        TileElement::Ring { cx, cy, outer, inner } => write!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{ink}" stroke-width="{}"/>"#,
            fmt_num(*cx),
            fmt_num(*cy),
            fmt_num((outer + inner) / 2.0),
            fmt_num(outer - inner)
        ),
        TileElement::Icon { glyph, cx, cy, size, rotation_deg } => write!(
            out,
            r#"<path transform="translate({} {}) rotate({}) scale({}) translate(-0.5 -0.5)" d="{}"/>"#,
            fmt_num(*cx),
            fmt_num(*cy),
            fmt_num(*rotation_deg),
            fmt_num(*size),
            glyph.outline_path
        ),
    };
}
