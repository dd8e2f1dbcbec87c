use bwtex_core::chart::{pattern_id, render_chart_with, Region, RenderOptions};
use bwtex_core::geom::{boundary_distance, contains, Point, Shape};
use bwtex_core::presets::AssetLibrary;
use bwtex_core::raster::{render_svg, Raster};
use bwtex_core::{
    emit_pattern, build_tile, layout_chart, Background, Category, ChartKind, ChartSpec, Dataset, FillStyle,
    LegendPlacement, PrimitiveKind, RegionMap, TextureSpec,
};
use proptest::prelude::*;

const PPU: f32 = 4.0;

fn solid_black() -> FillStyle {
    FillStyle::Texture { spec: TextureSpec::new(PrimitiveKind::Plain, 10.0, 1.0).with_background(Background::Black) }
}

fn chart(kind: ChartKind, n: usize, fill: impl Fn(usize) -> FillStyle) -> ChartSpec {
    ChartSpec {
        kind,
        categories: (0..n).map(|i| Category { name: format!("c{i}"), glyph_id: "carrot".into(), fill: fill(i) }).collect(),
        outline_width: 1.0,
        halo_width: 0.0,
        legend: LegendPlacement::None,
        map_regions: None,
        canvas: [400, 300],
    }
}

fn data(values: &[f64]) -> Dataset {
    Dataset::new(values.iter().enumerate().map(|(i, v)| (format!("c{i}"), *v)))
}

fn bar_height(shape: &Shape) -> f64 {
    let Shape::Polygon { points } = shape else { panic!("bar is a polygon") };
    let ys = points.iter().map(|p| p.y);
    ys.clone().fold(f64::MIN, f64::max) - ys.fold(f64::MAX, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn marks_are_proportional_to_values(values in prop::collection::vec(0.5f64..100.0, 2..9)) {
        let d = data(&values);
        let bars = layout_chart(&chart(ChartKind::Bar, values.len(), |_| solid_black()), &d).unwrap();
        let mut pie = chart(ChartKind::Pie, values.len(), |_| solid_black());
        pie.halo_width = 2.0;
        let pie = layout_chart(&pie, &d).unwrap();
        let total: f64 = values.iter().sum();
        let h0 = bar_height(&bars.marks[0].shapes[0]);
        let mut clock = 0.0;
        for (i, v) in values.iter().enumerate() {
            let h = bar_height(&bars.marks[i].shapes[0]);
            prop_assert!(((h / h0) / (v / values[0]) - 1.0).abs() < 1e-6);
            let Shape::Sector { start_deg, sweep_deg, .. } = pie.marks[i].shapes[0] else { panic!("pie sector") };
            prop_assert!((sweep_deg / 360.0 / (v / total) - 1.0).abs() < 1e-6);
            prop_assert!((start_deg - clock).abs() < 1e-6);
            clock += sweep_deg;
        }
        prop_assert!((clock - 360.0).abs() < 1e-6);
    }
}

#[test]
fn bar_twice_the_value_is_twice_as_tall() {
    let l = layout_chart(&chart(ChartKind::Bar, 2, |_| solid_black()), &data(&[10.0, 20.0])).unwrap();
    let (a, b) = (bar_height(&l.marks[0].shapes[0]), bar_height(&l.marks[1].shapes[0]));
    assert!((b / a - 2.0).abs() < 1e-12);
}

#[test]
fn equal_pie_starts_at_noon_and_runs_clockwise() {
    let l = layout_chart(&chart(ChartKind::Pie, 7, |_| solid_black()), &data(&[3.0; 7])).unwrap();
    for (i, m) in l.marks.iter().enumerate() {
        let Shape::Sector { start_deg, sweep_deg, .. } = m.shapes[0] else { panic!() };
        assert!((sweep_deg - 360.0 / 7.0).abs() < 1e-9);
        assert!((start_deg - i as f64 * 360.0 / 7.0).abs() < 1e-9);
    }
    // clockwise from 12 o'clock: the first slice's anchor is right of center, above it
    let Shape::Sector { center, .. } = l.marks[0].shapes[0] else { panic!() };
    let a = l.marks[0].shapes[0].anchor();
    assert!(a.x > center.x && a.y < center.y);
}

fn dark(r: &Raster, x: usize, y: usize) -> bool {
    r.luma(x, y) < 127.5
}

/// Lengths of the alternating dark/light runs along a pixel row.
fn runs(r: &Raster, y: usize, x0: usize, x1: usize) -> Vec<(bool, usize)> {
    let mut out: Vec<(bool, usize)> = Vec::new();
    for x in x0..x1 {
        let d = dark(r, x, y);
        match out.last_mut() {
            Some((v, n)) if *v == d => *n += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

fn close(got: usize, units: f64) -> bool {
    (got as f64 - units * PPU as f64).abs() <= 1.0
}

#[test]
fn slice_borders_show_texture_halo_outline_halo_texture() {
    for halo in [1.0, 3.0, 5.0] {
        for outline in [1.0, 2.0] {
            let mut spec = chart(ChartKind::Pie, 5, |_| solid_black());
            spec.halo_width = halo;
            spec.outline_width = outline;
            let d = data(&[30.0, 10.0, 20.0, 25.0, 15.0]);
            let layout = layout_chart(&spec, &d).unwrap();
            let Shape::Sector { center, radius, .. } = layout.marks[0].shapes[0] else { panic!() };
            let svg = render_chart_with(&spec, &d, &RenderOptions::default()).unwrap().svg;
            let r = render_svg(&svg, PPU).unwrap();
            // the first border is the vertical radius at 12 o'clock
            let y = ((center.y - radius / 2.0) * PPU as f64) as usize;
            let cx = center.x * PPU as f64;
            let span = (halo + outline + 10.0) * PPU as f64;
            let seq = runs(&r, y, (cx - span) as usize, (cx + span) as usize);
            let shape: Vec<bool> = seq.iter().map(|(d, _)| *d).collect();
            assert_eq!(shape, vec![true, false, true, false, true], "halo {halo} outline {outline}: {seq:?}");
            assert!(close(seq[1].1, halo), "halo {halo} outline {outline}: {seq:?}");
            assert!(close(seq[2].1, outline), "halo {halo} outline {outline}: {seq:?}");
            assert!(close(seq[3].1, halo), "halo {halo} outline {outline}: {seq:?}");

            // across the rim at 3 o'clock: texture, halo, outline, background
            let y = (center.y * PPU as f64) as usize;
            let x0 = ((center.x + radius - halo - outline - 10.0) * PPU as f64) as usize;
            let seq = runs(&r, y, x0, x0 + ((halo + outline + 20.0) * PPU as f64) as usize);
            let shape: Vec<bool> = seq.iter().map(|(d, _)| *d).collect();
            assert_eq!(shape, vec![true, false, true, false], "rim, halo {halo} outline {outline}: {seq:?}");
            assert!(close(seq[1].1, halo) && close(seq[2].1, outline), "rim: {seq:?}");
        }
    }
}

/// A single 100-unit square region placed at (13, 13) on a 126-unit canvas.
fn square_map(halo: f64, outline: f64) -> ChartSpec {
    let mut spec = chart(ChartKind::Map, 1, |_| solid_black());
    spec.halo_width = halo;
    spec.outline_width = outline;
    spec.canvas = [126, 126];
    spec.map_regions = Some(RegionMap {
        regions: vec![Region {
            category: "c0".into(),
            polygons: vec![vec![[0.0, 0.0], [100.0, 0.0], [100.0, 100.0], [0.0, 100.0]]],
        }],
    });
    spec
}

#[test]
fn halo_five_outline_two_leaves_an_88_unit_square() {
    let spec = square_map(5.0, 2.0);
    let d = data(&[40.0]);
    let layout = layout_chart(&spec, &d).unwrap();
    let Shape::Polygon { points } = &layout.marks[0].shapes[0] else { panic!() };
    assert_eq!(points[0], Point::new(13.0, 13.0));
    assert_eq!(points[2], Point::new(113.0, 113.0));
    let r = render_svg(&render_chart_with(&spec, &d, &RenderOptions::default()).unwrap().svg, PPU).unwrap();
    // rows and columns away from the centered value label
    for line in [30.0, 40.0, 90.0] {
        let at = (line * PPU as f64) as usize;
        let row = runs(&r, at, 0, r.width());
        let col: Vec<(bool, usize)> = {
            let mut out: Vec<(bool, usize)> = Vec::new();
            for y in 0..r.height() {
                let d = dark(&r, at, y);
                match out.last_mut() {
                    Some((v, n)) if *v == d => *n += 1,
                    _ => out.push((d, 1)),
                }
            }
            out
        };
        for seq in [row, col] {
            let shape: Vec<bool> = seq.iter().map(|(d, _)| *d).collect();
            assert_eq!(shape, vec![false, true, false, true, false, true, false], "{seq:?}");
            // outline 2, halo 5, texture 88, halo 5, outline 2
            for (i, units) in [(1, 2.0), (2, 5.0), (3, 88.0), (4, 5.0), (5, 2.0)] {
                assert!(close(seq[i].1, units), "run {i}: {seq:?}");
            }
        }
    }
}

#[test]
fn no_halo_puts_texture_against_the_outline() {
    let spec = square_map(0.0, 2.0);
    let d = data(&[40.0]);
    let r = render_svg(&render_chart_with(&spec, &d, &RenderOptions::default()).unwrap().svg, PPU).unwrap();
    let seq = runs(&r, (30.0 * PPU) as usize, 0, r.width());
    let shape: Vec<bool> = seq.iter().map(|(d, _)| *d).collect();
    assert_eq!(shape, vec![false, true, false], "{seq:?}");
    assert!(close(seq[1].1, 102.0), "{seq:?}");
}

#[test]
fn tiny_regions_fall_back_to_white() {
    let spec = square_map(6.0, 6.0);
    let mut spec = spec;
    spec.canvas = [40, 40];
    let out = render_chart_with(&spec, &data(&[40.0]), &RenderOptions::default()).unwrap();
    assert_eq!(out.warnings.len(), 1);
}

fn reference(spec: &TextureSpec, w: u32, h: u32) -> Raster {
    let svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}"><defs>{}</defs><rect width="{w}" height="{h}" fill="url(#r)"/></svg>"#,
        emit_pattern(&build_tile(spec).unwrap(), "r")
    );
    render_svg(&svg, PPU).unwrap()
}

/// Pixels of the rendered chart inside `rect` (units) that differ from the
/// full-canvas pattern reference.
fn differing(chart: &Raster, reference: &Raster, rect: (f64, f64, f64, f64)) -> (usize, usize) {
    let p = PPU as f64;
    let (x0, y0, x1, y1) = ((rect.0 * p).ceil() as usize, (rect.1 * p).ceil() as usize, (rect.2 * p) as usize, (rect.3 * p) as usize);
    let mut diff = 0;
    for y in y0..y1 {
        for x in x0..x1 {
            if chart.rgba(x, y) != reference.rgba(x, y) {
                diff += 1;
            }
        }
    }
    (diff, (x1 - x0) * (y1 - y0))
}

#[test]
fn textures_are_anchored_to_the_canvas() {
    let lib = AssetLibrary::global();
    for (id, kind) in [("BG2-like", ChartKind::Bar), ("PG1-like", ChartKind::Pie), ("bertin-1", ChartKind::Map)] {
        let mut spec = lib.chart_for(id, kind).unwrap();
        // two categories share one texture
        spec.categories[3].fill = spec.categories[1].fill.clone();
        let d = lib.default_dataset();
        let out = render_chart_with(&spec, d, &RenderOptions::default()).unwrap();
        let raster = render_svg(&out.svg, PPU).unwrap();
        let layout = layout_chart(&spec, d).unwrap();
        let legend = layout.legend.as_ref().unwrap();
        for i in [1, 3, 5] {
            let FillStyle::Texture { spec: tex } = &spec.categories[i].fill else { continue };
            let refr = reference(tex, spec.canvas[0], spec.canvas[1]);
            // legend swatch interior
            let e = &legend.entries[i];
            let (diff, total) = differing(&raster, &refr, (e.x + 1.0, e.y + 1.0, e.x + e.size - 1.0, e.y + e.size - 1.0));
            assert_eq!(diff, 0, "{id}: swatch {i} differs in {diff} of {total} pixels");
            // mark interior, away from halos and outlines
            let inset = spec.halo_width + spec.outline_width + 1.0;
            let probe = interior_box(&layout.marks[i].shapes[0], inset);
            if let Some(b) = probe {
                let (diff, total) = differing(&raster, &refr, b);
                assert_eq!(diff, 0, "{id}: mark {i} differs in {diff} of {total} pixels");
            }
        }
        // shared pattern ids between marks and legend
        assert!(out.svg.matches(&format!("url(#{})", pattern_id(1))).count() >= 2);
    }
}

/// A small box well inside a shape, skipping the label at its anchor.
fn interior_box(shape: &Shape, inset: f64) -> Option<(f64, f64, f64, f64)> {
    let a = shape.anchor();
    for (dx, dy) in [(0.0, -18.0), (0.0, 18.0), (-18.0, 0.0), (18.0, 0.0)] {
        let c = Point::new(a.x + dx, a.y + dy);
        let b = (c.x - 4.0, c.y - 4.0, c.x + 4.0, c.y + 4.0);
        let corners = [Point::new(b.0, b.1), Point::new(b.2, b.1), Point::new(b.0, b.3), Point::new(b.2, b.3)];
        if corners.iter().all(|p| inside(shape, *p, inset)) {
            return Some(b);
        }
    }
    None
}

fn inside(shape: &Shape, p: Point, margin: f64) -> bool {
    match shape {
        Shape::Polygon { points } => contains(points, p) && boundary_distance(points, p) >= margin,
        Shape::Sector { center, radius, start_deg, sweep_deg } => {
            let d = p.dist(*center);
            let clock = (p.x - center.x).atan2(center.y - p.y).to_degrees().rem_euclid(360.0);
            let rel = (clock - start_deg).rem_euclid(360.0);
            let edge = |deg: f64| {
                let t = (start_deg + deg).to_radians();
                ((p.x - center.x) * t.cos() + (p.y - center.y) * t.sin()).abs()
            };
            d <= radius - margin && rel <= *sweep_deg && edge(0.0) >= margin && edge(*sweep_deg) >= margin
        }
    }
}

/// Whether `p` is inside or within `slack` of a shape.
fn near(shape: &Shape, p: Point, slack: f64) -> bool {
    match shape {
        Shape::Polygon { points } => contains(points, p) || boundary_distance(points, p) <= slack,
        Shape::Sector { center, radius, .. } => p.dist(*center) <= radius + slack,
    }
}

#[test]
fn no_ink_outside_marks_outlines_legend_and_labels() {
    let lib = AssetLibrary::global();
    for id in lib.preset_ids() {
        for kind in [ChartKind::Bar, ChartKind::Pie, ChartKind::Map] {
            let spec = lib.chart_for(id, kind).unwrap();
            let d = lib.default_dataset();
            let layout = layout_chart(&spec, d).unwrap();
            let raster = render_svg(&render_chart_with(&spec, d, &RenderOptions::default()).unwrap().svg, 2.0).unwrap();
            let slack = spec.outline_width / 2.0 + 1.0;
            let mut boxes: Vec<(f64, f64, f64, f64)> = Vec::new();
            for l in &layout.labels {
                let w = l.text.len() as f64 * 7.0;
                boxes.push((l.at.x - w, l.at.y - 12.0, l.at.x + w, l.at.y + 5.0));
            }
            if let Some(axis) = &layout.axis {
                boxes.push((axis.x - 40.0, axis.top - 10.0, axis.x + 2.0, axis.bottom + 10.0));
                boxes.push((axis.x - 2.0, axis.bottom - 2.0, layout.plot.x + layout.plot.width + 2.0, axis.bottom + 2.0));
            }
            if let Some(legend) = &layout.legend {
                for e in &legend.entries {
                    boxes.push((e.x - 1.0, e.y - 1.0, e.x + e.size + 1.0, e.y + e.size + 1.0));
                    let name = &spec.categories[e.category].name;
                    let w = name.len() as f64 * 8.0;
                    boxes.push((e.label_at.x - 2.0, e.label_at.y - 14.0, e.label_at.x + w, e.label_at.y + 5.0));
                }
            }
            let mut stray = Vec::new();
            for y in 0..raster.height() {
                for x in 0..raster.width() {
                    if raster.luma(x, y) > 200.0 {
                        continue;
                    }
                    let p = Point::new((x as f64 + 0.5) / 2.0, (y as f64 + 0.5) / 2.0);
                    let in_mark = layout.marks.iter().flat_map(|m| &m.shapes).any(|s| near(s, p, slack));
                    let in_box = boxes.iter().any(|b| p.x >= b.0 && p.x <= b.2 && p.y >= b.1 && p.y <= b.3);
                    if !in_mark && !in_box {
                        stray.push((x, y));
                    }
                }
            }
            assert!(stray.is_empty(), "{id} {kind:?}: {} stray ink pixels, first {:?}", stray.len(), &stray[..stray.len().min(5)]);
        }
    }
}

#[test]
fn rendering_is_deterministic() {
    let lib = AssetLibrary::global();
    let spec = lib.chart_for("PI1-like", ChartKind::Pie).unwrap();
    let a = render_chart_with(&spec, lib.default_dataset(), &RenderOptions { selected: Some(2) }).unwrap();
    let b = render_chart_with(&spec, lib.default_dataset(), &RenderOptions { selected: Some(2) }).unwrap();
    assert_eq!(a.svg, b.svg);
}
