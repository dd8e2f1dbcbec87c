use crate::error::{CoreError, Result};
use crate::geom::{centroid, signed_area, Point, Shape};
use crate::svg::fmt_num;

use super::{ChartKind, ChartRenderer, ChartSpec, Label, Mark, MarkLayout, PlotArea};

/// Region map: every category owns one region, scaled uniformly into the
/// plot area and labelled with its value.
pub struct MapRenderer;

impl ChartRenderer for MapRenderer {
    fn kind(&self) -> ChartKind {
        ChartKind::Map
    }

    fn layout_marks(&self, chart: &ChartSpec, values: &[f64], plot: PlotArea) -> Result<MarkLayout> {
        let map = chart.map_regions.as_ref().ok_or_else(|| CoreError::MissingRegions("no region map".into()))?;
        let all: Vec<Point> = map.regions.iter().flat_map(|r| r.rings()).flatten().collect();
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in &all {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        let inset = chart.outline_width / 2.0;
        let scale = ((plot.width - 2.0 * inset) / (x1 - x0)).min((plot.height - 2.0 * inset) / (y1 - y0));
        if !(scale.is_finite() && scale > 0.0) {
            return Err(CoreError::MissingRegions("region map has no extent".into()));
        }
        let ox = plot.x + (plot.width - (x1 - x0) * scale) / 2.0;
        let oy = plot.y + (plot.height - (y1 - y0) * scale) / 2.0;
        let place = |p: Point| Point::new(ox + (p.x - x0) * scale, oy + (p.y - y0) * scale);

        let mut marks = Vec::with_capacity(values.len());
        let mut labels = Vec::with_capacity(values.len());
        for (i, c) in chart.categories.iter().enumerate() {
            let region = map.regions.iter().find(|r| r.category == c.name).expect("validated");
            let rings: Vec<Vec<Point>> = region.rings().into_iter().map(|r| r.into_iter().map(place).collect()).collect();
            let largest = rings
                .iter()
                .max_by(|a, b| signed_area(a).abs().total_cmp(&signed_area(b).abs()))
                .expect("validated");
            labels.push(Label { at: centroid(largest), text: fmt_num(values[i]), anchor: "middle" });
            let shapes = rings.into_iter().map(|points| Shape::Polygon { points }).collect();
            marks.push(Mark { category: i, value: values[i], shapes });
        }
        Ok(MarkLayout { marks, axis: None, labels })
    }
}
