use crate::error::Result;
use crate::geom::{Point, Shape};

use super::{ChartKind, ChartRenderer, ChartSpec, Label, Mark, MarkLayout, PlotArea, ValueAxis};

/// Gap between bars as a fraction of the bar width.
pub const BAR_GAP_RATIO: f64 = 0.4;
const AXIS_GUTTER: f64 = 36.0;
const LABEL_GUTTER: f64 = 24.0;
const TICK_STEP: f64 = 10.0;

/// Top of the value axis: at least 100, otherwise the maximum rounded up
/// to the next tick.
pub fn scale_max(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(0.0, f64::max);
    ((max / TICK_STEP).ceil() * TICK_STEP).max(100.0)
}

/// Vertical bars on a linear value axis starting at zero.
pub struct BarRenderer;

impl ChartRenderer for BarRenderer {
    fn kind(&self) -> ChartKind {
        ChartKind::Bar
    }

    fn layout_marks(&self, chart: &ChartSpec, values: &[f64], plot: PlotArea) -> Result<MarkLayout> {
        let n = values.len() as f64;
        let left = plot.x + AXIS_GUTTER;
        let width = plot.width - AXIS_GUTTER;
        let top = plot.y;
        let bottom = plot.y + plot.height - LABEL_GUTTER;
        let bar_w = width / (n * (1.0 + BAR_GAP_RATIO) + BAR_GAP_RATIO);
        let gap = bar_w * BAR_GAP_RATIO;
        let max = scale_max(values);
        let per_unit = (bottom - top) / max;

        let mut marks = Vec::with_capacity(values.len());
        let mut labels = Vec::with_capacity(values.len());
        for (i, &v) in values.iter().enumerate() {
            let x = left + gap + i as f64 * (bar_w + gap);
            let h = v * per_unit;
            let shapes = if h > 0.0 { vec![Shape::rect(x, bottom - h, bar_w, h)] } else { Vec::new() };
            marks.push(Mark { category: i, value: v, shapes });
            labels.push(Label {
                at: Point::new(x + bar_w / 2.0, bottom + 16.0),
                text: chart.categories[i].name.clone(),
                anchor: "middle",
            });
        }
        let steps = (max / TICK_STEP).round() as usize;
        let ticks = (0..=steps).map(|k| (k as f64 * TICK_STEP, bottom - k as f64 * TICK_STEP * per_unit)).collect();
        let axis = ValueAxis { x: left, top, bottom, max_value: max, ticks };
        Ok(MarkLayout { marks, axis: Some(axis), labels })
    }
}
