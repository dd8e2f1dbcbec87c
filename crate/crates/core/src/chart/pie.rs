use crate::error::{CoreError, Result};
use crate::geom::{Point, Shape};

use super::{ChartKind, ChartRenderer, ChartSpec, Mark, MarkLayout, PlotArea};

const RIM: f64 = 8.0;

/// Sectors starting at 12 o'clock and running clockwise in category order.
pub struct PieRenderer;

impl ChartRenderer for PieRenderer {
    fn kind(&self) -> ChartKind {
        ChartKind::Pie
    }

    fn layout_marks(&self, chart: &ChartSpec, values: &[f64], plot: PlotArea) -> Result<MarkLayout> {
        let total: f64 = values.iter().sum();
        if total <= 0.0 {
            return Err(CoreError::EmptyPie);
        }
        let center = Point::new(plot.x + plot.width / 2.0, plot.y + plot.height / 2.0);
        let radius = plot.width.min(plot.height) / 2.0 - RIM - chart.outline_width / 2.0;
        if radius <= 0.0 {
            return Err(CoreError::InvalidChart("canvas too small for the pie".into()));
        }
        let mut acc = 0.0;
        let mut marks = Vec::with_capacity(values.len());
        for (i, &v) in values.iter().enumerate() {
            let start_deg = acc / total * 360.0;
            acc += v;
            let sweep_deg = v / total * 360.0;
            let shapes = if v > 0.0 { vec![Shape::Sector { center, radius, start_deg, sweep_deg }] } else { Vec::new() };
            marks.push(Mark { category: i, value: v, shapes });
        }
        Ok(MarkLayout { marks, axis: None, labels: Vec::new() })
    }
}
