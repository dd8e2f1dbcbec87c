//! Undoable edit sessions over a chart and its dataset.
//!
//! Every applied action is stored with the inverse that restores the state
//! it replaced. Undo applies the inverse; redo applies the action again.

use std::collections::VecDeque;

use bwtex_core::chart::{render_chart_with, ChartWarning, RenderOptions};
use bwtex_core::glyph::{IconDetail, IconStyle, IconWeight};
use bwtex_core::presets::AssetLibrary;
use bwtex_core::texture::BuildOptions;
use bwtex_core::{
    swap_parameters, Background, ChartKind, ChartSpec, CoreError, Dataset, FillStyle, GlyphRegistry, PrimitiveKind,
    TextureSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const HISTORY_LIMIT: usize = 256;
pub const ORIENTATION_STEP_DEG: f64 = 45.0;
pub const DENSITY_RANGE: (f64, f64) = (1.0, 30.0);
pub const SIZE_RANGE: (f64, f64) = (0.25, 20.0);
pub const WIDTH_RANGE: (f64, f64) = (0.0, 6.0);
pub const RANDOM_VALUES: (u32, u32) = (5, 95);

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("invalid property: {0}")]
    InvalidProperty(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("nothing to {0}")]
    NothingTo(&'static str),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T, E = SessionError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionState {
    pub preset_id: String,
    pub chart: ChartSpec,
    pub data: Dataset,
    pub selected: Option<String>,
}

impl SessionState {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("session state serializes")
    }

    fn selected_index(&self) -> Option<usize> {
        self.selected.as_deref().and_then(|s| self.chart.category_index(s))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EditAction {
    /// `None` clears the selection.
    SelectCategory {
        category: Option<String>,
    },
    SetProperty {
        path: String,
        value: Value,
        #[serde(default)]
        for_all: bool,
    },
    SwapTextures {
        a: String,
        b: String,
    },
    LoadPreset {
        id: String,
    },
    RandomDataset {
        seed: u64,
    },
    /// Back to the state the session was created with.
    Reset {},
}

#[derive(Debug, Clone, PartialEq)]
enum Inverse {
    Selection(Option<String>),
    Fills(Vec<(usize, FillStyle)>),
    ChartWidths { outline_width: f64, halo_width: f64 },
    Chart { preset_id: String, chart: ChartSpec, selected: Option<String> },
    Data(Dataset),
    All(SessionState),
}

#[derive(Debug, Clone)]
pub struct EditSession {
    initial: SessionState,
    state: SessionState,
    history: VecDeque<(EditAction, Inverse)>,
    redo: Vec<EditAction>,
}

fn number(path: &str, v: &Value) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| SessionError::InvalidProperty(format!("{path} expects a number, got {v}")))
}

fn in_range(path: &str, v: f64, (lo, hi): (f64, f64)) -> Result<f64> {
    if (lo..=hi).contains(&v) {
        Ok(v)
    } else {
        Err(SessionError::InvalidProperty(format!("{path} = {v} outside [{lo}, {hi}]")))
    }
}

fn same_kind(a: &PrimitiveKind, b: &PrimitiveKind) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

impl EditSession {
    pub fn new(initial: SessionState) -> Self {
        Self { state: initial.clone(), initial, history: VecDeque::new(), redo: Vec::new() }
    }

    /// Session on a shipped set or template with the default dataset.
    pub fn from_preset(lib: &AssetLibrary, preset_id: &str, kind: ChartKind) -> Result<Self> {
        let chart = lib.chart_for(preset_id, kind).map_err(|e| match e {
            CoreError::UnknownPreset(id) => SessionError::UnknownPreset(id),
            other => SessionError::Core(other),
        })?;
        Ok(Self::new(SessionState {
            preset_id: preset_id.to_string(),
            chart,
            data: lib.default_dataset().clone(),
            selected: None,
        }))
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    pub fn initial(&self) -> &SessionState {
        &self.initial
    }

    pub fn history_len(&self) -> usize {
        self.history.len()
    }

    pub fn redo_len(&self) -> usize {
        self.redo.len()
    }

    pub fn history(&self) -> impl Iterator<Item = &EditAction> {
        self.history.iter().map(|(a, _)| a)
    }

    pub fn apply(&mut self, action: EditAction) -> Result<()> {
        self.execute(action)?;
        self.redo.clear();
        Ok(())
    }

    pub fn undo(&mut self) -> Result<()> {
        let (action, inverse) = self.history.pop_back().ok_or(SessionError::NothingTo("undo"))?;
        self.restore(inverse);
        self.redo.push(action);
        Ok(())
    }

    pub fn redo(&mut self) -> Result<()> {
        let action = self.redo.pop().ok_or(SessionError::NothingTo("redo"))?;
        if let Err(e) = self.execute(action.clone()) {
            self.redo.push(action);
            return Err(e);
        }
        Ok(())
    }

    pub fn render(&self) -> Result<(String, Vec<ChartWarning>)> {
        let options = RenderOptions { selected: self.state.selected_index() };
        let out = render_chart_with(&self.state.chart, &self.state.data, &options)?;
        Ok((out.svg, out.warnings))
    }

    fn execute(&mut self, action: EditAction) -> Result<()> {
        let mut next = self.state.clone();
        let inverse = transition(&mut next, &self.initial, &action)?;
        next.chart.validate(GlyphRegistry::global())?;
        next.data.ordered_for(&next.chart)?;
        self.state = next;
        self.history.push_back((action, inverse));
        if self.history.len() > HISTORY_LIMIT {
            self.history.pop_front();
        }
        Ok(())
    }

    fn restore(&mut self, inverse: Inverse) {
        let s = &mut self.state;
        match inverse {
            Inverse::Selection(sel) => s.selected = sel,
            Inverse::Fills(fills) => {
                for (i, f) in fills {
                    s.chart.categories[i].fill = f;
                }
            }
            Inverse::ChartWidths { outline_width, halo_width } => {
                s.chart.outline_width = outline_width;
                s.chart.halo_width = halo_width;
            }
            Inverse::Chart { preset_id, chart, selected } => {
                s.preset_id = preset_id;
                s.chart = chart;
                s.selected = selected;
            }
            Inverse::Data(d) => s.data = d,
            Inverse::All(state) => *s = state,
        }
    }
}

fn transition(s: &mut SessionState, initial: &SessionState, action: &EditAction) -> Result<Inverse> {
    match action {
        EditAction::SelectCategory { category } => {
            if let Some(c) = category {
                s.chart.category_index(c).ok_or_else(|| SessionError::UnknownCategory(c.clone()))?;
            }
            Ok(Inverse::Selection(std::mem::replace(&mut s.selected, category.clone())))
        }
        EditAction::SetProperty { path, value, for_all } => set_property(s, path, value, *for_all),
        EditAction::SwapTextures { a, b } => {
            let ia = s.chart.category_index(a).ok_or_else(|| SessionError::UnknownCategory(a.clone()))?;
            let ib = s.chart.category_index(b).ok_or_else(|| SessionError::UnknownCategory(b.clone()))?;
            let cats = &mut s.chart.categories;
            let before = vec![(ia, cats[ia].fill.clone()), (ib, cats[ib].fill.clone())];
            let (fa, fb) = match (&cats[ia].fill, &cats[ib].fill) {
                (FillStyle::Texture { spec: x }, FillStyle::Texture { spec: y }) => {
                    let (x2, y2) = swap_parameters(x, y);
                    (FillStyle::Texture { spec: x2 }, FillStyle::Texture { spec: y2 })
                }
                (x, y) => (y.clone(), x.clone()),
            };
            cats[ia].fill = fa;
            cats[ib].fill = fb;
            for i in [ia, ib] {
                let glyph = cats[i].glyph_id.clone();
                if let Some(TextureSpec { primitive: PrimitiveKind::Icon { glyph_id, .. }, .. }) = cats[i].fill.texture_mut() {
                    *glyph_id = glyph;
                }
            }
            Ok(Inverse::Fills(before))
        }
        EditAction::LoadPreset { id } => {
            let chart = AssetLibrary::global().chart_for(id, s.chart.kind).map_err(|e| match e {
                CoreError::UnknownPreset(id) => SessionError::UnknownPreset(id),
                other => SessionError::Core(other),
            })?;
            let inverse = Inverse::Chart {
                preset_id: std::mem::replace(&mut s.preset_id, id.clone()),
                chart: std::mem::replace(&mut s.chart, chart),
                selected: s.selected.take(),
            };
            Ok(inverse)
        }
        EditAction::RandomDataset { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let values = s
                .chart
                .categories
                .iter()
                .map(|c| (c.name.clone(), rng.gen_range(RANDOM_VALUES.0..=RANDOM_VALUES.1) as f64))
                .collect();
            Ok(Inverse::Data(std::mem::replace(&mut s.data, Dataset { values })))
        }
        EditAction::Reset {} => Ok(Inverse::All(std::mem::replace(s, initial.clone()))),
    }
}

fn set_property(s: &mut SessionState, path: &str, value: &Value, for_all: bool) -> Result<Inverse> {
    match path {
        "outline_width" | "halo_width" => {
            let v = in_range(path, number(path, value)?, WIDTH_RANGE)?;
            let inverse = Inverse::ChartWidths { outline_width: s.chart.outline_width, halo_width: s.chart.halo_width };
            if path == "outline_width" {
                s.chart.outline_width = v;
            } else {
                if s.chart.kind == ChartKind::Bar && v != 0.0 {
                    return Err(SessionError::InvalidProperty("bar charts take no halo".into()));
                }
                s.chart.halo_width = v;
            }
            return Ok(inverse);
        }
        _ => {}
    }

    let sel = s
        .selected_index()
        .ok_or_else(|| SessionError::InvalidProperty(format!("{path}: select a category first")))?;
    let sel_kind = match &s.chart.categories[sel].fill {
        FillStyle::Texture { spec } => spec.primitive.clone(),
        FillStyle::Unicolor { .. } => {
            return Err(SessionError::InvalidProperty(format!("{path}: the selected category has no texture")));
        }
    };
    let targets: Vec<usize> = if for_all {
        s.chart
            .categories
            .iter()
            .enumerate()
            .filter(|(_, c)| c.fill.texture().is_some_and(|t| same_kind(&t.primitive, &sel_kind)))
            .map(|(i, _)| i)
            .collect()
    } else {
        vec![sel]
    };
    let before: Vec<(usize, FillStyle)> = targets.iter().map(|&i| (i, s.chart.categories[i].fill.clone())).collect();
    for &i in &targets {
        let glyph = s.chart.categories[i].glyph_id.clone();
        let spec = s.chart.categories[i].fill.texture_mut().expect("texture target");
        set_texture_field(spec, path, value, &glyph)?;
        spec.validate(&BuildOptions::default())?;
    }
    Ok(Inverse::Fills(before))
}

fn set_texture_field(spec: &mut TextureSpec, path: &str, value: &Value, glyph: &str) -> Result<()> {
    let bad = |msg: String| Err(SessionError::InvalidProperty(msg));
    match path {
        "density" => spec.density = in_range(path, number(path, value)?, DENSITY_RANGE)?,
        "size" => spec.size = in_range(path, number(path, value)?, SIZE_RANGE)?,
        "orientation" => spec.orientation_deg = number(path, value)?.rem_euclid(360.0),
        "orientation_step" => {
            let steps = number(path, value)?;
            if steps.fract() != 0.0 {
                return bad(format!("orientation_step expects whole steps, got {steps}"));
            }
            let turned = spec.orientation_deg + steps * ORIENTATION_STEP_DEG;
            spec.orientation_deg = ((turned / ORIENTATION_STEP_DEG).round() * ORIENTATION_STEP_DEG).rem_euclid(360.0);
        }
        "primitive_rotation" => spec.primitive_rotation_deg = number(path, value)?.rem_euclid(360.0),
        "randomness" => spec.randomness = in_range(path, number(path, value)?, (0.0, 1.0))?,
        "phase" => {
            let p: [f64; 2] = serde_json::from_value(value.clone())
                .map_err(|_| SessionError::InvalidProperty(format!("phase expects [dx, dy], got {value}")))?;
            spec.phase = p;
        }
        "background" => {
            spec.background = serde_json::from_value::<Background>(value.clone())
                .map_err(|_| SessionError::InvalidProperty(format!("background expects white or black, got {value}")))?;
        }
        "crossing_angle" => match &mut spec.primitive {
            PrimitiveKind::Grid { crossing_angle_deg } => *crossing_angle_deg = number(path, value)?,
            _ => return bad("crossing_angle applies to grids".into()),
        },
        "dot_filled" => match (&mut spec.primitive, value.as_bool()) {
            (PrimitiveKind::Dot { filled }, Some(v)) => *filled = v,
            _ => return bad("dot_filled expects a boolean on a dot texture".into()),
        },
        "icon_style" => {
            let style: IconStyle = serde_json::from_value(value.clone())
                .map_err(|_| SessionError::InvalidProperty(format!("icon_style expects {{detail, weight}}, got {value}")))?;
            match &mut spec.primitive {
                PrimitiveKind::Icon { style: s, .. } => *s = style,
                _ => return bad("icon_style applies to icon textures".into()),
            }
        }
        "primitive" => {
            let name = value.as_str().unwrap_or_default();
            spec.primitive = match name {
                "plain" => PrimitiveKind::Plain,
                "dot" => PrimitiveKind::Dot { filled: true },
                "line" => PrimitiveKind::Line,
                "grid" => PrimitiveKind::Grid { crossing_angle_deg: 90.0 },
                "icon" => PrimitiveKind::Icon {
                    glyph_id: glyph.to_string(),
                    style: IconStyle { detail: IconDetail::Detailed, weight: IconWeight::Outline },
                },
                _ => return bad(format!("unknown primitive {value}")),
            };
        }
        other => return bad(format!("unknown property path `{other}`")),
    }
    Ok(())
}
