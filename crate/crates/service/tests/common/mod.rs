//! Random edit-action generator shared by the session property tests.

#![allow(dead_code)]

use bwtex_core::presets::AssetLibrary;
use bwtex_core::{ChartKind, VEGETABLES};
use bwtex_service::{EditAction, EditSession};
use proptest::prelude::*;
use serde_json::{json, Value};

pub fn category() -> impl Strategy<Value = String> {
    prop_oneof![
        9 => proptest::sample::select(VEGETABLES.iter().map(|(v, _)| v.to_string()).collect::<Vec<_>>()),
        1 => Just("kale".to_string()),
    ]
}

fn property() -> impl Strategy<Value = (String, Value)> {
    prop_oneof![
        (0.0f64..35.0).prop_map(|v| ("density".to_string(), json!(v))),
        (0.0f64..24.0).prop_map(|v| ("size".to_string(), json!(v))),
        (-720.0f64..720.0).prop_map(|v| ("orientation".to_string(), json!(v))),
        (-3i32..4).prop_map(|v| ("orientation_step".to_string(), json!(v))),
        (0.0f64..360.0).prop_map(|v| ("primitive_rotation".to_string(), json!(v))),
        (-0.2f64..1.2).prop_map(|v| ("randomness".to_string(), json!(v))),
        ((-20.0f64..20.0), (-20.0f64..20.0)).prop_map(|(x, y)| ("phase".to_string(), json!([x, y]))),
        prop_oneof![Just("white"), Just("black"), Just("gray")].prop_map(|v| ("background".to_string(), json!(v))),
        (20.0f64..160.0).prop_map(|v| ("crossing_angle".to_string(), json!(v))),
        any::<bool>().prop_map(|v| ("dot_filled".to_string(), json!(v))),
        (prop_oneof![Just("detailed"), Just("simplified")], prop_oneof![Just("outline"), Just("filled")])
            .prop_map(|(d, w)| ("icon_style".to_string(), json!({"detail": d, "weight": w}))),
        prop_oneof![Just("plain"), Just("dot"), Just("line"), Just("grid"), Just("icon"), Just("star")]
            .prop_map(|v| ("primitive".to_string(), json!(v))),
        (0.0f64..7.0).prop_map(|v| ("outline_width".to_string(), json!(v))),
        (0.0f64..7.0).prop_map(|v| ("halo_width".to_string(), json!(v))),
        Just(("nonsense".to_string(), json!(1))),
        Just(("density".to_string(), json!("dense"))),
    ]
}

pub fn action() -> impl Strategy<Value = EditAction> {
    let presets: Vec<String> = AssetLibrary::global().preset_ids().iter().map(|s| s.to_string()).collect();
    prop_oneof![
        4 => proptest::option::weighted(0.9, category()).prop_map(|category| EditAction::SelectCategory { category }),
        8 => (property(), any::<bool>()).prop_map(|((path, value), for_all)| EditAction::SetProperty { path, value, for_all }),
        2 => (category(), category()).prop_map(|(a, b)| EditAction::SwapTextures { a, b }),
        1 => prop_oneof![9 => proptest::sample::select(presets), 1 => Just("missing".to_string())]
            .prop_map(|id| EditAction::LoadPreset { id }),
        1 => any::<u64>().prop_map(|seed| EditAction::RandomDataset { seed }),
        1 => Just(EditAction::Reset {}),
    ]
}

pub fn start() -> impl Strategy<Value = (String, ChartKind)> {
    let presets: Vec<String> = AssetLibrary::global().preset_ids().iter().map(|s| s.to_string()).collect();
    (
        proptest::sample::select(presets),
        prop_oneof![Just(ChartKind::Bar), Just(ChartKind::Pie), Just(ChartKind::Map)],
    )
}

/// Checks the session algebra on one sequence; the error names the
/// first broken law.
pub fn check_sequence(preset: &str, kind: ChartKind, actions: &[EditAction]) -> Result<usize, String> {
    let mut s = EditSession::from_preset(AssetLibrary::global(), preset, kind).map_err(|e| e.to_string())?;
    let initial = s.state().to_json();
    let mut states = vec![initial.clone()];
    for a in actions {
        let before = s.state().to_json();
        match s.apply(a.clone()) {
            Ok(()) => {
                if s.redo_len() != 0 {
                    return Err("redo stack survived a new action".into());
                }
                // apply; undo is the identity, and redo replays it
                let after = s.state().to_json();
                s.undo().map_err(|e| e.to_string())?;
                if s.state().to_json() != before {
                    return Err(format!("undo of {a:?} did not restore the state"));
                }
                s.redo().map_err(|e| e.to_string())?;
                if s.state().to_json() != after {
                    return Err(format!("redo of {a:?} did not replay it"));
                }
                states.push(after);
            }
            Err(_) => {
                if s.state().to_json() != before {
                    return Err(format!("rejected {a:?} changed the state"));
                }
            }
        }
    }
    let applied = states.len() - 1;
    for expected in states.iter().rev().skip(1) {
        s.undo().map_err(|e| e.to_string())?;
        if &s.state().to_json() != expected {
            return Err("undo chain diverged".into());
        }
    }
    if s.undo().is_ok() {
        return Err("undo past the initial state".into());
    }
    for expected in states.iter().skip(1) {
        s.redo().map_err(|e| e.to_string())?;
        if &s.state().to_json() != expected {
            return Err("redo chain diverged".into());
        }
    }
    s.apply(EditAction::Reset {}).map_err(|e| e.to_string())?;
    if s.state().to_json() != initial {
        return Err("reset is not byte-exact".into());
    }
    Ok(applied)
}
