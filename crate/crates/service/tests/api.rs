use std::collections::BTreeMap;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use bwtex_service::api::{router, AppState, PresetInfo, RenderResponse, SessionView};
use bwtex_service::SessionStore;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::new(SessionStore::default()))
}

async fn text(app: &Router, uri: &str) -> String {
    let (status, body) = call(app, "GET", uri, None).await;
    assert_eq!(status, StatusCode::OK);
    String::from_utf8(body).unwrap()
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<String>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    (status, res.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn create(app: &Router, preset: &str, kind: &str) -> SessionView {
    let (status, body) =
        call(app, "POST", "/api/sessions", Some(json!({"preset_id": preset, "chart_kind": kind}).to_string())).await;
    assert_eq!(status, StatusCode::CREATED, "{}", String::from_utf8_lossy(&body));
    serde_json::from_slice(&body).unwrap()
}

async fn act(app: &Router, id: &str, action: Value) -> (StatusCode, Vec<u8>) {
    call(app, "POST", &format!("/api/sessions/{id}/actions"), Some(action.to_string())).await
}

fn code(body: &[u8]) -> String {
    serde_json::from_slice::<Value>(body).unwrap()["code"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn presets_are_listed() {
    let (status, body) = call(&app(), "GET", "/api/presets", None).await;
    assert_eq!(status, StatusCode::OK);
    let presets: Vec<PresetInfo> = serde_json::from_slice(&body).unwrap();
    assert!(presets.iter().any(|p| p.id == "bertin-1"));
    assert!(presets.iter().any(|p| p.id == "PI1-like"));
}

#[tokio::test]
async fn undo_restores_the_post_create_export() {
    let app = app();
    let s = create(&app, "PG1-like", "pie").await;
    let export = format!("/api/sessions/{}/export?format=json", s.session_id);
    let before = text(&app, &export).await;

    let (status, body) = act(&app, &s.session_id, json!({"type": "swap_textures", "a": "carrots", "b": "mushrooms"})).await;
    assert_eq!(status, StatusCode::OK, "{}", String::from_utf8_lossy(&body));
    let after = text(&app, &export).await;
    assert_ne!(before, after);

    let (status, _) = call(&app, "POST", &format!("/api/sessions/{}/undo", s.session_id), None).await;
    assert_eq!(status, StatusCode::OK);
    let undone = text(&app, &export).await;
    assert_eq!(before, undone);

    let (status, body) = call(&app, "POST", &format!("/api/sessions/{}/redo", s.session_id), None).await;
    assert_eq!(status, StatusCode::OK);
    let view: SessionView = serde_json::from_slice(&body).unwrap();
    assert!(view.can_undo && !view.can_redo);
    let redone = text(&app, &export).await;
    assert_eq!(after, redone);
}

#[tokio::test]
async fn exports_in_every_format() {
    let app = app();
    let s = create(&app, "BG2-like", "bar").await;
    let base = format!("/api/sessions/{}/export", s.session_id);
    let (status, svg) = call(&app, "GET", &format!("{base}?format=svg"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(String::from_utf8(svg).unwrap(), s.svg);

    let (status, png) = call(&app, "GET", &format!("{base}?format=png"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(&png[..8], b"\x89PNG\r\n\x1a\n");
    // default resolution is 4 px per unit on a 600 by 400 canvas
    let width = u32::from_be_bytes(png[16..20].try_into().unwrap());
    let height = u32::from_be_bytes(png[20..24].try_into().unwrap());
    assert_eq!((width, height), (2400, 1600));

    let (status, body) = call(&app, "GET", &format!("{base}?format=gif"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(code(&body), "INVALID_REQUEST");
}

#[tokio::test]
async fn errors_carry_machine_readable_codes() {
    let app = app();
    let (status, body) = act(&app, "missing", json!({"type": "reset"})).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(code(&body), "SESSION_NOT_FOUND");
    let (status, _) = call(&app, "GET", "/api/sessions/missing/export?format=json", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let s = create(&app, "bertin-2", "bar").await;
    for bad in [
        "{",
        "[]",
        r#"{"type": "explode"}"#,
        r#"{"type": "swap_textures", "a": "corn"}"#,
        r#"{"type": "reset", "extra": 1}"#,
        "",
    ] {
        let (status, body) = call(&app, "POST", &format!("/api/sessions/{}/actions", s.session_id), Some(bad.into())).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{bad}");
        assert_eq!(code(&body), "INVALID_ACTION", "{bad}");
    }

    let (status, body) = act(&app, &s.session_id, json!({"type": "select_category", "category": "kale"})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(code(&body), "UNKNOWN_CATEGORY");
    let (status, body) = act(&app, &s.session_id, json!({"type": "set_property", "path": "density", "value": 5})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(code(&body), "INVALID_PROPERTY");

    let (status, body) = call(&app, "POST", &format!("/api/sessions/{}/undo", s.session_id), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(code(&body), "NOTHING_TO_REPLAY");

    let (status, body) =
        call(&app, "POST", "/api/sessions", Some(json!({"preset_id": "nope", "chart_kind": "bar"}).to_string())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(code(&body), "UNKNOWN_PRESET");
}

#[tokio::test]
async fn for_all_edits_every_same_kind_texture_in_one_step() {
    let app = app();
    let s = create(&app, "bertin-3", "bar").await;
    let grids: Vec<String> = s
        .state
        .chart
        .categories
        .iter()
        .filter(|c| c.fill.texture().is_some_and(|t| t.primitive.name() == "grid"))
        .map(|c| c.name.clone())
        .collect();
    assert_eq!(grids.len(), 2);
    act(&app, &s.session_id, json!({"type": "select_category", "category": grids[1]})).await;
    let (status, body) =
        act(&app, &s.session_id, json!({"type": "set_property", "path": "density", "value": 12, "for_all": true})).await;
    assert_eq!(status, StatusCode::OK);
    let view: SessionView = serde_json::from_slice(&body).unwrap();
    for (new, old) in view.state.chart.categories.iter().zip(&s.state.chart.categories) {
        if grids.contains(&new.name) {
            assert_eq!(new.fill.texture().unwrap().density, 12.0);
        } else {
            assert_eq!(new.fill, old.fill);
        }
    }
    // one undo reverts the whole group
    let (_, body) = call(&app, "POST", &format!("/api/sessions/{}/undo", s.session_id), None).await;
    let view: SessionView = serde_json::from_slice(&body).unwrap();
    assert_eq!(view.state.chart, s.state.chart);
}

#[tokio::test]
async fn stateless_render_is_byte_stable() {
    let app = app();
    let s = create(&app, "PG1-like", "pie").await;
    let payload = json!({"chart": s.state.chart, "data": s.state.data, "selected": "olives"}).to_string();
    let (status, a) = call(&app, "POST", "/api/render", Some(payload.clone())).await;
    assert_eq!(status, StatusCode::OK);
    let (_, b) = call(&app, "POST", "/api/render", Some(payload)).await;
    assert_eq!(a, b);
    let r: RenderResponse = serde_json::from_slice(&a).unwrap();
    assert!(r.svg.contains("#1f6feb"));
}

/// Many requests on several sessions at once: each response reflects its
/// own action on its own session, and each session ends with exactly its
/// own history.
#[tokio::test(flavor = "multi_thread", worker_threads = 8)]
async fn concurrent_sessions_never_interleave() {
    let app = app();
    let presets = [("bertin-1", "bar"), ("bertin-4", "pie"), ("PI1-like", "pie"), ("BG2-like", "bar")];
    let mut sessions = Vec::new();
    for (p, k) in presets {
        sessions.push(create(&app, p, k).await);
    }
    const PER_SESSION: u64 = 40;
    let mut tasks = Vec::new();
    for (si, s) in sessions.iter().enumerate() {
        for j in 0..PER_SESSION {
            let app = app.clone();
            let id = s.session_id.clone();
            let seed = si as u64 * 1000 + j;
            tasks.push(tokio::spawn(async move {
                let (status, body) = act(&app, &id, json!({"type": "random_dataset", "seed": seed})).await;
                assert_eq!(status, StatusCode::OK);
                let view: SessionView = serde_json::from_slice(&body).unwrap();
                (si, seed, view)
            }));
        }
    }
    let mut log: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for t in tasks {
        let (si, seed, view) = t.await.unwrap();
        assert_eq!(view.session_id, sessions[si].session_id);
        assert_eq!(view.state.preset_id, sessions[si].state.preset_id);
        assert_eq!(view.state.chart, sessions[si].state.chart);
        // the data in the response is exactly what this request's seed makes
        let mut probe = bwtex_service::EditSession::new(sessions[si].state.clone());
        probe.apply(bwtex_service::EditAction::RandomDataset { seed }).unwrap();
        assert_eq!(view.state.data, probe.state().data);
        log.entry(si).or_default().push(seed);
    }
    for (si, s) in sessions.iter().enumerate() {
        assert_eq!(log[&si].len(), PER_SESSION as usize);
        for _ in 0..PER_SESSION {
            let (status, _) = call(&app, "POST", &format!("/api/sessions/{}/undo", s.session_id), None).await;
            assert_eq!(status, StatusCode::OK);
        }
        let (status, _) = call(&app, "POST", &format!("/api/sessions/{}/undo", s.session_id), None).await;
        assert_eq!(status, StatusCode::CONFLICT);
        let (_, body) = call(&app, "GET", &format!("/api/sessions/{}/export?format=json", s.session_id), None).await;
        assert_eq!(String::from_utf8(body).unwrap(), s.state.to_json());
    }
}
