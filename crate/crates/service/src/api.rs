//! HTTP/1.1 JSON API over edit sessions.
//!
//! Errors are returned as `{"code": ..., "message": ...}` with a 4xx status.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use bwtex_core::chart::{render_chart_with, ChartWarning, RenderOptions};
use bwtex_core::presets::{AssetLibrary, FillKind};
use bwtex_core::raster::svg_to_png;
use bwtex_core::{ChartKind, ChartSpec, Dataset};
use serde::{Deserialize, Serialize};

use crate::session::{EditAction, EditSession, SessionError, SessionState};
use crate::store::{SessionHandle, SessionStore};

pub const DEFAULT_PNG_PX_PER_UNIT: f32 = 4.0;
const MAX_PNG_PX_PER_UNIT: f32 = 16.0;

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<SessionStore>,
    pub library: &'static AssetLibrary,
}

impl AppState {
    pub fn new(store: SessionStore) -> Self {
        Self { store: Arc::new(store), library: AssetLibrary::global() }
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/presets", get(list_presets))
        .route("/api/render", post(render))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(session_view))
        .route("/api/sessions/{id}/actions", post(apply_action))
        .route("/api/sessions/{id}/undo", post(undo))
        .route("/api/sessions/{id}/redo", post(redo))
        .route("/api/sessions/{id}/export", get(export))
        .with_state(state)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ApiError {
    pub code: String,
    pub message: String,
    #[serde(skip)]
    status: StatusCode,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        Self { code: code.to_string(), message: message.into(), status }
    }

    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "SESSION_NOT_FOUND", format!("no session `{id}`"))
    }

    fn bad_request(code: &str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, code, message)
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let code = match &e {
            SessionError::UnknownCategory(_) => "UNKNOWN_CATEGORY",
            SessionError::InvalidProperty(_) => "INVALID_PROPERTY",
            SessionError::UnknownPreset(_) => "UNKNOWN_PRESET",
            SessionError::NothingTo(_) => {
                return Self::new(StatusCode::CONFLICT, "NOTHING_TO_REPLAY", e.to_string());
            }
            SessionError::Core(_) => "INVALID_ACTION",
        };
        Self::bad_request(code, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Debug, Serialize, Deserialize)]
pub struct PresetInfo {
    pub id: String,
    pub name: String,
    pub fill: FillKind,
    /// Set for chart templates, which carry their own chart kind.
    pub chart_kind: Option<ChartKind>,
}

async fn list_presets(State(app): State<AppState>) -> Json<Vec<PresetInfo>> {
    let lib = app.library;
    let sets = lib.sets().iter().map(|s| PresetInfo { id: s.id.clone(), name: s.name.clone(), fill: s.kind, chart_kind: None });
    let templates = lib.templates().iter().map(|t| PresetInfo {
        id: t.id.clone(),
        name: t.id.clone(),
        fill: t.fill,
        chart_kind: Some(t.chart_kind),
    });
    Json(sets.chain(templates).collect())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateSession {
    preset_id: String,
    chart_kind: ChartKind,
}

/// What every session endpoint answers with.
#[derive(Debug, Serialize, Deserialize)]
pub struct SessionView {
    pub session_id: String,
    pub svg: String,
    pub state: SessionState,
    pub warnings: Vec<ChartWarning>,
    pub can_undo: bool,
    pub can_redo: bool,
}

fn view(id: &str, session: &EditSession) -> ApiResult<SessionView> {
    let (svg, warnings) = session.render()?;
    Ok(SessionView {
        session_id: id.to_string(),
        svg,
        state: session.state().clone(),
        warnings,
        can_undo: session.history_len() > 0,
        can_redo: session.redo_len() > 0,
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(body: &[u8], code: &str) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(code, e.to_string()))
}

/// Runs `f` on the locked session off the async executor.
async fn with_session<T: Send + 'static>(
    app: &AppState,
    id: String,
    f: impl FnOnce(&str, &mut EditSession) -> ApiResult<T> + Send + 'static,
) -> ApiResult<T> {
    let handle: SessionHandle = app.store.get(&id).ok_or_else(|| ApiError::not_found(&id))?;
    tokio::task::spawn_blocking(move || {
        let mut session = handle.lock().expect("session poisoned");
        f(&id, &mut session)
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e.to_string()))?
}

async fn create_session(State(app): State<AppState>, body: Bytes) -> ApiResult<(StatusCode, Json<SessionView>)> {
    let req: CreateSession = parse_json(&body, "INVALID_REQUEST")?;
    let session = EditSession::from_preset(app.library, &req.preset_id, req.chart_kind)?;
    let id = app.store.insert(session);
    let v = with_session(&app, id, |id, s| view(id, s)).await?;
    Ok((StatusCode::CREATED, Json(v)))
}

async fn session_view(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<SessionView>> {
    with_session(&app, id, |id, s| view(id, s)).await.map(Json)
}

async fn apply_action(State(app): State<AppState>, Path(id): Path<String>, body: Bytes) -> ApiResult<Json<SessionView>> {
    // the session must exist before the body is judged
    app.store.get(&id).ok_or_else(|| ApiError::not_found(&id))?;
    let action: EditAction = parse_json(&body, "INVALID_ACTION")?;
    with_session(&app, id, move |id, s| {
        s.apply(action)?;
        view(id, s)
    })
    .await
    .map(Json)
}

async fn undo(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<SessionView>> {
    with_session(&app, id, |id, s| {
        s.undo()?;
        view(id, s)
    })
    .await
    .map(Json)
}

async fn redo(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<SessionView>> {
    with_session(&app, id, |id, s| {
        s.redo()?;
        view(id, s)
    })
    .await
    .map(Json)
}

#[derive(Debug, Deserialize)]
struct ExportQuery {
    format: Option<String>,
    px_per_unit: Option<f32>,
}

async fn export(State(app): State<AppState>, Path(id): Path<String>, Query(q): Query<ExportQuery>) -> ApiResult<Response> {
    let format = q.format.unwrap_or_else(|| "json".into());
    let ppu = q.px_per_unit.unwrap_or(DEFAULT_PNG_PX_PER_UNIT);
    if !(ppu > 0.0 && ppu <= MAX_PNG_PX_PER_UNIT) {
        return Err(ApiError::bad_request("INVALID_REQUEST", format!("px_per_unit must be in (0, {MAX_PNG_PX_PER_UNIT}]")));
    }
    with_session(&app, id, move |_, s| match format.as_str() {
        "json" => Ok(([(header::CONTENT_TYPE, "application/json")], s.state().to_json()).into_response()),
        "svg" => Ok(([(header::CONTENT_TYPE, "image/svg+xml")], s.render()?.0).into_response()),
        "png" => {
            let png = svg_to_png(&s.render()?.0, ppu).map_err(SessionError::from)?;
            Ok(([(header::CONTENT_TYPE, "image/png")], png).into_response())
        }
        other => Err(ApiError::bad_request("INVALID_REQUEST", format!("unknown export format `{other}`"))),
    })
    .await
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RenderRequest {
    chart: ChartSpec,
    data: Option<Dataset>,
    #[serde(default)]
    selected: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RenderResponse {
    pub svg: String,
    pub warnings: Vec<ChartWarning>,
}

/// Stateless render: identical payloads give identical bytes.
async fn render(State(app): State<AppState>, body: Bytes) -> ApiResult<Json<RenderResponse>> {
    let req: RenderRequest = parse_json(&body, "INVALID_REQUEST")?;
    let data = req.data.unwrap_or_else(|| app.library.default_dataset().clone());
    let selected = match &req.selected {
        Some(name) => Some(
            req.chart.category_index(name).ok_or_else(|| SessionError::UnknownCategory(name.clone()))?,
        ),
        None => None,
    };
    let out = tokio::task::spawn_blocking(move || render_chart_with(&req.chart, &data, &RenderOptions { selected }))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e.to_string()))?
        .map_err(|e| ApiError::bad_request("INVALID_REQUEST", e.to_string()))?;
    Ok(Json(RenderResponse { svg: out.svg, warnings: out.warnings }))
}

pub async fn serve(addr: std::net::SocketAddr, store: SessionStore) -> std::io::Result<()> {
    let app = AppState::new(store);
    let sweeper = app.store.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(std::time::Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.sweep();
        }
    });
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(app)).await
}
