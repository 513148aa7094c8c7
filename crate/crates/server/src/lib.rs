//! Stateless JSON-over-HTTP front end for the IS-LM engine.
//!
//! Every request carries the full scenario document; the only shared state is
//! the pre-rendered default document. Every non-2xx response carries an
//! [`ApiError`] body.

use std::any::Any;
use std::collections::BTreeSet;
use std::sync::Arc;

use axum::body::{Body, Bytes};
use axum::extract::rejection::BytesRejection;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use islm_core::{
    compare, default_grid, sample_curves, CurveError, DocumentError, GridSpec, Plot,
    ScenarioDocument, ScenarioError, ScenarioSet, Slot, SolveReport, SLOT_COUNT,
};
use serde::Serialize;
use serde_json::{Map, Value};
use tower_http::catch_panic::CatchPanicLayer;
use tower_http::cors::CorsLayer;
use tower_http::trace::TraceLayer;

/// Largest accepted request body.
pub const MAX_BODY_BYTES: usize = 64 * 1024;

const JSON: &str = "application/json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    BadRequest,
    InvalidParameters,
    UnknownPlot,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: ErrorCode,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_path: Option<String>,
}

impl ApiError {
    fn new(status: StatusCode, code: ErrorCode, message: impl Into<String>) -> Self {
        Self {
            status,
            code,
            message: message.into(),
            field_path: None,
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, ErrorCode::BadRequest, message)
    }

    fn at(mut self, path: impl Into<String>) -> Self {
        self.field_path = Some(path.into());
        self
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = serde_json::to_string(&self).expect("error serializes");
        (self.status, [(header::CONTENT_TYPE, JSON)], body).into_response()
    }
}

impl From<DocumentError> for ApiError {
    fn from(err: DocumentError) -> Self {
        let code = if err.is_invalid_value() {
            ErrorCode::InvalidParameters
        } else {
            ErrorCode::BadRequest
        };
        let path = err.field_path().map(str::to_string);
        ApiError {
            field_path: path,
            ..ApiError::new(StatusCode::BAD_REQUEST, code, err.to_string())
        }
    }
}

impl From<BytesRejection> for ApiError {
    fn from(rejection: BytesRejection) -> Self {
        ApiError::new(
            rejection.status(),
            ErrorCode::BadRequest,
            rejection.body_text(),
        )
    }
}

#[derive(Clone)]
struct AppState {
    defaults: Arc<str>,
}

/// The full application, including CORS, tracing and the body limit.
pub fn router() -> Router {
    let state = AppState {
        defaults: ScenarioDocument::defaults().to_json().into(),
    };
    Router::new()
        .route("/healthz", get(|| async { "ok\n" }))
        .route("/api/v1/defaults", get(defaults))
        .route("/api/v1/solve", post(solve))
        .route("/api/v1/curves", post(curves))
        .route("/api/v1/compare", post(compare_slots))
        .fallback(|| async {
            ApiError::new(
                StatusCode::NOT_FOUND,
                ErrorCode::BadRequest,
                "no such endpoint",
            )
        })
        .method_not_allowed_fallback(|| async {
            ApiError::new(
                StatusCode::METHOD_NOT_ALLOWED,
                ErrorCode::BadRequest,
                "method not allowed for this endpoint",
            )
        })
        .with_state(state)
        .layer(DefaultBodyLimit::max(MAX_BODY_BYTES))
        .layer(CatchPanicLayer::custom(panic_response))
        .layer(TraceLayer::new_for_http())
        .layer(CorsLayer::permissive())
}

fn panic_response(_: Box<dyn Any + Send + 'static>) -> Response<Body> {
    ApiError::new(
        StatusCode::INTERNAL_SERVER_ERROR,
        ErrorCode::Internal,
        "internal error",
    )
    .into_response()
}

fn json_response(body: String) -> Response {
    ([(header::CONTENT_TYPE, JSON)], body).into_response()
}

async fn defaults(State(state): State<AppState>) -> Response {
    let mut response = json_response(state.defaults.to_string());
    response.headers_mut().insert(
        header::CACHE_CONTROL,
        HeaderValue::from_static("public, max-age=3600"),
    );
    response
}

async fn solve(body: Result<Bytes, BytesRejection>) -> Result<Response, ApiError> {
    let set = ScenarioDocument::load(utf8(&body?)?)?;
    Ok(json_response(SolveReport::new(&set).to_json()))
}

async fn curves(body: Result<Bytes, BytesRejection>) -> Result<Response, ApiError> {
    let (mut extra, set) = split_request(&body?, &["slot", "plot", "grid"])?;
    let slot = slot_at(extra.remove("slot"), "slot")?;
    let plot = match extra.remove("plot") {
        Some(Value::String(id)) => id.parse::<Plot>().map_err(|err| {
            ApiError::new(
                StatusCode::BAD_REQUEST,
                ErrorCode::UnknownPlot,
                err.to_string(),
            )
            .at("plot")
        })?,
        _ => return Err(ApiError::bad_request("`plot` must be a string").at("plot")),
    };
    let spec: GridSpec = match extra.remove("grid") {
        None | Some(Value::Null) => GridSpec::default(),
        Some(grid) => serde_json::from_value(grid)
            .map_err(|err| ApiError::bad_request(format!("invalid grid: {err}")).at("grid"))?,
    };
    let grid_error = |err: CurveError| ApiError::bad_request(err.to_string()).at("grid");
    let grid = spec
        .resolve(default_grid(&set, slot, plot))
        .map_err(grid_error)?;
    let series = sample_curves(&set, slot, plot, &grid).map_err(grid_error)?;
    Ok(json_response(
        serde_json::to_string(&series).expect("series serialize"),
    ))
}

async fn compare_slots(body: Result<Bytes, BytesRejection>) -> Result<Response, ApiError> {
    let (mut extra, set) = split_request(&body?, &["slots"])?;
    let Some(Value::Array(items)) = extra.remove("slots") else {
        return Err(ApiError::bad_request("`slots` must be an array of slot numbers").at("slots"));
    };
    let slots = items
        .into_iter()
        .enumerate()
        .map(|(i, v)| slot_at(Some(v), &format!("slots[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = BTreeSet::new();
    if let Some(dup) = slots.iter().position(|s| !seen.insert(*s)) {
        return Err(ApiError::bad_request(format!(
            "slot {} selected more than once",
            slots[dup].number()
        ))
        .at(format!("slots[{dup}]")));
    }
    let table = compare(&set, &slots)
        .map_err(|err: ScenarioError| ApiError::bad_request(err.to_string()).at("slots"))?;
    Ok(json_response(
        serde_json::to_string(&table).expect("table serializes"),
    ))
}

fn utf8(body: &Bytes) -> Result<&str, ApiError> {
    std::str::from_utf8(body).map_err(|_| ApiError::bad_request("body is not valid UTF-8"))
}

/// Separates request-specific keys from the scenario document and validates
/// the document. Field paths in document errors stay rooted at `scenarios`.
fn split_request(
    body: &Bytes,
    keys: &[&str],
) -> Result<(Map<String, Value>, ScenarioSet), ApiError> {
    let value: Value = serde_json::from_str(utf8(body)?)
        .map_err(|err| ApiError::bad_request(format!("malformed JSON: {err}")))?;
    let Value::Object(mut document) = value else {
        return Err(ApiError::bad_request("request body must be a JSON object"));
    };
    let extra = keys
        .iter()
        .filter_map(|&k| document.remove(k).map(|v| (k.to_string(), v)))
        .collect();
    let set = ScenarioDocument::load(&Value::Object(document).to_string())?;
    Ok((extra, set))
}

fn slot_at(value: Option<Value>, path: &str) -> Result<Slot, ApiError> {
    let invalid = || {
        ApiError::bad_request(format!("slot must be an integer from 1 to {SLOT_COUNT}")).at(path)
    };
    let number = value.as_ref().and_then(Value::as_u64).ok_or_else(invalid)?;
    usize::try_from(number)
        .ok()
        .and_then(|n| Slot::new(n).ok())
        .ok_or_else(invalid)
}
