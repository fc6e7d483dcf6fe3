//! Stateless HTTP facade over the hopfkit scene builders.
//!
//! Every response body is a scene document (rounded exactly as the JSON
//! exporter rounds it) plus a `convention` block; handler time goes in the
//! `x-elapsed-ms` header so identical requests give identical bodies.

use std::collections::HashMap;
use std::time::Instant;

use axum::extract::{Query, Request, State};
use axum::http::{HeaderValue, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, CorsLayer};

use hopfkit::export::{export_json, ExportOptions};
use hopfkit::hopf::{self, HopfConvention, HopfVariant};
use hopfkit::scene::{base_sphere_document, fiber_scene, hypercube_document, tori_scene, SceneDocument};
use hopfkit::stereo::S2Point;

pub const DEFAULT_BIND: &str = "127.0.0.1:8787";
pub const DEFAULT_MAX_SAMPLES: usize = 16384;
pub const MIN_SAMPLES: usize = 8;
pub const MAX_LATITUDES: usize = 16;
pub const MAX_FIBERS_PER_TORUS: usize = 64;
/// Cap on `latitudes * fibers * samples` for one tori request.
pub const MAX_TORI_POINTS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub bind: String,
    pub max_samples: usize,
    /// `None` allows any origin.
    pub cors_origin: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            bind: DEFAULT_BIND.into(),
            max_samples: DEFAULT_MAX_SAMPLES,
            cors_origin: None,
        }
    }
}

impl Config {
    /// Reads `HOPF_BIND`, `HOPF_MAX_SAMPLES` and `HOPF_CORS_ORIGIN`.
    pub fn from_env() -> Result<Self, String> {
        let mut c = Config::default();
        if let Ok(b) = std::env::var("HOPF_BIND") {
            c.bind = b;
        }
        if let Ok(m) = std::env::var("HOPF_MAX_SAMPLES") {
            c.max_samples = m
                .parse()
                .ok()
                .filter(|&n| n >= MIN_SAMPLES)
                .ok_or_else(|| format!("HOPF_MAX_SAMPLES must be an integer >= {MIN_SAMPLES}, got {m:?}"))?;
        }
        c.cors_origin = std::env::var("HOPF_CORS_ORIGIN").ok().filter(|s| !s.is_empty() && s != "*");
        Ok(c)
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn bad(message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST,
            message: message.into(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type Params = Query<HashMap<String, String>>;

fn number(q: &HashMap<String, String>, key: &str) -> Result<f64, ApiError> {
    let raw = q.get(key).ok_or_else(|| ApiError::bad(format!("missing parameter {key}")))?;
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ApiError::bad(format!("{key} must be a finite number, got {raw:?}")))
}

fn count(q: &HashMap<String, String>, key: &str, default: usize, min: usize, max: usize) -> Result<usize, ApiError> {
    let n = match q.get(key) {
        None => default,
        Some(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| ApiError::bad(format!("{key} must be a non-negative integer, got {raw:?}")))?,
    };
    if n < min || n > max {
        return Err(ApiError::bad(format!("{key} must lie in [{min}, {max}], got {n}")));
    }
    Ok(n)
}

fn convention(variant: HopfVariant) -> Value {
    json!({
        "variant": variant.name(),
        "chart": hopf::CHART_DESCRIPTION,
        "orientation_sign": hopf::LINK_SIGN,
    })
}

/// Rounded scene JSON with the convention block and any extra fields merged in.
fn body(doc: &SceneDocument, variant: HopfVariant, extra: Value) -> Result<Json<Value>, ApiError> {
    let internal = |e: hopfkit::GeomError| ApiError {
        status: StatusCode::INTERNAL_SERVER_ERROR,
        message: e.to_string(),
    };
    let bytes = export_json(doc, &ExportOptions::default()).map_err(internal)?;
    let mut v: Value = serde_json::from_slice(&bytes).expect("exporter writes valid JSON");
    let obj = v.as_object_mut().expect("scene is an object");
    obj.insert("convention".into(), convention(variant));
    if let Value::Object(extra) = extra {
        obj.extend(extra);
    }
    Ok(Json(v))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    tokio::task::spawn_blocking(f).await.expect("handler task panicked")
}

async fn fiber_handler(State(cfg): State<Config>, Query(q): Params) -> Result<Json<Value>, ApiError> {
    let v = [number(&q, "x")?, number(&q, "y")?, number(&q, "z")?];
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm <= 1e-9 {
        return Err(ApiError::bad("base (x, y, z) must have norm above 1e-9"));
    }
    let base = S2Point::normalize(v).map_err(|e| ApiError::bad(e.to_string()))?;
    let variant = match q.get("variant") {
        None => HopfVariant::Riemann,
        Some(s) => s.parse().map_err(|_| ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            message: format!("unsupported variant {s:?}; expected riemann, quat-right or quat-left"),
        })?,
    };
    let samples = count(&q, "samples", 256, MIN_SAMPLES, cfg.max_samples)?;
    blocking(move || {
        let doc = fiber_scene(&HopfConvention::new(variant), &[base], samples, hopf::DEFAULT_CLIP_RADIUS)
            .map_err(|e| ApiError::bad(e.to_string()))?;
        body(&doc, variant, json!({ "base": base.coords() }))
    })
    .await
}

async fn tori_handler(State(cfg): State<Config>, Query(q): Params) -> Result<Json<Value>, ApiError> {
    let raw = q.get("latitudes").ok_or_else(|| ApiError::bad("missing parameter latitudes"))?;
    let latitudes = raw
        .split(',')
        .map(|t| t.trim().parse::<f64>().ok().filter(|x| x.is_finite() && *x > 0.0))
        .collect::<Option<Vec<f64>>>()
        .ok_or_else(|| ApiError::bad(format!("latitudes must be positive numbers, got {raw:?}")))?;
    if latitudes.len() > MAX_LATITUDES {
        return Err(ApiError::bad(format!("at most {MAX_LATITUDES} latitudes")));
    }
    let fibers = count(&q, "fibers", 12, 1, MAX_FIBERS_PER_TORUS)?;
    let samples = count(&q, "samples", 128, 64, cfg.max_samples)?;
    if latitudes.len() * fibers * samples > MAX_TORI_POINTS {
        return Err(ApiError::bad(format!("request exceeds {MAX_TORI_POINTS} sampled points")));
    }
    blocking(move || {
        let doc = tori_scene(&latitudes, fibers, samples).map_err(|e| ApiError::bad(e.to_string()))?;
        body(&doc, HopfVariant::Riemann, json!({}))
    })
    .await
}

async fn base_sphere_handler() -> Result<Json<Value>, ApiError> {
    blocking(|| body(&base_sphere_document(), HopfVariant::Riemann, json!({}))).await
}

async fn hypercube_handler() -> Result<Json<Value>, ApiError> {
    blocking(|| body(&hypercube_document(32), HopfVariant::Riemann, json!({}))).await
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok", "version": env!("CARGO_PKG_VERSION") }))
}

async fn elapsed(req: Request, next: Next) -> Response {
    let start = Instant::now();
    let mut res = next.run(req).await;
    let ms = format!("{:.3}", start.elapsed().as_secs_f64() * 1e3);
    res.headers_mut().insert("x-elapsed-ms", HeaderValue::from_str(&ms).expect("ascii number"));
    res
}

pub fn app(cfg: Config) -> Router {
    let cors = match &cfg.cors_origin {
        Some(origin) => match HeaderValue::from_str(origin) {
            Ok(v) => CorsLayer::new().allow_origin(AllowOrigin::exact(v)),
            Err(_) => CorsLayer::permissive(),
        },
        None => CorsLayer::permissive(),
    };
    Router::new()
        .route("/api/fiber", get(fiber_handler))
        .route("/api/tori", get(tori_handler))
        .route("/api/base-sphere", get(base_sphere_handler))
        .route("/api/scene/hypercube", get(hypercube_handler))
        .route("/api/health", get(health))
        .layer(middleware::from_fn(elapsed))
        .layer(cors)
        .with_state(cfg)
}
