// Copyright 2026 The qbench Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! HTTP API over a generated benchmark catalog.
//!
//! | Route | Answer |
//! |---|---|
//! | `GET /api/options` | values present on every filter axis |
//! | `GET /api/benchmarks?…` | one page of matching records |
//! | `GET /api/benchmarks/{filename}` | the raw OpenQASM file |
//! | `POST /api/download` | zip of the records matching a JSON filter |
//!
//! Query parameters for `/api/benchmarks` are `algo`, `level`, `gateset`,
//! `device` and `opt` (repeatable or comma separated), `nmin`, `nmax`,
//! `cursor` (offset of the first record) and `limit`.

use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, RawQuery, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use qbench_core::algorithms::Algorithm;
use qbench_core::catalog::{BenchmarkRecord, Catalog, CatalogOptions, FilterQuery};
use qbench_core::circuit::Level;
use qbench_core::native::GateSetKind;
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

pub const DEFAULT_PAGE: usize = 100;
pub const MAX_PAGE: usize = 1000;
pub const DEFAULT_BUNDLE_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct ApiConfig {
    pub bundle_cap: usize,
    /// Directory served at `/` (the web UI bundle), if any.
    pub static_dir: Option<PathBuf>,
}

impl Default for ApiConfig {
    fn default() -> Self {
        ApiConfig { bundle_cap: DEFAULT_BUNDLE_CAP, static_dir: None }
    }
}

struct AppState {
    catalog: Catalog,
    config: ApiConfig,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Page {
    pub status: String,
    pub total: usize,
    pub cursor: usize,
    pub limit: usize,
    /// Cursor of the following page, absent on the last one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub next: Option<usize>,
    pub records: Vec<BenchmarkRecord>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ErrorBody {
    pub status: String,
    pub error: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Options {
    pub status: String,
    #[serde(flatten)]
    pub options: CatalogOptions,
    pub page_default: usize,
    pub page_max: usize,
    pub bundle_cap: usize,
}

fn error(code: StatusCode, message: impl Into<String>) -> Response {
    (code, Json(ErrorBody { status: "error".into(), error: message.into() })).into_response()
}

/// Parses the `/api/benchmarks` query string into a filter plus paging.
pub fn parse_query(raw: &str) -> Result<(FilterQuery, usize, usize), String> {
    let mut f = FilterQuery::default();
    let mut cursor = 0;
    let mut limit = DEFAULT_PAGE;
    for (key, value) in url::form_urlencoded::parse(raw.as_bytes()) {
        let values = || value.split(',').map(str::trim).filter(|v| !v.is_empty());
        let number = |what: &str| {
            value.trim().parse::<usize>().map_err(|_| format!("{what} must be a non-negative integer, got `{value}`"))
        };
        match key.as_ref() {
            "algo" | "algorithm" => {
                for v in values() {
                    let a: Algorithm = v.parse().map_err(|e: qbench_core::algorithms::AlgoError| e.to_string())?;
                    f.algorithms.push(a.as_str().to_string());
                }
            }
            "level" => {
                for v in values() {
                    f.levels.push(v.parse::<Level>()?);
                }
            }
            "gateset" => {
                for v in values() {
                    f.gatesets.push(v.parse::<GateSetKind>()?);
                }
            }
            "device" => f.devices.extend(values().map(str::to_string)),
            "opt" => {
                for v in values() {
                    f.opt_levels.push(v.parse().map_err(|_| format!("opt must be 0..=3, got `{v}`"))?);
                }
            }
            "nmin" => f.nmin = Some(number("nmin")?),
            "nmax" => f.nmax = Some(number("nmax")?),
            "cursor" => cursor = number("cursor")?,
            "limit" => limit = number("limit")?,
            other => return Err(format!("unknown parameter `{other}`")),
        }
    }
    if limit == 0 || limit > MAX_PAGE {
        return Err(format!("limit must be 1..={MAX_PAGE}, got {limit}"));
    }
    if let (Some(a), Some(b)) = (f.nmin, f.nmax) {
        if a > b {
            return Err(format!("nmin {a} exceeds nmax {b}"));
        }
    }
    Ok((f, cursor, limit))
}

/// The query string [`parse_query`] reads back as `filter`, `cursor` and
/// `limit`.
pub fn query_string(filter: &FilterQuery, cursor: usize, limit: usize) -> String {
    let mut q = url::form_urlencoded::Serializer::new(String::new());
    for a in &filter.algorithms {
        q.append_pair("algo", a);
    }
    if let Some(n) = filter.nmin {
        q.append_pair("nmin", &n.to_string());
    }
    if let Some(n) = filter.nmax {
        q.append_pair("nmax", &n.to_string());
    }
    for l in &filter.levels {
        q.append_pair("level", l.as_str());
    }
    for g in &filter.gatesets {
        q.append_pair("gateset", &g.to_string());
    }
    for d in &filter.devices {
        q.append_pair("device", d);
    }
    for o in &filter.opt_levels {
        q.append_pair("opt", &o.to_string());
    }
    if cursor > 0 {
        q.append_pair("cursor", &cursor.to_string());
    }
    if limit != DEFAULT_PAGE {
        q.append_pair("limit", &limit.to_string());
    }
    q.finish()
}

async fn options(State(s): State<Arc<AppState>>) -> Json<Options> {
    Json(Options {
        status: "ok".into(),
        options: s.catalog.options(),
        page_default: DEFAULT_PAGE,
        page_max: MAX_PAGE,
        bundle_cap: s.config.bundle_cap,
    })
}

async fn benchmarks(State(s): State<Arc<AppState>>, RawQuery(raw): RawQuery) -> Response {
    let (filter, cursor, limit) = match parse_query(raw.as_deref().unwrap_or("")) {
        Ok(q) => q,
        Err(e) => return error(StatusCode::BAD_REQUEST, e),
    };
    let hits = s.catalog.query(&filter);
    let total = hits.len();
    let records: Vec<BenchmarkRecord> = hits.into_iter().skip(cursor).take(limit).cloned().collect();
    let next = (cursor + limit < total).then_some(cursor + limit);
    Json(Page { status: "ok".into(), total, cursor, limit, next, records }).into_response()
}

async fn benchmark_file(State(s): State<Arc<AppState>>, Path(filename): Path<String>) -> Response {
    let Some(record) = s.catalog.get(&filename) else {
        return error(StatusCode::NOT_FOUND, format!("no benchmark named `{filename}`"));
    };
    match s.catalog.read_qasm(record) {
        Ok(text) => ([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response(),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    }
}

async fn download(State(s): State<Arc<AppState>>, body: Bytes) -> Response {
    let filter: FilterQuery = if body.iter().all(u8::is_ascii_whitespace) {
        FilterQuery::default()
    } else {
        match serde_json::from_slice(&body) {
            Ok(f) => f,
            Err(e) => return error(StatusCode::BAD_REQUEST, format!("malformed filter: {e}")),
        }
    };
    let hits = s.catalog.query(&filter);
    if hits.len() > s.config.bundle_cap {
        return error(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!("{} files selected, the limit is {}", hits.len(), s.config.bundle_cap),
        );
    }
    // Archive building reads files; keep it off the async workers.
    let state = s.clone();
    let built = tokio::task::spawn_blocking(move || {
        let hits = state.catalog.query(&filter);
        state.catalog.bundle(hits)
    })
    .await;
    match built {
        Ok(Ok(bytes)) => {
            let mut h = HeaderMap::new();
            h.insert(header::CONTENT_TYPE, HeaderValue::from_static("application/zip"));
            h.insert(header::CONTENT_DISPOSITION, HeaderValue::from_static("attachment; filename=\"qbench.zip\""));
            (h, bytes).into_response()
        }
        Ok(Err(e)) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    }
}

async fn unknown_api() -> Response {
    error(StatusCode::NOT_FOUND, "unknown endpoint")
}

/// The API routes over an already loaded catalog.
pub fn router(catalog: Catalog, config: ApiConfig) -> Router {
    let static_dir = config.static_dir.clone();
    let state = Arc::new(AppState { catalog, config });
    let api = Router::new()
        .route("/api/options", get(options))
        .route("/api/benchmarks", get(benchmarks))
        .route("/api/benchmarks/{filename}", get(benchmark_file))
        .route("/api/download", post(download))
        .route("/api/{*rest}", get(unknown_api))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves on an already bound listener until ctrl-c.
pub async fn serve(listener: tokio::net::TcpListener, catalog: Catalog, config: ApiConfig) -> std::io::Result<()> {
    log::info!("serving {} benchmarks on http://{}", catalog.len(), listener.local_addr()?);
    axum::serve(listener, router(catalog, config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
