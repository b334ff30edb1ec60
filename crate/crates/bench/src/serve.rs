//! HTTP service behind the interactive ground-truth ordering tool.
//!
//! * `GET /pointsets` lists point-set ids (file stems of `*.pts` / `*.txt`).
//! * `GET /pointsets/{id}` returns `{"points": [[x, y], ...]}`.
//! * `POST /groundtruth/{id}` with `{"order": [..], "closed": bool}` writes
//!   `<id>.gt` in ordered form next to the input and returns `{"file": ..}`.
//!
//! Point-set files are never written. Ground-truth files are replaced
//! atomically through a temporary file in the same directory.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::Context;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use curvebench_core::{GroundTruth, PointSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Deserialize, Serialize, PartialEq)]
pub struct OrderRequest {
    pub order: Vec<usize>,
    pub closed: bool,
}

#[derive(Debug, Clone, Deserialize, Serialize, PartialEq)]
pub struct PointsResponse {
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Deserialize, Serialize, PartialEq)]
pub struct SavedResponse {
    pub file: String,
}

#[derive(Debug, Clone, Deserialize, Serialize, PartialEq)]
pub struct ErrorResponse {
    pub error: String,
}

#[derive(Debug)]
struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(ErrorResponse { error: self.1 })).into_response()
    }
}

fn internal(e: impl std::fmt::Display) -> ApiError {
    ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
}

/// Point-set files of `root` keyed by id; `.pts` wins over `.txt`.
fn point_files(root: &Path) -> std::io::Result<BTreeMap<String, PathBuf>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(root)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.sort();
    let mut out = BTreeMap::new();
    for path in paths {
        let ext = path.extension().and_then(|e| e.to_str());
        if !matches!(ext, Some("pts" | "txt")) || !path.is_file() {
            continue;
        }
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            out.entry(stem.to_string()).or_insert(path);
        }
    }
    Ok(out)
}

fn load(root: &Path, id: &str) -> Result<PointSet, ApiError> {
    let files = point_files(root).map_err(internal)?;
    let path = files
        .get(id)
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("unknown point set {id:?}")))?;
    let text = fs::read_to_string(path).map_err(internal)?;
    PointSet::parse_text(&text).map_err(|e| {
        ApiError(
            StatusCode::UNPROCESSABLE_ENTITY,
            format!("{}: {e}", path.display()),
        )
    })
}

/// Checks an ordering against a point set of `n` points.
pub fn validate_order(order: &[usize], n: usize) -> Result<(), String> {
    let mut seen = vec![false; n];
    for (pos, &i) in order.iter().enumerate() {
        if i >= n {
            return Err(format!(
                "index {i} at position {pos} is out of range for {n} points"
            ));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(format!("index {i} is repeated at position {pos}"));
        }
    }
    Ok(())
}

async fn list(State(root): State<Arc<PathBuf>>) -> Result<Json<Vec<String>>, ApiError> {
    let files = point_files(&root).map_err(internal)?;
    Ok(Json(files.into_keys().collect()))
}

async fn points(
    State(root): State<Arc<PathBuf>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<PointsResponse>, ApiError> {
    let ps = load(&root, &id)?;
    Ok(Json(PointsResponse {
        points: ps.points().iter().map(|p| [p.x, p.y]).collect(),
    }))
}

async fn save(
    State(root): State<Arc<PathBuf>>,
    UrlPath(id): UrlPath<String>,
    Json(req): Json<OrderRequest>,
) -> Result<Json<SavedResponse>, ApiError> {
    let ps = load(&root, &id)?;
    let invalid = |msg: String| ApiError(StatusCode::UNPROCESSABLE_ENTITY, msg);
    validate_order(&req.order, ps.len()).map_err(invalid)?;
    let vertices = req.order.iter().map(|&i| ps.points()[i]).collect();
    let gt = GroundTruth::ordered(vertices, req.closed).map_err(|e| invalid(e.to_string()))?;
    let file = format!("{id}.gt");
    let mut tmp = tempfile::NamedTempFile::new_in(root.as_path()).map_err(internal)?;
    tmp.write_all(gt.to_text().as_bytes()).map_err(internal)?;
    tmp.persist(root.join(&file)).map_err(internal)?;
    Ok(Json(SavedResponse { file }))
}

/// The service's routes over point sets in `root`.
pub fn router(root: PathBuf) -> Router {
    Router::new()
        .route("/pointsets", get(list))
        .route("/pointsets/{id}", get(points))
        .route("/groundtruth/{id}", post(save))
        .with_state(Arc::new(root))
}

/// Serves `root` on `addr` until the process is stopped.
pub async fn serve(root: PathBuf, addr: SocketAddr) -> anyhow::Result<()> {
    anyhow::ensure!(root.is_dir(), "{} is not a directory", root.display());
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .with_context(|| format!("cannot listen on {addr}"))?;
    eprintln!(
        "serving {} on http://{}",
        root.display(),
        listener.local_addr()?
    );
    axum::serve(listener, router(root)).await?;
    Ok(())
}
