//! HTTP API over a single `.hmreq-project` file.
//!
//! Reads are served from an immutable [`Project`] snapshot. Writes are
//! serialized, saved to disk, and only then published as the new snapshot,
//! so every successful response reflects durable state.

mod error;
mod routes;

use std::future::Future;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use axum::http::{header, Method};
use axum::Router;
use hmreq_core::{load_project, save_project, Lexicon, Project, ProjectError, ValueSpace};
use tokio::net::TcpListener;
use tower_http::cors::{Any, CorsLayer};

pub use error::ApiError;
pub use routes::{
    AssignmentBody, AssignmentView, ConflictPairView, ConflictsView, DroppedView, GroupView, ImportView,
    RequirementSummary, ValueView, ValuesView,
};

#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

struct Inner {
    path: PathBuf,
    lexicon: Lexicon,
    space: &'static ValueSpace,
    snapshot: RwLock<Arc<Project>>,
    writer: tokio::sync::Mutex<()>,
}

impl AppState {
    /// Loads the project at `path`.
    pub fn open(path: &Path, lexicon: Lexicon) -> Result<AppState, ProjectError> {
        let space = ValueSpace::builtin();
        let project = load_project(path, &lexicon, space)?;
        Ok(AppState::with_project(path, lexicon, project))
    }

    /// Serves `project`, saving it to `path` on the first write.
    pub fn with_project(path: &Path, lexicon: Lexicon, project: Project) -> AppState {
        AppState {
            inner: Arc::new(Inner {
                path: path.to_path_buf(),
                lexicon,
                space: ValueSpace::builtin(),
                snapshot: RwLock::new(Arc::new(project)),
                writer: tokio::sync::Mutex::new(()),
            }),
        }
    }

    pub fn snapshot(&self) -> Arc<Project> {
        self.inner.snapshot.read().expect("snapshot lock").clone()
    }

    pub fn path(&self) -> &Path {
        &self.inner.path
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.inner.lexicon
    }

    pub fn space(&self) -> &'static ValueSpace {
        self.inner.space
    }

    /// Runs `change` against the current snapshot with writers serialized.
    /// A new project is saved before it replaces the snapshot.
    pub(crate) async fn update<T>(
        &self,
        change: impl FnOnce(&Project) -> Result<(Project, T), ApiError>,
    ) -> Result<T, ApiError> {
        let _guard = self.inner.writer.lock().await;
        let current = self.snapshot();
        let (next, out) = change(&current)?;
        let path = self.inner.path.clone();
        let next = Arc::new(next);
        let to_save = next.clone();
        tokio::task::spawn_blocking(move || save_project(&to_save, &path))
            .await
            .map_err(|e| ApiError::new(axum::http::StatusCode::INTERNAL_SERVER_ERROR, "persist_failed", e.to_string()))??;
        *self.inner.snapshot.write().expect("snapshot lock") = next;
        Ok(out)
    }
}

pub fn router(state: AppState) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::PUT, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    routes::routes().with_state(state).layer(cors)
}

/// Serves the API on `listener` until `shutdown` resolves. In-flight
/// requests, including their saves, complete before this returns.
pub async fn serve(
    listener: TcpListener,
    state: AppState,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await
}
