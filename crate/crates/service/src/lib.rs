//! Local HTTP/JSON service for interactive front exploration.
//!
//! Sessions hold a base problem and an ordered list of refinements; fronts
//! are sampled by background jobs and cached per refinement version.
//! Everything is persisted as flat JSON files under the data directory.
//! All routes live under `/api/v1`.

pub mod api;
pub mod error;
pub mod jobs;
pub mod session;
pub mod store;

use std::collections::HashMap;
use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use axum::Router;
use tokio::net::TcpListener;
use tokio::sync::Semaphore;

use crate::error::{ApiError, ApiResult};
use crate::jobs::Job;
use crate::session::Session;
use crate::store::Store;

pub const DEFAULT_PORT: u16 = 8765;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub data_dir: PathBuf,
    pub addr: SocketAddr,
    /// Sampling jobs allowed to run at once.
    pub workers: usize,
}

impl ServiceConfig {
    /// Localhost on [`DEFAULT_PORT`] with two job workers.
    pub fn new(data_dir: impl Into<PathBuf>) -> Self {
        Self { data_dir: data_dir.into(), addr: SocketAddr::from(([127, 0, 0, 1], DEFAULT_PORT)), workers: 2 }
    }
}

type SharedSession = Arc<Mutex<Session>>;

struct Inner {
    store: Store,
    sessions: RwLock<HashMap<String, SharedSession>>,
    jobs: RwLock<HashMap<String, Arc<Job>>>,
    workers: Arc<Semaphore>,
}

/// Shared service state; cheap to clone.
#[derive(Clone)]
pub struct AppState(Arc<Inner>);

impl AppState {
    pub fn open(config: &ServiceConfig) -> io::Result<Self> {
        let store = Store::open(&config.data_dir)?;
        Ok(Self(Arc::new(Inner {
            store,
            sessions: RwLock::new(HashMap::new()),
            jobs: RwLock::new(HashMap::new()),
            workers: Arc::new(Semaphore::new(config.workers.max(1))),
        })))
    }

    pub fn store(&self) -> &Store {
        &self.0.store
    }

    pub(crate) fn workers(&self) -> Arc<Semaphore> {
        Arc::clone(&self.0.workers)
    }

    /// Live session by id, loading it from disk on first access.
    pub(crate) async fn session(&self, id: &str) -> ApiResult<SharedSession> {
        if let Some(s) = self.0.sessions.read().unwrap_or_else(|e| e.into_inner()).get(id) {
            return Ok(Arc::clone(s));
        }
        let state = self.store().load_session(id)?.ok_or_else(|| ApiError::not_found("session", id))?;
        let session = tokio::task::spawn_blocking(move || Session::new(state)).await??;
        let mut map = self.0.sessions.write().unwrap_or_else(|e| e.into_inner());
        Ok(Arc::clone(map.entry(id.to_string()).or_insert_with(|| Arc::new(Mutex::new(session)))))
    }

    pub(crate) fn insert_session(&self, session: Session) -> ApiResult<()> {
        self.store().save_session(&session.state)?;
        let id = session.state.id.clone();
        self.0.sessions.write().unwrap_or_else(|e| e.into_inner()).insert(id, Arc::new(Mutex::new(session)));
        Ok(())
    }

    pub(crate) fn insert_job(&self, job: Job) -> Arc<Job> {
        let job = Arc::new(job);
        self.0.jobs.write().unwrap_or_else(|e| e.into_inner()).insert(job.id.clone(), Arc::clone(&job));
        job
    }

    pub(crate) fn job(&self, id: &str) -> ApiResult<Arc<Job>> {
        self.0.jobs.read().unwrap_or_else(|e| e.into_inner()).get(id).cloned().ok_or_else(|| ApiError::not_found("job", id))
    }
}

pub fn router(state: AppState) -> Router {
    Router::new().nest("/api/v1", api::routes()).with_state(state)
}

/// Binds the listener; fails if the port is taken or the data directory is
/// not writable.
pub async fn bind(config: &ServiceConfig) -> io::Result<(TcpListener, Router)> {
    let state = AppState::open(config)?;
    let listener = TcpListener::bind(config.addr).await?;
    Ok((listener, router(state)))
}

pub async fn serve(config: ServiceConfig) -> io::Result<()> {
    let (listener, app) = bind(&config).await?;
    tracing::info!(addr = %listener.local_addr()?, data = %config.data_dir.display(), "serving");
    axum::serve(listener, app).await
}

pub fn now() -> String {
    time::OffsetDateTime::now_utc()
        .format(&time::format_description::well_known::Rfc3339)
        .unwrap_or_default()
}

pub(crate) fn new_id(prefix: &str) -> String {
    format!("{prefix}-{}", uuid::Uuid::new_v4().simple())
}
