//! HTTP handlers under `/api/v1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use axum::extract::{FromRequest, Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use paretoscope_core::front::FrontParameters;
use paretoscope_core::{
    apply_refinements, chebyshev_cross_check, export_front, grid_sample_with, problems, solve_scalarized_with, ExportFormat, GoalKind,
    GoalSpec, GridSpec, MooError, Norm, ObjectiveVector, ProblemSummary, Refinement, ScalarOptions, ScalarSolution, SearchSpace,
    SweepControl,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{ApiError, ApiResult};
use crate::jobs::{Job, JobView};
use crate::session::{SampleMethod, SampleParams, Session, SessionState, VersionRecord};
use crate::{new_id, now, AppState};

/// Largest grid the `grid` sampling method will evaluate and return.
pub const MAX_GRID_SAMPLE_POINTS: usize = 2_000_000;
pub const DEFAULT_DIRECTIONS: usize = 32;
pub const DEFAULT_EPS: f64 = 1e-6;
pub const DEFAULT_GRID_COUNT: usize = 6;

/// `axum::Json` with rejections mapped onto [`ApiError`].
#[derive(FromRequest)]
#[from_request(via(axum::Json), rejection(ApiError))]
pub struct ApiJson<T>(pub T);

pub fn routes() -> Router<AppState> {
    Router::new()
        .route("/problems", get(list_problems))
        .route("/sessions", get(list_sessions).post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/refine", post(refine))
        .route("/sessions/{id}/rollback", post(rollback))
        .route("/sessions/{id}/sample", post(sample))
        .route("/sessions/{id}/scalarize", post(scalarize))
        .route("/sessions/{id}/utopia", get(utopia))
        .route("/jobs/{id}", get(get_job))
        .route("/jobs/{id}/cancel", post(cancel_job))
        .route("/fronts/{id}", get(get_front))
}

async fn list_problems() -> Json<Vec<ProblemSummary>> {
    Json(problems::summaries())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateSession {
    problem: String,
    #[serde(default)]
    params: BTreeMap<String, f64>,
    #[serde(default)]
    grid: Option<GridSpec>,
}

#[derive(Debug, Serialize)]
struct Created {
    session_id: String,
    refinement_version: u64,
}

async fn create_session(State(app): State<AppState>, ApiJson(req): ApiJson<CreateSession>) -> ApiResult<(StatusCode, Json<Created>)> {
    let ts = now();
    let state = SessionState {
        id: new_id("s"),
        problem: req.problem,
        params: req.params,
        grid: req.grid,
        refinements: Vec::new(),
        refinement_version: 0,
        versions: vec![VersionRecord { version: 0, refinements: Vec::new() }],
        fronts: Vec::new(),
        created_at: ts.clone(),
        updated_at: ts,
    };
    let session = tokio::task::spawn_blocking(move || Session::new(state)).await??;
    let out = Created { session_id: session.state.id.clone(), refinement_version: 0 };
    app.insert_session(session)?;
    Ok((StatusCode::CREATED, Json(out)))
}

#[derive(Debug, Serialize)]
struct SessionList {
    sessions: Vec<SessionBrief>,
}

#[derive(Debug, Serialize)]
struct SessionBrief {
    session_id: String,
    problem: String,
    refinement_version: u64,
    updated_at: String,
}

async fn list_sessions(State(app): State<AppState>) -> ApiResult<Json<SessionList>> {
    let stored = app.store().load_sessions()?;
    Ok(Json(SessionList {
        sessions: stored
            .into_iter()
            .map(|s| SessionBrief { session_id: s.id, problem: s.problem, refinement_version: s.refinement_version, updated_at: s.updated_at })
            .collect(),
    }))
}

async fn get_session(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<SessionState>> {
    let session = app.session(&id).await?;
    let state = session.lock().unwrap_or_else(|e| e.into_inner()).state.clone();
    Ok(Json(state))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RefineRequest {
    refinements: Vec<Refinement>,
}

#[derive(Debug, Serialize)]
struct RefineResponse {
    refinement_version: u64,
    refinements: Vec<Refinement>,
}

/// Appends refinements; the session is unchanged on error.
async fn refine(State(app): State<AppState>, Path(id): Path<String>, ApiJson(req): ApiJson<RefineRequest>) -> ApiResult<Json<RefineResponse>> {
    if req.refinements.is_empty() {
        return Err(ApiError::BadRequest("refinements must not be empty".into()));
    }
    let session = app.session(&id).await?;
    let (mut list, version) = {
        let s = session.lock().unwrap_or_else(|e| e.into_inner());
        (s.state.refinements.clone(), s.version())
    };
    list.extend(req.refinements);
    update_refinements(&app, &session, list, version).await.map(Json)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RollbackRequest {
    version: u64,
}

/// Restores the refinement list of an earlier version under a new version.
async fn rollback(State(app): State<AppState>, Path(id): Path<String>, ApiJson(req): ApiJson<RollbackRequest>) -> ApiResult<Json<RefineResponse>> {
    let session = app.session(&id).await?;
    let (list, version) = {
        let s = session.lock().unwrap_or_else(|e| e.into_inner());
        let rec = s.state.version_record(req.version).ok_or_else(|| ApiError::not_found("version", req.version.to_string()))?;
        (rec.refinements.clone(), s.version())
    };
    update_refinements(&app, &session, list, version).await.map(Json)
}

async fn update_refinements(
    app: &AppState,
    session: &Arc<std::sync::Mutex<Session>>,
    list: Vec<Refinement>,
    seen_version: u64,
) -> ApiResult<RefineResponse> {
    let (problem, grid) = {
        let s = session.lock().unwrap_or_else(|e| e.into_inner());
        (s.base.problem.clone(), s.base.grid.clone())
    };
    let candidate = list.clone();
    let refined = tokio::task::spawn_blocking(move || apply_refinements(&problem, &candidate, &grid)).await??;
    let state = {
        let mut s = session.lock().unwrap_or_else(|e| e.into_inner());
        if s.version() != seen_version {
            return Err(ApiError::Conflict("session was refined concurrently; retry".into()));
        }
        s.commit_refinements(list, refined, now());
        s.state.clone()
    };
    app.store().save_session(&state)?;
    Ok(RefineResponse { refinement_version: state.refinement_version, refinements: state.refinements })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleRequest {
    method: SampleMethod,
    #[serde(default)]
    count: Option<usize>,
    #[serde(default)]
    grid: Option<GridSpec>,
    #[serde(default)]
    eps: Option<f64>,
}

#[derive(Debug, Serialize)]
struct JobCreated {
    job_id: String,
}

fn normalize(req: SampleRequest, dimension: usize) -> ApiResult<SampleParams> {
    match req.method {
        SampleMethod::Direction => {
            if req.grid.is_some() {
                return Err(ApiError::BadRequest("direction sampling uses the session search grid; drop `grid`".into()));
            }
            let count = req.count.unwrap_or(DEFAULT_DIRECTIONS);
            if count == 0 {
                return Err(ApiError::BadRequest("count must be positive".into()));
            }
            let eps = req.eps.unwrap_or(DEFAULT_EPS);
            if !(eps.is_finite() && eps > 0.0) {
                return Err(MooError::InvalidTolerance(eps).into());
            }
            Ok(SampleParams { method: SampleMethod::Direction, count: Some(count), grid: None, eps: Some(eps) })
        }
        SampleMethod::Grid => {
            if req.eps.is_some() {
                return Err(ApiError::BadRequest("grid sampling takes no eps".into()));
            }
            let grid = match (req.grid, req.count) {
                (Some(_), Some(_)) => return Err(ApiError::BadRequest("give either `grid` or `count`, not both".into())),
                (Some(g), None) => g,
                (None, c) => GridSpec::uniform(dimension, c.unwrap_or(DEFAULT_GRID_COUNT)),
            };
            Ok(SampleParams { method: SampleMethod::Grid, count: None, grid: Some(grid), eps: None })
        }
    }
}

async fn sample(
    State(app): State<AppState>,
    Path(id): Path<String>,
    ApiJson(req): ApiJson<SampleRequest>,
) -> ApiResult<(StatusCode, Json<JobCreated>)> {
    let session = app.session(&id).await?;
    let (params, cached, version) = {
        let s = session.lock().unwrap_or_else(|e| e.into_inner());
        let params = normalize(req, s.problem().dimension())?;
        if let Some(g) = &params.grid {
            let len = g.resolve(s.problem())?.len();
            if len > MAX_GRID_SAMPLE_POINTS {
                return Err(MooError::InvalidGrid(format!("{len} points exceeds the limit of {MAX_GRID_SAMPLE_POINTS}")).into());
            }
        }
        let cached = s.state.cached_front(&params).map(|c| c.front_id.clone());
        (params, cached, s.version())
    };
    let total = params.count.unwrap_or(1);
    let job_id = new_id("j");
    if let Some(front_id) = cached {
        app.insert_job(Job::from_cache(job_id.clone(), id, now(), front_id, total));
        return Ok((StatusCode::ACCEPTED, Json(JobCreated { job_id })));
    }
    let job = app.insert_job(Job::new(job_id.clone(), id, now(), total));
    let worker = app.clone();
    tokio::spawn(async move {
        let Ok(_permit) = worker.workers().acquire_owned().await else { return };
        if !job.start() {
            return;
        }
        let runner = worker.clone();
        let task = job.clone();
        let outcome = tokio::task::spawn_blocking(move || run_sample(&runner, &session, &task, params, version)).await;
        match outcome {
            Ok(Ok(front_id)) => job.finish(front_id, now()),
            Ok(Err(e)) => job.fail(e.code(), e.to_string(), now()),
            Err(e) => job.fail("internal", e.to_string(), now()),
        }
    });
    Ok((StatusCode::ACCEPTED, Json(JobCreated { job_id })))
}

/// Search space for the session's current version, built outside the lock.
fn session_space(session: &std::sync::Mutex<Session>) -> Result<(Arc<SearchSpace>, u64), ApiError> {
    let (problem, grid, version) = {
        let s = session.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(space) = s.space() {
            return Ok((space, s.version()));
        }
        (s.current.problem.clone(), s.current.grid.clone(), s.version())
    };
    let space = Arc::new(SearchSpace::new(&problem, &grid)?);
    session.lock().unwrap_or_else(|e| e.into_inner()).store_space(version, Arc::clone(&space));
    Ok((space, version))
}

fn base_space(session: &std::sync::Mutex<Session>) -> Result<Arc<SearchSpace>, ApiError> {
    let base = {
        let s = session.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(space) = s.base_space() {
            return Ok(space);
        }
        s.base.clone()
    };
    let space = Arc::new(SearchSpace::new(&base.problem, &base.grid)?);
    session.lock().unwrap_or_else(|e| e.into_inner()).store_base_space(Arc::clone(&space));
    Ok(space)
}

fn run_sample(app: &AppState, session: &std::sync::Mutex<Session>, job: &Job, params: SampleParams, version: u64) -> ApiResult<String> {
    let mut front = match params.method {
        SampleMethod::Direction => {
            let (space, built_for) = session_space(session)?;
            if built_for != version {
                return Err(ApiError::Conflict("session was refined while the job was queued".into()));
            }
            let progress = |done: usize, total: usize| job.set_progress(done, total);
            let control = SweepControl { progress: Some(&progress), cancel: Some(&job.cancel) };
            let frame = base_space(session)?;
            space.sample_front_in(&frame, params.count.unwrap_or(DEFAULT_DIRECTIONS), params.eps.unwrap_or(DEFAULT_EPS), control)?
        }
        SampleMethod::Grid => {
            let problem = {
                let s = session.lock().unwrap_or_else(|e| e.into_inner());
                if s.version() != version {
                    return Err(ApiError::Conflict("session was refined while the job was queued".into()));
                }
                s.current.problem.clone()
            };
            let grid = params.grid.clone().unwrap_or_else(|| GridSpec::uniform(problem.dimension(), DEFAULT_GRID_COUNT));
            let mut front = grid_sample_with(&problem, &grid, paretoscope_core::Execution::Parallel)?;
            front.parameters = Some(FrontParameters::Grid { grid });
            front
        }
    };
    front.refinement_version = version;
    let front_id = new_id("f");
    app.store().save_front(&front_id, &front)?;
    let state = {
        let mut s = session.lock().unwrap_or_else(|e| e.into_inner());
        s.state.fronts.push(crate::session::CachedFront { params, refinement_version: version, front_id: front_id.clone() });
        s.state.updated_at = now();
        s.state.clone()
    };
    app.store().save_session(&state)?;
    Ok(front_id)
}

/// Weights or a reference point: explicit values or the `"utopia"` token.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Vector {
    Values(Vec<f64>),
    Token(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarizeRequest {
    kind: GoalKind,
    #[serde(default)]
    weights: Option<Vector>,
    #[serde(default)]
    reference: Option<Vector>,
    #[serde(default)]
    p: Option<Value>,
    #[serde(default)]
    refine_levels: Option<usize>,
}

fn resolve_vector(v: Vector, utopia: &[f64], what: &str) -> ApiResult<Vec<f64>> {
    match v {
        Vector::Values(v) => Ok(v),
        Vector::Token(t) if t == "utopia" => Ok(utopia.to_vec()),
        Vector::Token(t) => Err(ApiError::BadRequest(format!("{what}: expected a list of numbers or \"utopia\", got `{t}`"))),
    }
}

async fn scalarize(
    State(app): State<AppState>,
    Path(id): Path<String>,
    ApiJson(req): ApiJson<ScalarizeRequest>,
) -> ApiResult<Json<ScalarSolution>> {
    let session = app.session(&id).await?;
    let out = tokio::task::spawn_blocking(move || -> ApiResult<ScalarSolution> {
        let (space, _) = session_space(&session)?;
        let utopia = space.utopia_values();
        let goal = match req.kind {
            GoalKind::Distance => {
                if req.weights.is_some() {
                    return Err(ApiError::BadRequest("distance goals take `reference`, not `weights`".into()));
                }
                let reference = req.reference.ok_or_else(|| ApiError::BadRequest("distance goals need `reference`".into()))?;
                let norm = match req.p {
                    None => Norm::default(),
                    Some(Value::String(s)) => s.parse()?,
                    Some(Value::Number(n)) => n.to_string().parse()?,
                    Some(other) => return Err(ApiError::BadRequest(format!("p must be 1, 2 or \"inf\", got {other}"))),
                };
                GoalSpec::distance(resolve_vector(reference, utopia, "reference")?, norm)?
            }
            kind => {
                if req.reference.is_some() || req.p.is_some() {
                    return Err(ApiError::BadRequest("`reference` and `p` apply to distance goals only".into()));
                }
                let weights = req.weights.ok_or_else(|| ApiError::BadRequest("weighted goals need `weights`".into()))?;
                GoalSpec::weighted(kind, resolve_vector(weights, utopia, "weights")?)?
            }
        };
        let opts = ScalarOptions { refine_levels: req.refine_levels.unwrap_or(0), cross_check_eps: None, ..ScalarOptions::default() };
        let mut sol = solve_scalarized_with(space.problem(), &goal, space.grid_spec(), &opts)?;
        if goal.kind == GoalKind::Chebyshev {
            let check = chebyshev_cross_check(&space, &goal.weights, sol.value, paretoscope_core::scalar::CROSS_CHECK_EPS)?;
            sol.diagnostics.chebyshev_check = Some(check);
        }
        Ok(sol)
    })
    .await??;
    Ok(Json(out))
}

async fn utopia(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<ObjectiveVector>> {
    let session = app.session(&id).await?;
    let point = tokio::task::spawn_blocking(move || session_space(&session).map(|(s, _)| s.utopia().point)).await??;
    Ok(Json(point))
}

async fn get_job(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<JobView>> {
    let job = app.job(&id)?;
    let front = match job.front_id() {
        Some(fid) => app.store().load_front(&fid)?,
        None => None,
    };
    Ok(Json(job.view(front)))
}

async fn cancel_job(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<JobView>> {
    let job = app.job(&id)?;
    if !job.status().is_finished() {
        job.request_cancel(now());
    }
    Ok(Json(job.view(None)))
}

#[derive(Debug, Deserialize)]
struct FormatQuery {
    #[serde(default)]
    format: Option<String>,
}

async fn get_front(State(app): State<AppState>, Path(id): Path<String>, query: Result<Query<FormatQuery>, axum::extract::rejection::QueryRejection>) -> ApiResult<Response> {
    let Query(q) = query?;
    let format: ExportFormat = q.format.as_deref().unwrap_or("json").parse()?;
    let front = app.store().load_front(&id)?.ok_or_else(|| ApiError::not_found("front", id))?;
    let bytes = export_front(&front, format)?;
    let content_type = match format {
        ExportFormat::Json => "application/json",
        ExportFormat::Csv => "text/csv; charset=utf-8",
    };
    Ok(([(header::CONTENT_TYPE, content_type)], bytes).into_response())
}
