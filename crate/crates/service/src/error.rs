use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use paretoscope_core::MooError;
use serde::Serialize;

/// Service errors. Every variant maps to a stable machine-readable code.
#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("{0}")]
    BadRequest(String),

    #[error("{kind} `{id}` not found")]
    NotFound { kind: &'static str, id: String },

    #[error(transparent)]
    Model(#[from] MooError),

    #[error("{0}")]
    Conflict(String),

    #[error("storage: {0}")]
    Storage(#[from] std::io::Error),

    #[error("internal: {0}")]
    Internal(String),
}

#[derive(Serialize)]
struct Body<'a> {
    error: Detail<'a>,
}

#[derive(Serialize)]
struct Detail<'a> {
    code: &'a str,
    message: String,
}

impl ApiError {
    pub fn not_found(kind: &'static str, id: impl Into<String>) -> Self {
        ApiError::NotFound { kind, id: id.into() }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ApiError::BadRequest(_) => "bad_request",
            ApiError::NotFound { .. } => "not_found",
            ApiError::Conflict(_) => "conflict",
            ApiError::Storage(_) => "storage",
            ApiError::Internal(_) => "internal",
            ApiError::Model(e) => match e {
                MooError::DimensionMismatch { .. } => "dimension_mismatch",
                MooError::InvalidProblem(_) => "invalid_problem",
                MooError::InvalidGoal(_) => "invalid_goal",
                MooError::InvalidGrid(_) | MooError::EmptyGrid => "invalid_grid",
                MooError::InvalidDirection(_) | MooError::UnsupportedObjectiveCount(_) => "invalid_direction",
                MooError::InvalidTolerance(_) => "invalid_tolerance",
                MooError::NotANumber | MooError::EmptyInput => "invalid_input",
                MooError::AllInfeasible(_) => "all_infeasible",
                MooError::OverConstrained(_) => "over_constrained",
                MooError::InvalidRefinement(_) => "invalid_refinement",
                MooError::InvalidParameter(_) => "invalid_parameter",
                MooError::InfeasiblePoint(_) => "infeasible_point",
                MooError::UnknownFormat(_) => "unknown_format",
                MooError::Cancelled => "cancelled",
                MooError::LambdaMaxTooSmall(_) | MooError::Serialization(_) => "internal",
            },
        }
    }

    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::NotFound { .. } => StatusCode::NOT_FOUND,
            ApiError::Conflict(_) => StatusCode::CONFLICT,
            ApiError::Storage(_) | ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
            ApiError::Model(MooError::OverConstrained(_)) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::Model(MooError::LambdaMaxTooSmall(_) | MooError::Serialization(_)) => StatusCode::INTERNAL_SERVER_ERROR,
            ApiError::Model(_) => StatusCode::BAD_REQUEST,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = self.status();
        if status.is_server_error() {
            tracing::error!(error = %self, "request failed");
        }
        let body = Body { error: Detail { code: self.code(), message: self.to_string() } };
        (status, Json(body)).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::BadRequest(r.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> Self {
        ApiError::BadRequest(r.body_text())
    }
}

impl From<tokio::task::JoinError> for ApiError {
    fn from(e: tokio::task::JoinError) -> Self {
        ApiError::Internal(e.to_string())
    }
}

pub type ApiResult<T> = Result<T, ApiError>;
