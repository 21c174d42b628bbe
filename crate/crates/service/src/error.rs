use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use hmreq_core::project::UpsertError;
use hmreq_core::{ImportError, ProjectError};
use serde::Serialize;

/// Body of every non-2xx response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ApiError {
    pub http_status: u16,
    pub code: String,
    pub detail: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: impl Into<String>, detail: impl Into<String>) -> Self {
        ApiError {
            http_status: status.as_u16(),
            code: code.into(),
            detail: detail.into(),
        }
    }

    pub fn status(&self) -> StatusCode {
        StatusCode::from_u16(self.http_status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR)
    }

    pub fn unknown_requirement(id: &str) -> Self {
        ApiError::new(
            StatusCode::NOT_FOUND,
            "unknown_requirement",
            format!("no requirement with id `{id}`"),
        )
    }

    pub fn invalid_body(detail: impl Into<String>) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_body", detail)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status(), Json(self)).into_response()
    }
}

impl From<UpsertError> for ApiError {
    fn from(e: UpsertError) -> Self {
        let (status, code) = match &e {
            UpsertError::UnknownRequirement(_) => (StatusCode::NOT_FOUND, "unknown_requirement"),
            UpsertError::StakeholderNotRelevant { .. } => {
                (StatusCode::UNPROCESSABLE_ENTITY, "stakeholder_not_relevant")
            }
            UpsertError::UnknownValue(_) => (StatusCode::UNPROCESSABLE_ENTITY, "unknown_value"),
            UpsertError::StaleRevision { .. } => (StatusCode::CONFLICT, "stale_revision"),
        };
        ApiError::new(status, code, e.to_string())
    }
}

impl From<ImportError> for ApiError {
    fn from(e: ImportError) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.code.as_str(), e.to_string())
    }
}

impl From<ProjectError> for ApiError {
    fn from(e: ProjectError) -> Self {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "persist_failed", e.to_string())
    }
}
