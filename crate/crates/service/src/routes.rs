use axum::body::Bytes;
use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{StatusCode, Uri};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use chrono::Utc;
use hmreq_core::project::{format_timestamp, DroppedAssignment};
use hmreq_core::render::render_requirement;
use hmreq_core::values::QuartileThresholds;
use hmreq_core::{from_json, Quartile, ValueAssignment, ValueGroup};
use serde::{Deserialize, Serialize};

use crate::{ApiError, AppState};

pub(crate) fn routes() -> Router<AppState> {
    Router::new()
        .route("/api/requirements", get(list_requirements))
        .route("/api/requirements/{id}/conflicts", get(conflicts))
        .route("/api/requirements/{id}/assignments/{stakeholder}", put(put_assignment))
        .route("/api/values", get(values))
        .route("/api/values/quartiles", get(quartiles))
        .route("/api/import", post(import))
        .fallback(not_found)
        .method_not_allowed_fallback(method_not_allowed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RequirementSummary {
    pub id: String,
    pub rendered_text: String,
    pub stakeholders: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub average_conflict: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub highlight_intensity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AssignmentView {
    pub requirement_id: String,
    pub stakeholder_id: String,
    pub value_id: String,
    pub statement: String,
    pub updated_at: String,
    pub revision: u64,
}

impl From<&ValueAssignment> for AssignmentView {
    fn from(a: &ValueAssignment) -> Self {
        AssignmentView {
            requirement_id: a.requirement_id.clone(),
            stakeholder_id: a.stakeholder_id.clone(),
            value_id: a.value_id.clone(),
            statement: a.statement.clone(),
            updated_at: format_timestamp(a.updated_at),
            revision: a.revision,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConflictPairView {
    pub stakeholder_a: String,
    pub stakeholder_b: String,
    pub value_a: String,
    pub value_b: String,
    pub statement_a: String,
    pub statement_b: String,
    pub score: f64,
    pub quartile: Quartile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConflictsView {
    pub requirement_id: String,
    pub pairs: Vec<ConflictPairView>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub average: Option<f64>,
    pub assignments: Vec<AssignmentView>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AssignmentBody {
    pub value_id: String,
    pub statement: String,
    pub revision: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValueView {
    pub id: String,
    pub label: String,
    pub group: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupView {
    pub id: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuesView {
    pub version: String,
    pub groups: Vec<GroupView>,
    pub values: Vec<ValueView>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DroppedView {
    pub requirement_id: String,
    pub stakeholder_id: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportView {
    pub requirements: usize,
    pub dropped: Vec<DroppedView>,
}

async fn list_requirements(State(state): State<AppState>) -> Result<Json<Vec<RequirementSummary>>, ApiError> {
    let project = state.snapshot();
    let mut out = Vec::with_capacity(project.document.requirements.len());
    for r in &project.document.requirements {
        let report = project
            .conflicts(&r.id, state.space())
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "invalid_project", e.to_string()))?;
        out.push(RequirementSummary {
            id: r.id.clone(),
            rendered_text: render_requirement(r),
            stakeholders: r.stakeholder_names().map(str::to_owned).collect(),
            average_conflict: report.average,
            highlight_intensity: report.average.map(|a| a.clamp(0.0, 1.0)),
        });
    }
    Ok(Json(out))
}

async fn conflicts(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<ConflictsView>, ApiError> {
    let project = state.snapshot();
    if project.document.requirement(&id).is_none() {
        return Err(ApiError::unknown_requirement(&id));
    }
    let report = project
        .conflicts(&id, state.space())
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "invalid_project", e.to_string()))?;
    let statement = |stakeholder: &str| {
        project
            .assignment(&id, stakeholder)
            .map(|a| a.statement.clone())
            .unwrap_or_default()
    };
    let pairs = report
        .pairs
        .iter()
        .map(|p| ConflictPairView {
            stakeholder_a: p.stakeholder_a.clone(),
            stakeholder_b: p.stakeholder_b.clone(),
            value_a: p.value_a.clone(),
            value_b: p.value_b.clone(),
            statement_a: statement(&p.stakeholder_a),
            statement_b: statement(&p.stakeholder_b),
            score: p.score,
            quartile: p.quartile,
        })
        .collect();
    Ok(Json(ConflictsView {
        assignments: project.assignments_for(&id).map(AssignmentView::from).collect(),
        requirement_id: id,
        pairs,
        average: report.average,
    }))
}

async fn put_assignment(
    State(state): State<AppState>,
    Path((id, stakeholder)): Path<(String, String)>,
    body: Result<Json<AssignmentBody>, JsonRejection>,
) -> Result<Json<AssignmentView>, ApiError> {
    let Json(body) = body.map_err(|e| ApiError::invalid_body(e.body_text()))?;
    let space = state.space();
    let stored = state
        .update(|project| {
            if project.document.requirement(&id).is_none() {
                return Err(ApiError::unknown_requirement(&id));
            }
            let assignment = ValueAssignment {
                requirement_id: id.clone(),
                stakeholder_id: stakeholder.clone(),
                value_id: body.value_id,
                statement: body.statement,
                updated_at: Utc::now(),
                revision: body.revision,
            };
            let view = AssignmentView::from(&assignment);
            let next = project.upsert_assignment(assignment, space)?;
            Ok((next, view))
        })
        .await?;
    Ok(Json(stored))
}

async fn values(State(state): State<AppState>) -> Json<ValuesView> {
    let space = state.space();
    Json(ValuesView {
        version: space.version().to_string(),
        groups: ValueGroup::ALL
            .iter()
            .map(|g| GroupView {
                id: g.id().to_string(),
                label: g.label().to_string(),
            })
            .collect(),
        values: space
            .values()
            .iter()
            .map(|v| ValueView {
                id: v.id.clone(),
                label: v.label.clone(),
                group: v.group.id().to_string(),
                x: v.x,
                y: v.y,
            })
            .collect(),
    })
}

async fn quartiles(State(state): State<AppState>) -> Json<QuartileThresholds> {
    Json(state.space().thresholds())
}

async fn import(State(state): State<AppState>, body: Bytes) -> Result<Json<ImportView>, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::invalid_body(format!("body is not UTF-8: {e}")))?;
    let document = from_json(text, state.lexicon())?;
    let view = state
        .update(|project| {
            let (next, dropped) = project.replace_document(document);
            let view = ImportView {
                requirements: next.document.requirements.len(),
                dropped: dropped.into_iter().map(dropped_view).collect(),
            };
            Ok((next, view))
        })
        .await?;
    Ok(Json(view))
}

fn dropped_view(d: DroppedAssignment) -> DroppedView {
    DroppedView {
        requirement_id: d.requirement_id,
        stakeholder_id: d.stakeholder_id,
    }
}

async fn not_found(uri: Uri) -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("no route for {}", uri.path()))
}

async fn method_not_allowed() -> ApiError {
    ApiError::new(StatusCode::METHOD_NOT_ALLOWED, "method_not_allowed", "method not allowed for this route")
}
