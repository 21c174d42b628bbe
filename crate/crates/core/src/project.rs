//! Project files: a requirement document plus stakeholder value assignments.
//!
//! A [`Project`] is an immutable value; mutations return a new project.
//! Files are written canonically (pretty JSON, fixed key order, trailing
//! newline) via a temporary file renamed into place.

use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::RequirementDocument;
use crate::export::{DocumentRecord, ImportError, SCHEMA_VERSION};
use crate::lexicon::Lexicon;
use crate::values::{requirement_conflicts, ConflictReport, ValueError, ValueSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueAssignment {
    pub requirement_id: String,
    pub stakeholder_id: String,
    pub value_id: String,
    pub statement: String,
    pub updated_at: DateTime<Utc>,
    pub revision: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Project {
    pub schema_version: String,
    pub document: RequirementDocument,
    pub assignments: Vec<ValueAssignment>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntegrityError {
    #[error("assignment {index}: unknown requirement `{requirement}`")]
    UnknownRequirement { index: usize, requirement: String },
    #[error("assignment {index}: stakeholder `{stakeholder}` is not relevant for {requirement}")]
    StakeholderNotRelevant {
        index: usize,
        requirement: String,
        stakeholder: String,
    },
    #[error("assignment {index}: unknown value `{value}`")]
    UnknownValue { index: usize, value: String },
    #[error("assignment {index}: second assignment for ({requirement}, {stakeholder})")]
    Duplicate {
        index: usize,
        requirement: String,
        stakeholder: String,
    },
    #[error("assignment {index}: revision must be at least 1")]
    ZeroRevision { index: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UpsertError {
    #[error("unknown requirement `{0}`")]
    UnknownRequirement(String),
    #[error("stakeholder `{stakeholder}` is not a relevant stakeholder of {requirement}")]
    StakeholderNotRelevant {
        requirement: String,
        stakeholder: String,
    },
    #[error("unknown value `{0}`")]
    UnknownValue(String),
    #[error("stale revision {given}: expected {expected}")]
    StaleRevision { expected: u64, given: u64 },
}

#[derive(Debug, Error)]
pub enum ProjectError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: corrupt project file at byte {offset}: {message}")]
    Corrupt {
        path: PathBuf,
        offset: usize,
        message: String,
    },
    #[error("{path}: unsupported schema version {found:?} (this build reads {SCHEMA_VERSION:?})")]
    Version { path: PathBuf, found: String },
    #[error("{path}: invalid project at {at}: {message}")]
    Invalid {
        path: PathBuf,
        at: String,
        message: String,
    },
    #[error("{path}: {source}")]
    Integrity {
        path: PathBuf,
        #[source]
        source: IntegrityError,
    },
}

/// An assignment removed because its requirement or stakeholder no longer
/// exists after an import.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DroppedAssignment {
    pub requirement_id: String,
    pub stakeholder_id: String,
}

impl Project {
    pub fn new(document: RequirementDocument) -> Self {
        Project {
            schema_version: SCHEMA_VERSION.to_string(),
            document,
            assignments: Vec::new(),
        }
    }

    pub fn assignment(&self, requirement: &str, stakeholder: &str) -> Option<&ValueAssignment> {
        self.assignments
            .iter()
            .find(|a| a.requirement_id == requirement && a.stakeholder_id == stakeholder)
    }

    pub fn assignments_for<'a>(&'a self, requirement: &'a str) -> impl Iterator<Item = &'a ValueAssignment> {
        self.assignments
            .iter()
            .filter(move |a| a.requirement_id == requirement)
    }

    /// Referential integrity of every assignment.
    pub fn check_integrity(&self, space: &ValueSpace) -> Result<(), IntegrityError> {
        let mut seen = HashSet::new();
        for (index, a) in self.assignments.iter().enumerate() {
            let Some(req) = self.document.requirement(&a.requirement_id) else {
                return Err(IntegrityError::UnknownRequirement {
                    index,
                    requirement: a.requirement_id.clone(),
                });
            };
            if !req.lists_stakeholder(&a.stakeholder_id) {
                return Err(IntegrityError::StakeholderNotRelevant {
                    index,
                    requirement: a.requirement_id.clone(),
                    stakeholder: a.stakeholder_id.clone(),
                });
            }
            if !space.contains(&a.value_id) {
                return Err(IntegrityError::UnknownValue {
                    index,
                    value: a.value_id.clone(),
                });
            }
            if a.revision == 0 {
                return Err(IntegrityError::ZeroRevision { index });
            }
            if !seen.insert((&a.requirement_id, &a.stakeholder_id)) {
                return Err(IntegrityError::Duplicate {
                    index,
                    requirement: a.requirement_id.clone(),
                    stakeholder: a.stakeholder_id.clone(),
                });
            }
        }
        Ok(())
    }

    /// Stores `assignment` if its revision is exactly one past the stored
    /// revision for the same (requirement, stakeholder), or 1 when none is
    /// stored.
    pub fn upsert_assignment(
        &self,
        assignment: ValueAssignment,
        space: &ValueSpace,
    ) -> Result<Project, UpsertError> {
        let req = self
            .document
            .requirement(&assignment.requirement_id)
            .ok_or_else(|| UpsertError::UnknownRequirement(assignment.requirement_id.clone()))?;
        if !req.lists_stakeholder(&assignment.stakeholder_id) {
            return Err(UpsertError::StakeholderNotRelevant {
                requirement: assignment.requirement_id,
                stakeholder: assignment.stakeholder_id,
            });
        }
        if !space.contains(&assignment.value_id) {
            return Err(UpsertError::UnknownValue(assignment.value_id));
        }

        let prior = self.assignments.iter().position(|a| {
            a.requirement_id == assignment.requirement_id
                && a.stakeholder_id == assignment.stakeholder_id
        });
        let expected = prior.map_or(1, |i| self.assignments[i].revision + 1);
        if assignment.revision != expected {
            return Err(UpsertError::StaleRevision {
                expected,
                given: assignment.revision,
            });
        }

        let mut next = self.clone();
        match prior {
            Some(i) => next.assignments[i] = assignment,
            None => next.assignments.push(assignment),
        }
        Ok(next)
    }

    /// Replaces the document, keeping assignments that still refer to an
    /// existing requirement and one of its relevant stakeholders.
    pub fn replace_document(&self, document: RequirementDocument) -> (Project, Vec<DroppedAssignment>) {
        let (kept, dropped): (Vec<_>, Vec<_>) = self.assignments.iter().cloned().partition(|a| {
            document
                .requirement(&a.requirement_id)
                .is_some_and(|r| r.lists_stakeholder(&a.stakeholder_id))
        });
        let project = Project {
            schema_version: self.schema_version.clone(),
            document,
            assignments: kept,
        };
        let dropped = dropped
            .into_iter()
            .map(|a| DroppedAssignment {
                requirement_id: a.requirement_id,
                stakeholder_id: a.stakeholder_id,
            })
            .collect();
        (project, dropped)
    }

    pub fn conflicts(&self, requirement: &str, space: &ValueSpace) -> Result<ConflictReport, ValueError> {
        requirement_conflicts(
            self.assignments_for(requirement)
                .map(|a| (a.stakeholder_id.as_str(), a.value_id.as_str())),
            space,
        )
    }

    /// Canonical file contents.
    pub fn to_file_text(&self) -> String {
        let record = ProjectRecord {
            schema_version: self.schema_version.clone(),
            document: DocumentRecord::from_document(&self.document),
            assignments: self.assignments.iter().map(AssignmentRecord::from).collect(),
        };
        let mut text = serde_json::to_string_pretty(&record).expect("project serializes");
        text.push('\n');
        text
    }

    pub fn from_file_text(
        text: &str,
        path: &Path,
        lexicon: &Lexicon,
        space: &ValueSpace,
    ) -> Result<Project, ProjectError> {
        let path_buf = || path.to_path_buf();
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| ProjectError::Corrupt {
            path: path_buf(),
            offset: if e.is_eof() {
                text.len()
            } else {
                byte_offset(text, e.line(), e.column())
            },
            message: e.to_string(),
        })?;
        match value.get("schemaVersion").and_then(|v| v.as_str()) {
            Some(SCHEMA_VERSION) => {}
            Some(other) => {
                return Err(ProjectError::Version {
                    path: path_buf(),
                    found: other.to_string(),
                })
            }
            None => {
                return Err(ProjectError::Invalid {
                    path: path_buf(),
                    at: "schemaVersion".into(),
                    message: "missing or not a string".into(),
                })
            }
        }
        let record: ProjectRecord = serde_path_to_error::deserialize(value).map_err(|e| {
            ProjectError::Invalid {
                path: path_buf(),
                at: e.path().to_string(),
                message: e.into_inner().to_string(),
            }
        })?;
        let document = record
            .document
            .into_document(lexicon)
            .map_err(|e: ImportError| {
                let e = e.within("document");
                ProjectError::Invalid {
                    path: path_buf(),
                    at: e.path,
                    message: format!("{}: {}", e.code, e.message),
                }
            })?;
        let assignments = record
            .assignments
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                a.into_assignment().map_err(|message| ProjectError::Invalid {
                    path: path_buf(),
                    at: format!("assignments[{i}].updatedAt"),
                    message,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let project = Project {
            schema_version: record.schema_version,
            document,
            assignments,
        };
        project
            .check_integrity(space)
            .map_err(|source| ProjectError::Integrity {
                path: path_buf(),
                source,
            })?;
        Ok(project)
    }
}

pub fn save_project(project: &Project, path: &Path) -> Result<(), ProjectError> {
    let io = |source| ProjectError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(project.to_file_text().as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn load_project(path: &Path, lexicon: &Lexicon, space: &ValueSpace) -> Result<Project, ProjectError> {
    let bytes = std::fs::read(path).map_err(|source| ProjectError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8(bytes).map_err(|e| ProjectError::Corrupt {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
        message: "invalid UTF-8".into(),
    })?;
    Project::from_file_text(&text, path, lexicon, space)
}

/// serde_json reports 1-based lines and byte columns; column 0 means the
/// error sits at the end of the previous line.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum::<usize>();
    (line_start + column.saturating_sub(1)).min(text.len())
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ProjectRecord {
    schema_version: String,
    document: DocumentRecord,
    assignments: Vec<AssignmentRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct AssignmentRecord {
    requirement_id: String,
    stakeholder_id: String,
    value_id: String,
    statement: String,
    updated_at: String,
    revision: u64,
}

impl From<&ValueAssignment> for AssignmentRecord {
    fn from(a: &ValueAssignment) -> Self {
        AssignmentRecord {
            requirement_id: a.requirement_id.clone(),
            stakeholder_id: a.stakeholder_id.clone(),
            value_id: a.value_id.clone(),
            statement: a.statement.clone(),
            updated_at: format_timestamp(a.updated_at),
            revision: a.revision,
        }
    }
}

impl AssignmentRecord {
    fn into_assignment(self) -> Result<ValueAssignment, String> {
        let updated_at = parse_timestamp(&self.updated_at)?;
        Ok(ValueAssignment {
            requirement_id: self.requirement_id,
            stakeholder_id: self.stakeholder_id,
            value_id: self.value_id,
            statement: self.statement,
            updated_at,
            revision: self.revision,
        })
    }
}

/// RFC 3339 in UTC with as many fractional digits as needed.
pub fn format_timestamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::AutoSi, true)
}

pub fn parse_timestamp(s: &str) -> Result<DateTime<Utc>, String> {
    DateTime::parse_from_rfc3339(s)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|e| format!("invalid RFC 3339 timestamp {s:?}: {e}"))
}
