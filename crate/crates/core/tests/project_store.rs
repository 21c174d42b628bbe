use std::path::{Path, PathBuf};

use chrono::{DateTime, TimeZone, Utc};
use hmreq_core::project::{load_project, save_project, UpsertError};
use hmreq_core::{check, Lexicon, Project, RequirementDocument, SourceDocument, ValueAssignment, ValueSpace};
use proptest::prelude::*;

fn corpus_doc(name: &str) -> RequirementDocument {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/valid").join(name);
    let src = SourceDocument::from_path(&path).unwrap();
    check(&src, &Lexicon::seed()).document.unwrap().without_spans()
}

fn motivating_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/projects/motivating.hmreq-project")
}

#[test]
fn motivating_project_loads_and_is_canonical() {
    let path = motivating_path();
    let p = load_project(&path, &Lexicon::seed(), ValueSpace::builtin()).unwrap();
    assert_eq!(p.assignments.len(), 3);
    assert_eq!(p.to_file_text(), std::fs::read_to_string(&path).unwrap());

    let report = p.conflicts("R1", ValueSpace::builtin()).unwrap();
    assert_eq!(report.pairs.len(), 3);
    let fa = &report.pairs[0];
    assert_eq!((fa.value_a.as_str(), fa.value_b.as_str()), ("freedom", "authority"));
    assert!((fa.score - 0.55).abs() <= 0.05);
}

#[test]
fn motivating_project_round_trips() {
    let p = load_project(&motivating_path(), &Lexicon::seed(), ValueSpace::builtin()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("copy.hmreq-project");
    save_project(&p, &out).unwrap();
    assert_eq!(load_project(&out, &Lexicon::seed(), ValueSpace::builtin()).unwrap(), p);
}

#[derive(Debug, Clone)]
struct Op {
    requirement: usize,
    stakeholder: usize,
    value: usize,
    statement: String,
    revision_delta: i8,
    at: i64,
}

fn op() -> impl Strategy<Value = Op> {
    (0usize..64, 0usize..8, 0usize..60, "\\PC{0,24}", -1i8..=2, 0i64..4_000_000_000_000)
        .prop_map(|(requirement, stakeholder, value, statement, revision_delta, at)| Op {
            requirement,
            stakeholder,
            value,
            statement,
            revision_delta,
            at,
        })
}

fn timestamp(millis: i64) -> DateTime<Utc> {
    Utc.timestamp_millis_opt(millis).unwrap()
}

/// Turns a generated operation into an assignment against `project`.
/// Indices wrap, so some requirement/stakeholder/value picks are invalid.
fn to_assignment(project: &Project, op: &Op) -> ValueAssignment {
    let doc = &project.document;
    let req = &doc.requirements[op.requirement % doc.requirements.len()];
    let stakeholders: Vec<_> = doc.stakeholders().map(|d| d.name.as_str()).collect();
    let stakeholder = if op.stakeholder < req.stakeholders.len() {
        req.stakeholders[op.stakeholder].name.clone()
    } else {
        stakeholders[op.stakeholder % stakeholders.len()].to_string()
    };
    let values = ValueSpace::builtin().values();
    let value_id = values.get(op.value).map_or("no_such_value".to_string(), |v| v.id.clone());
    let prior = project.assignment(&req.id, &stakeholder).map_or(0, |a| a.revision);
    ValueAssignment {
        requirement_id: req.id.clone(),
        stakeholder_id: stakeholder,
        value_id,
        statement: op.statement.clone(),
        updated_at: timestamp(op.at),
        revision: (prior as i64 + op.revision_delta as i64).max(0) as u64,
    }
}

fn apply_all(mut project: Project, ops: &[Op]) -> Project {
    let space = ValueSpace::builtin();
    for op in ops {
        let a = to_assignment(&project, op);
        match project.upsert_assignment(a.clone(), space) {
            Ok(next) => {
                next.check_integrity(space).unwrap();
                let stored = next.assignment(&a.requirement_id, &a.stakeholder_id).unwrap();
                assert_eq!(stored, &a);
                project = next;
            }
            Err(UpsertError::StaleRevision { expected, given }) => {
                assert_ne!(expected, given);
            }
            Err(_) => {}
        }
    }
    project
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn integrity_holds_after_any_operation_sequence(ops in prop::collection::vec(op(), 0..40)) {
        let space = ValueSpace::builtin();
        let project = apply_all(Project::new(corpus_doc("dronology.hmreq")), &ops);
        prop_assert!(project.check_integrity(space).is_ok());
    }

    #[test]
    fn rejected_writes_leave_project_unchanged(ops in prop::collection::vec(op(), 1..30), last in op()) {
        let space = ValueSpace::builtin();
        let project = apply_all(Project::new(corpus_doc("dronology.hmreq")), &ops);
        let before = project.clone();
        let a = to_assignment(&project, &last);
        if project.upsert_assignment(a, space).is_err() {
            prop_assert_eq!(project, before);
        }
    }

    #[test]
    fn save_load_round_trip(
        doc_pick in any::<bool>(),
        ops in prop::collection::vec(op(), 0..30),
    ) {
        let doc = corpus_doc(if doc_pick { "dronology.hmreq" } else { "paper_examples.hmreq" });
        let project = apply_all(Project::new(doc), &ops);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.hmreq-project");
        save_project(&project, &path).unwrap();
        let loaded = load_project(&path, &Lexicon::seed(), ValueSpace::builtin()).unwrap();
        prop_assert_eq!(&loaded, &project);
        save_project(&loaded, &path).unwrap();
        prop_assert_eq!(std::fs::read_to_string(&path).unwrap(), project.to_file_text());
    }
}
