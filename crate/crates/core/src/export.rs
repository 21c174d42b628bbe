//! JSON interchange schema for requirement documents.
//!
//! The same record types form the `document` member of a project file.
//! Output is compact, keys in declaration order, optional members omitted
//! when absent, so a given tree always serializes to the same bytes.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::*;
use crate::lexicon::{ElementKind, FrameElement, Lexicon};
use crate::parser::Parsed;
use crate::source::Span;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DocumentRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<String>,
    pub declarations: Vec<DeclarationRecord>,
    pub requirements: Vec<RequirementRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclarationRecord {
    pub kind: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RequirementRecord {
    pub id: String,
    pub pre: PreRecord,
    pub actor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actor_article: Option<String>,
    pub modal: String,
    pub negated: bool,
    pub block: BlockRecord,
    pub stakeholders: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PreRecord {
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject_article: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRecord {
    pub rule: String,
    pub verb: String,
    pub args: Vec<ArgRecord>,
    #[serde(default)]
    pub adjuncts: AdjunctsRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgRecord {
    pub kind: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub article: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjunctsRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub means: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency: Option<FrequencyRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyRecord {
    pub value: String,
    pub unit: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("export blocked: document has {errors} error diagnostic(s)")]
pub struct ExportBlocked {
    pub errors: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImportCode {
    SchemaVersion,
    Malformed,
    InvalidValue,
    UnknownRule,
    FrameMismatch,
    Unresolved,
    Duplicate,
    EmptyStakeholders,
}

impl ImportCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ImportCode::SchemaVersion => "I001_SCHEMA_VERSION",
            ImportCode::Malformed => "I002_MALFORMED",
            ImportCode::InvalidValue => "I003_INVALID_VALUE",
            ImportCode::UnknownRule => "I004_UNKNOWN_RULE",
            ImportCode::FrameMismatch => "I005_FRAME_MISMATCH",
            ImportCode::Unresolved => "I006_UNRESOLVED_REFERENCE",
            ImportCode::Duplicate => "I007_DUPLICATE",
            ImportCode::EmptyStakeholders => "I008_EMPTY_STAKEHOLDERS",
        }
    }
}

impl fmt::Display for ImportCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{code} at {path}: {message}")]
pub struct ImportError {
    pub code: ImportCode,
    /// Location in the JSON value, e.g. `requirements[0].block.rule`.
    pub path: String,
    pub message: String,
}

impl ImportError {
    fn new(code: ImportCode, path: impl Into<String>, message: impl Into<String>) -> Self {
        ImportError {
            code,
            path: path.into(),
            message: message.into(),
        }
    }

    /// Same error located under `prefix`.
    pub fn within(mut self, prefix: &str) -> Self {
        self.path = if self.path == "." || self.path.is_empty() {
            prefix.to_string()
        } else if self.path.starts_with('[') {
            format!("{prefix}{}", self.path)
        } else {
            format!("{prefix}.{}", self.path)
        };
        self
    }
}

pub fn to_json(doc: &RequirementDocument) -> String {
    serde_json::to_string(&DocumentRecord::from_document(doc)).expect("document serializes")
}

/// Export of a parse result; refused when parsing reported errors.
pub fn export(parsed: &Parsed) -> Result<String, ExportBlocked> {
    match &parsed.document {
        Some(doc) if !parsed.has_errors() => Ok(to_json(doc)),
        _ => Err(ExportBlocked {
            errors: parsed.diagnostics.iter().filter(|d| d.is_error()).count(),
        }),
    }
}

pub fn from_json(text: &str, lexicon: &Lexicon) -> Result<RequirementDocument, ImportError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let record: DocumentRecord = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ImportError::new(ImportCode::Malformed, path, e.into_inner().to_string())
    })?;
    if let Some(v) = &record.schema_version {
        if v != SCHEMA_VERSION {
            return Err(ImportError::new(
                ImportCode::SchemaVersion,
                "schemaVersion",
                format!("unsupported schema version {v:?}, expected {SCHEMA_VERSION:?}"),
            ));
        }
    }
    record.into_document(lexicon)
}

fn article_name(a: Option<Article>) -> Option<String> {
    a.map(|a| a.as_str().to_string())
}

impl DocumentRecord {
    pub fn from_document(doc: &RequirementDocument) -> Self {
        DocumentRecord {
            schema_version: None,
            declarations: doc
                .declarations
                .iter()
                .map(|d| DeclarationRecord {
                    kind: d.kind.keyword().to_string(),
                    name: d.name.clone(),
                })
                .collect(),
            requirements: doc.requirements.iter().map(RequirementRecord::from_requirement).collect(),
        }
    }

    /// Rebuilds and checks a tree; spans are synthetic.
    pub fn into_document(self, lexicon: &Lexicon) -> Result<RequirementDocument, ImportError> {
        use ImportCode::*;
        let mut doc = RequirementDocument::default();
        let mut names = HashSet::new();
        for (i, d) in self.declarations.into_iter().enumerate() {
            let path = format!("declarations[{i}]");
            let kind = match d.kind.as_str() {
                "stakeholder" => DeclarationKind::Stakeholder,
                "actor" => DeclarationKind::Actor,
                other => {
                    return Err(ImportError::new(
                        InvalidValue,
                        format!("{path}.kind"),
                        format!("unknown declaration kind {other:?}"),
                    ))
                }
            };
            identifier(&d.name, &format!("{path}.name"))?;
            if !names.insert((kind, d.name.clone())) {
                return Err(ImportError::new(
                    Duplicate,
                    format!("{path}.name"),
                    format!("{} `{}` declared twice", kind.keyword(), d.name),
                ));
            }
            doc.declarations.push(Declaration {
                kind,
                name: d.name,
                span: Span::SYNTHETIC,
            });
        }

        let mut ids = HashSet::new();
        let mut requirements = Vec::with_capacity(self.requirements.len());
        for (i, r) in self.requirements.into_iter().enumerate() {
            let path = format!("requirements[{i}]");
            if !ids.insert(r.id.clone()) {
                return Err(ImportError::new(
                    Duplicate,
                    format!("{path}.id"),
                    format!("requirement id `{}` used twice", r.id),
                ));
            }
            let req = r
                .into_requirement(&doc, lexicon)
                .map_err(|e| e.within(&path))?;
            requirements.push(req);
        }
        doc.requirements = requirements;
        Ok(doc)
    }
}

fn identifier(name: &str, path: &str) -> Result<(), ImportError> {
    if is_identifier(name) {
        Ok(())
    } else {
        Err(ImportError::new(
            ImportCode::InvalidValue,
            path,
            format!("`{name}` is not a valid identifier"),
        ))
    }
}

fn parse_article(a: Option<&str>, path: &str) -> Result<Option<Article>, ImportError> {
    a.map(|a| {
        Article::from_lowercase(a).ok_or_else(|| {
            ImportError::new(ImportCode::InvalidValue, path, format!("unknown article {a:?}"))
        })
    })
    .transpose()
}

fn actor_ref(
    doc: &RequirementDocument,
    name: &str,
    article: Option<&str>,
    path: &str,
    article_path: &str,
) -> Result<ActorRef, ImportError> {
    identifier(name, path)?;
    if !doc.is_actor(name) {
        return Err(ImportError::new(
            ImportCode::Unresolved,
            path,
            format!("actor `{name}` is not declared"),
        ));
    }
    Ok(ActorRef::new(name, parse_article(article, article_path)?))
}

impl RequirementRecord {
    fn from_requirement(r: &Requirement) -> Self {
        let c = &r.content;
        RequirementRecord {
            id: r.id.clone(),
            pre: PreRecord {
                variant: r.pre.variant.as_str().to_string(),
                subject: r.pre.subject.as_ref().map(|s| s.name.clone()),
                subject_article: r.pre.subject.as_ref().and_then(|s| article_name(s.article)),
                condition: r.pre.condition.clone(),
            },
            actor: c.actor.name.clone(),
            actor_article: article_name(c.actor.article),
            modal: c.modal.as_str().to_string(),
            negated: c.negated,
            block: BlockRecord {
                rule: c.block.rule_id.clone(),
                verb: c.block.verb.clone(),
                args: c
                    .block
                    .elements
                    .iter()
                    .map(|e| match e {
                        BlockElement::Actor(a) => ArgRecord {
                            kind: "actor".into(),
                            value: a.name.clone(),
                            article: article_name(a.article),
                        },
                        BlockElement::Text { value, .. } => ArgRecord {
                            kind: "text".into(),
                            value: value.clone(),
                            article: None,
                        },
                        BlockElement::Keyword { literal, .. } => ArgRecord {
                            kind: "keyword".into(),
                            value: literal.clone(),
                            article: None,
                        },
                    })
                    .collect(),
                adjuncts: AdjunctsRecord {
                    means: c.block.adjuncts.means.clone(),
                    frequency: c.block.adjuncts.frequency.as_ref().map(|f| FrequencyRecord {
                        value: f.amount.clone(),
                        unit: f.unit.clone(),
                    }),
                },
            },
            stakeholders: r.stakeholders.iter().map(|s| s.name.clone()).collect(),
        }
    }

    fn into_requirement(
        self,
        doc: &RequirementDocument,
        lexicon: &Lexicon,
    ) -> Result<Requirement, ImportError> {
        use ImportCode::*;
        identifier(&self.id, "id")?;

        let variant: PreVariant = self.pre.variant.parse().map_err(|_| {
            ImportError::new(
                InvalidValue,
                "pre.variant",
                format!("unknown pre-statement variant {:?}", self.pre.variant),
            )
        })?;
        if self.pre.subject.is_none() && self.pre.subject_article.is_some() {
            return Err(ImportError::new(
                InvalidValue,
                "pre.subjectArticle",
                "article without subject",
            ));
        }
        let subject = self
            .pre
            .subject
            .as_deref()
            .map(|s| {
                actor_ref(
                    doc,
                    s,
                    self.pre.subject_article.as_deref(),
                    "pre.subject",
                    "pre.subjectArticle",
                )
            })
            .transpose()?;
        let pre = EarsPreStatement {
            variant,
            subject,
            condition: self.pre.condition,
            span: Span::SYNTHETIC,
        };
        if let Some(problem) = pre.shape_error() {
            return Err(ImportError::new(InvalidValue, "pre", problem));
        }

        let actor = actor_ref(
            doc,
            &self.actor,
            self.actor_article.as_deref(),
            "actor",
            "actorArticle",
        )?;
        let modal: Modal = self.modal.parse().map_err(|_| {
            ImportError::new(InvalidValue, "modal", format!("unknown modal verb {:?}", self.modal))
        })?;
        let block = self.block.into_block(doc, lexicon)?;

        if self.stakeholders.is_empty() {
            return Err(ImportError::new(
                EmptyStakeholders,
                "stakeholders",
                "a requirement needs at least one relevant stakeholder",
            ));
        }
        let mut seen = HashSet::new();
        let mut stakeholders = Vec::with_capacity(self.stakeholders.len());
        for (i, s) in self.stakeholders.into_iter().enumerate() {
            let path = format!("stakeholders[{i}]");
            if !doc.is_stakeholder(&s) {
                return Err(ImportError::new(
                    Unresolved,
                    path,
                    format!("stakeholder `{s}` is not declared"),
                ));
            }
            if !seen.insert(s.clone()) {
                return Err(ImportError::new(
                    Duplicate,
                    path,
                    format!("stakeholder `{s}` listed twice"),
                ));
            }
            stakeholders.push(StakeholderRef::new(s));
        }

        Ok(Requirement {
            id: self.id,
            pre,
            content: RequirementContent {
                actor,
                modal,
                negated: self.negated,
                block,
            },
            stakeholders,
            span: Span::SYNTHETIC,
        })
    }
}

impl BlockRecord {
    fn into_block(
        self,
        doc: &RequirementDocument,
        lexicon: &Lexicon,
    ) -> Result<RequirementBlock, ImportError> {
        use ImportCode::*;
        let rule = lexicon.rule(&self.rule).ok_or_else(|| {
            ImportError::new(UnknownRule, "block.rule", format!("unknown rule `{}`", self.rule))
        })?;
        if !rule.has_verb(&self.verb) {
            return Err(ImportError::new(
                InvalidValue,
                "block.verb",
                format!("verb `{}` does not belong to rule {}", self.verb, rule.rule_id),
            ));
        }

        let mut elements = Vec::with_capacity(self.args.len());
        for (i, arg) in self.args.into_iter().enumerate() {
            let path = format!("block.args[{i}]");
            if arg.kind != "actor" && arg.article.is_some() {
                return Err(ImportError::new(
                    InvalidValue,
                    format!("{path}.article"),
                    "only actor arguments take an article",
                ));
            }
            elements.push(match arg.kind.as_str() {
                "actor" => BlockElement::Actor(actor_ref(
                    doc,
                    &arg.value,
                    arg.article.as_deref(),
                    &format!("{path}.value"),
                    &format!("{path}.article"),
                )?),
                "text" => BlockElement::text(arg.value),
                "keyword" => BlockElement::keyword(arg.value),
                other => {
                    return Err(ImportError::new(
                        InvalidValue,
                        format!("{path}.kind"),
                        format!("unknown argument kind {other:?}"),
                    ))
                }
            });
        }
        let adjuncts = Adjuncts {
            means: self.adjuncts.means,
            frequency: self.adjuncts.frequency.map(|f| Frequency {
                amount: f.value,
                unit: f.unit,
            }),
        };
        if let Some(f) = &adjuncts.frequency {
            if f.unit.is_empty() || !f.unit.chars().all(|c| c.is_ascii_lowercase()) {
                return Err(ImportError::new(
                    InvalidValue,
                    "block.adjuncts.frequency.unit",
                    format!("frequency unit {:?} must be a lowercase word", f.unit),
                ));
            }
        }
        if !frame_accepts(rule.arguments(), &elements, &adjuncts) {
            return Err(ImportError::new(
                FrameMismatch,
                "block.args",
                format!("arguments do not fit rule {}: {}", rule.rule_id, rule.signature()),
            ));
        }
        Ok(RequirementBlock {
            rule_id: self.rule,
            verb: self.verb,
            elements,
            adjuncts,
            span: Span::SYNTHETIC,
        })
    }
}

/// Whether bound elements and adjuncts fit the frame's arguments.
pub fn frame_accepts(frame: &[FrameElement], elements: &[BlockElement], adjuncts: &Adjuncts) -> bool {
    let means_slot = frame.iter().any(|f| f.kind == ElementKind::Means);
    let freq_slot = frame.iter().any(|f| f.kind == ElementKind::Frequency);
    if (adjuncts.means.is_some() && !means_slot) || (adjuncts.frequency.is_some() && !freq_slot) {
        return false;
    }
    let args: Vec<&FrameElement> = frame
        .iter()
        .filter(|f| !matches!(f.kind, ElementKind::Means | ElementKind::Frequency))
        .collect();
    align(&args, elements)
}

fn align(frame: &[&FrameElement], elements: &[BlockElement]) -> bool {
    let Some((slot, rest)) = frame.split_first() else {
        return elements.is_empty();
    };
    let fits = elements.first().is_some_and(|e| match (&slot.kind, e) {
        (ElementKind::Actor, BlockElement::Actor(_)) => true,
        (ElementKind::Text, BlockElement::Text { .. }) => true,
        (ElementKind::Keyword(words), BlockElement::Keyword { literal, .. }) => {
            words.contains(literal)
        }
        _ => false,
    });
    (fits && align(rest, &elements[1..])) || (slot.optional && align(rest, elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_document;
    use crate::source::SourceDocument;

    const DECLS: &str = "actor System\nstakeholder Shop_Floor_Worker\nstakeholder Manager\nstakeholder Product_Owner\n";
    const R1: &str = r#"req R1: While a Shop_Floor_Worker "is working in dangerous areas", the System shall track "the location" of the Shop_Floor_Worker by means of "a GPS sensor". Relevant-Stakeholders: Shop_Floor_Worker, Manager, Product_Owner."#;
    const R2: &str = r#"req R2: The System shall notify the Shop_Floor_Worker about "leaving the area". Relevant-Stakeholders: Shop_Floor_Worker."#;

    fn parse(text: &str) -> Parsed {
        parse_document(&SourceDocument::in_memory(text), &Lexicon::seed())
    }

    fn doc(text: &str) -> RequirementDocument {
        parse(text).document.unwrap()
    }

    #[test]
    fn empty_document_export() {
        assert_eq!(
            to_json(&RequirementDocument::default()),
            r#"{"declarations":[],"requirements":[]}"#
        );
    }

    #[test]
    fn r2_export_matches_hand_written_instance() {
        let json: serde_json::Value = serde_json::from_str(&to_json(&doc(&format!("{DECLS}{R2}")))).unwrap();
        let expected = serde_json::json!({
            "id": "R2",
            "pre": {"variant": "ubiquitous"},
            "actor": "System",
            "actorArticle": "the",
            "modal": "shall",
            "negated": false,
            "block": {
                "rule": "advise-37.9",
                "verb": "notify",
                "args": [
                    {"kind": "actor", "value": "Shop_Floor_Worker", "article": "the"},
                    {"kind": "keyword", "value": "about"},
                    {"kind": "text", "value": "leaving the area"}
                ],
                "adjuncts": {}
            },
            "stakeholders": ["Shop_Floor_Worker"]
        });
        assert_eq!(json["requirements"][0], expected);
        assert_eq!(json["declarations"][0], serde_json::json!({"kind": "actor", "name": "System"}));
    }

    #[test]
    fn key_order_is_fixed() {
        let json = to_json(&doc(&format!("{DECLS}{R1}")));
        let text = &json[json.find("\"requirements\"").unwrap()..];
        let order = ["\"id\"", "\"pre\"", "\"actor\"", "\"actorArticle\"", "\"modal\"", "\"negated\"", "\"block\"", "\"stakeholders\""];
        let positions: Vec<usize> = order.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    }

    #[test]
    fn round_trip_r1() {
        let d = doc(&format!("{DECLS}{R1}\n{R2}"));
        let back = from_json(&to_json(&d), &Lexicon::seed()).unwrap();
        assert_eq!(back, d.without_spans());
    }

    #[test]
    fn export_blocked_on_errors() {
        let p = parse(&format!("{DECLS}req R3: The System shall track \"steps\"."));
        assert_eq!(export(&p), Err(ExportBlocked { errors: 1 }));
        assert!(export(&parse(&format!("{DECLS}{R2}"))).is_ok());
    }

    fn import_err(mutate: impl FnOnce(&mut serde_json::Value)) -> ImportError {
        let mut v: serde_json::Value =
            serde_json::from_str(&to_json(&doc(&format!("{DECLS}{R1}")))).unwrap();
        mutate(&mut v);
        from_json(&v.to_string(), &Lexicon::seed()).unwrap_err()
    }

    #[test]
    fn unknown_rule_is_named() {
        let e = import_err(|v| v["requirements"][0]["block"]["rule"] = "dance-99".into());
        assert_eq!(e.code, ImportCode::UnknownRule);
        assert_eq!(e.path, "requirements[0].block.rule");
        assert!(e.message.contains("dance-99"));
    }

    #[test]
    fn empty_stakeholders_rejected() {
        let e = import_err(|v| v["requirements"][0]["stakeholders"] = serde_json::json!([]));
        assert_eq!(e.code, ImportCode::EmptyStakeholders);
        assert_eq!(e.path, "requirements[0].stakeholders");
    }

    #[test]
    fn malformed_field_names_path() {
        let e = import_err(|v| v["requirements"][0]["negated"] = "no".into());
        assert_eq!(e.code, ImportCode::Malformed);
        assert_eq!(e.path, "requirements[0].negated");
        let e = import_err(|v| v["requirements"][0]["block"]["extra"] = 1.into());
        assert_eq!(e.code, ImportCode::Malformed);
    }

    #[test]
    fn schema_version_checked_when_declared() {
        let e = import_err(|v| v["schemaVersion"] = "2".into());
        assert_eq!(e.code, ImportCode::SchemaVersion);
        let mut v: serde_json::Value = serde_json::from_str(&to_json(&doc(DECLS))).unwrap();
        v["schemaVersion"] = "1".into();
        assert!(from_json(&v.to_string(), &Lexicon::seed()).is_ok());
    }

    type Mutation = Box<dyn FnOnce(&mut serde_json::Value)>;

    #[test]
    fn semantic_import_errors() {
        let cases: Vec<(Mutation, ImportCode, &str)> = vec![
            (Box::new(|v| v["requirements"][0]["actor"] = "Robot".into()), ImportCode::Unresolved, "requirements[0].actor"),
            (Box::new(|v| v["requirements"][0]["stakeholders"][1] = "System".into()), ImportCode::Unresolved, "requirements[0].stakeholders[1]"),
            (Box::new(|v| v["requirements"][0]["stakeholders"][1] = "Shop_Floor_Worker".into()), ImportCode::Duplicate, "requirements[0].stakeholders[1]"),
            (Box::new(|v| v["requirements"][0]["block"]["verb"] = "notify".into()), ImportCode::InvalidValue, "requirements[0].block.verb"),
            (Box::new(|v| v["requirements"][0]["block"]["args"][1]["value"] = "to".into()), ImportCode::FrameMismatch, "requirements[0].block.args"),
            (Box::new(|v| v["requirements"][0]["pre"]["condition"] = serde_json::Value::Null), ImportCode::InvalidValue, "requirements[0].pre"),
            (Box::new(|v| v["requirements"][0]["modal"] = "could".into()), ImportCode::InvalidValue, "requirements[0].modal"),
            (Box::new(|v| v["declarations"][1]["kind"] = "robot".into()), ImportCode::InvalidValue, "declarations[1].kind"),
        ];
        for (mutate, code, path) in cases {
            let e = import_err(mutate);
            assert_eq!((e.code, e.path.as_str()), (code, path), "{e}");
        }
    }

    #[test]
    fn frame_accepts_optional_alignment() {
        let lex = Lexicon::seed();
        let advise = lex.rule("advise-37.9").unwrap().arguments();
        let actor = BlockElement::Actor(ActorRef::new("M", None));
        assert!(frame_accepts(advise, std::slice::from_ref(&actor), &Adjuncts::default()));
        assert!(frame_accepts(advise, &[actor.clone(), BlockElement::text("x")], &Adjuncts::default()));
        assert!(!frame_accepts(advise, &[BlockElement::text("x")], &Adjuncts::default()));
        let allow = lex.rule("allow-64").unwrap().arguments();
        let means = Adjuncts { means: Some("m".into()), frequency: None };
        assert!(!frame_accepts(
            allow,
            &[actor, BlockElement::keyword("to"), BlockElement::text("x")],
            &means
        ));
    }
}
