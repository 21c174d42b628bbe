//! Semantic checks the grammar cannot express. All findings are warnings.

use std::collections::HashSet;

use crate::ast::{BlockElement, DeclarationKind, RequirementDocument};
use crate::diagnostic::{Code, Diagnostic};
use crate::lexicon::Lexicon;
use crate::parser::{parse_document, Parsed};
use crate::source::SourceDocument;

pub fn validate(doc: &RequirementDocument) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut referenced: HashSet<&str> = HashSet::new();

    for r in &doc.requirements {
        let mut listed = HashSet::new();
        for s in &r.stakeholders {
            referenced.insert(&s.name);
            if !listed.insert(s.name.as_str()) {
                diags.push(Diagnostic::new(
                    Code::DuplicateStakeholderRef,
                    s.span,
                    format!("stakeholder `{}` listed more than once in {}", s.name, r.id),
                ));
            }
        }

        let block = &r.content.block;
        referenced.insert(&r.content.actor.name);
        if let Some(s) = &r.pre.subject {
            referenced.insert(&s.name);
        }
        for a in block.actor_args() {
            referenced.insert(&a.name);
            if doc.is_stakeholder(&a.name) && !r.lists_stakeholder(&a.name) {
                diags.push(Diagnostic::new(
                    Code::ActorNotRelevant,
                    a.span,
                    format!(
                        "`{}` is a stakeholder targeted by {} but is not listed in its Relevant-Stakeholders",
                        a.name, r.id
                    ),
                ));
            }
        }

        for e in &block.elements {
            if let BlockElement::Text { value, span } = e {
                for d in &doc.declarations {
                    if mentions(value, &d.name) {
                        diags.push(Diagnostic::new(
                            Code::EmbeddedActor,
                            *span,
                            format!(
                                "text {value:?} mentions declared actor `{}`; quoted text is not cross-referenced",
                                d.name
                            ),
                        ));
                    }
                }
            }
        }
    }

    for d in &doc.declarations {
        if d.kind == DeclarationKind::Stakeholder && !referenced.contains(d.name.as_str()) {
            diags.push(Diagnostic::new(
                Code::UnusedStakeholder,
                d.span,
                format!("stakeholder `{}` is never referenced", d.name),
            ));
        }
    }
    diags.sort_by_key(|d| d.span.start);
    diags
}

/// Case-insensitive whole-word match of `name`, also trying the name with
/// underscores read as spaces (`Shop_Floor_Worker` ~ "shop floor worker").
fn mentions(text: &str, name: &str) -> bool {
    let hay = text.to_lowercase();
    let lowered = name.to_lowercase();
    let spaced = lowered.replace('_', " ");
    [lowered, spaced].iter().any(|needle| {
        hay.match_indices(needle.as_str()).any(|(i, m)| {
            let before = hay[..i].chars().next_back();
            let after = hay[i + m.len()..].chars().next();
            !before.is_some_and(char::is_alphanumeric) && !after.is_some_and(char::is_alphanumeric)
        })
    })
}

/// Parse followed by [`validate`] when parsing succeeded.
pub fn check(src: &SourceDocument, lexicon: &Lexicon) -> Parsed {
    let mut parsed = parse_document(src, lexicon);
    if let Some(doc) = &parsed.document {
        parsed.diagnostics.extend(validate(doc));
        parsed.diagnostics.sort_by_key(|d| d.span.start);
    }
    parsed
}
