//! Name resolution: declarations, requirement ids, and every actor or
//! stakeholder reference. Declarations may appear anywhere in the file.

use std::collections::HashMap;

use crate::ast::{ActorRef, DeclarationKind, RequirementDocument};
use crate::diagnostic::{Code, Diagnostic};

pub fn resolve(doc: &RequirementDocument) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    let mut seen: HashMap<(DeclarationKind, &str), ()> = HashMap::new();
    for d in &doc.declarations {
        if seen.insert((d.kind, &d.name), ()).is_some() {
            diags.push(Diagnostic::new(
                Code::DuplicateDeclaration,
                d.span,
                format!("{} `{}` is already declared", d.kind.keyword(), d.name),
            ));
        } else if d.kind == DeclarationKind::Actor && doc.is_stakeholder(&d.name) {
            diags.push(Diagnostic::new(
                Code::RedundantActorDeclaration,
                d.span,
                format!("`{}` is a stakeholder and therefore already an actor", d.name),
            ));
        }
    }

    let mut ids = HashMap::new();
    for r in &doc.requirements {
        if ids.insert(r.id.as_str(), ()).is_some() {
            diags.push(Diagnostic::new(
                Code::DuplicateRequirementId,
                r.span,
                format!("requirement id `{}` is already used", r.id),
            ));
        }

        let actors = r
            .pre
            .subject
            .iter()
            .chain(std::iter::once(&r.content.actor))
            .chain(r.content.block.actor_args());
        for a in actors {
            check_actor(doc, a, &mut diags);
        }

        for s in &r.stakeholders {
            if !doc.is_stakeholder(&s.name) {
                let detail = if doc.is_actor(&s.name) {
                    "is declared as an actor, not a stakeholder"
                } else {
                    "is not declared"
                };
                diags.push(Diagnostic::new(
                    Code::UndeclaredStakeholder,
                    s.span,
                    format!("stakeholder `{}` {detail}", s.name),
                ));
            }
        }
    }
    diags
}

fn check_actor(doc: &RequirementDocument, a: &ActorRef, diags: &mut Vec<Diagnostic>) {
    if !doc.is_actor(&a.name) {
        diags.push(Diagnostic::new(
            Code::UndeclaredActor,
            a.span,
            format!("actor `{}` is not declared", a.name),
        ));
    }
}
