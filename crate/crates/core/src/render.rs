//! Canonical CNL text for a syntax tree. Parsing the output yields the same
//! tree up to spans.

use std::fmt::Write;

use crate::ast::*;
use crate::parser::STAKEHOLDERS_KEYWORD;

pub fn render_document(doc: &RequirementDocument) -> String {
    let mut out = String::new();
    for d in &doc.declarations {
        writeln!(out, "{} {}", d.kind.keyword(), d.name).unwrap();
    }
    for r in &doc.requirements {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&render_requirement(r));
        out.push('\n');
    }
    out
}

pub fn render_requirement(r: &Requirement) -> String {
    let mut out = format!("req {}: {}", r.id, render_sentence(r));
    write!(
        out,
        " {STAKEHOLDERS_KEYWORD}: {}.",
        r.stakeholder_names().collect::<Vec<_>>().join(", ")
    )
    .unwrap();
    out
}

/// The requirement sentence without id and stakeholder clause.
pub fn render_sentence(r: &Requirement) -> String {
    let mut out = String::new();
    let pre = &r.pre;
    let keyword = match pre.variant {
        PreVariant::Ubiquitous => None,
        PreVariant::While => Some("While"),
        PreVariant::When => Some("When"),
        PreVariant::IfThen => Some("If"),
        PreVariant::Where => Some("Where"),
    };
    if let Some(kw) = keyword {
        out.push_str(kw);
        out.push(' ');
        if let Some(s) = &pre.subject {
            out.push_str(&actor(s, false));
            out.push(' ');
        }
        out.push_str(&quote(pre.condition.as_deref().unwrap_or_default()));
        out.push_str(if pre.variant == PreVariant::IfThen {
            ", then "
        } else {
            ", "
        });
    }

    let c = &r.content;
    out.push_str(&actor(&c.actor, keyword.is_none()));
    write!(out, " {}", c.modal).unwrap();
    if c.negated {
        out.push_str(" not");
    }
    write!(out, " {}", c.block.verb).unwrap();
    for e in &c.block.elements {
        out.push(' ');
        match e {
            BlockElement::Actor(a) => out.push_str(&actor(a, false)),
            BlockElement::Text { value, .. } => out.push_str(&quote(value)),
            BlockElement::Keyword { literal, .. } => out.push_str(literal),
        }
    }
    if let Some(m) = &c.block.adjuncts.means {
        write!(out, " by means of {}", quote(m)).unwrap();
    }
    if let Some(f) = &c.block.adjuncts.frequency {
        write!(out, " every {} {}", quote(&f.amount), f.unit).unwrap();
    }
    out.push('.');
    out
}

fn actor(a: &ActorRef, sentence_initial: bool) -> String {
    match a.article {
        Some(art) if sentence_initial => format!("{} {}", art.capitalized(), a.name),
        Some(art) => format!("{} {}", art.as_str(), a.name),
        None => a.name.clone(),
    }
}

pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;
    use crate::parser::parse_document;
    use crate::source::SourceDocument;

    const TEXT: &str = r#"actor System
stakeholder Shop_Floor_Worker
stakeholder Manager
stakeholder Product_Owner

req R1: While a Shop_Floor_Worker "is working in dangerous areas", the System shall track "the location" of the Shop_Floor_Worker by means of "a GPS sensor". Relevant-Stakeholders: Shop_Floor_Worker, Manager, Product_Owner.

req R2: The System shall notify the Shop_Floor_Worker about "leaving the area". Relevant-Stakeholders: Shop_Floor_Worker.

req R3: If "the \"panic\" button is pressed", then System must not record "audio" every "single" minute. Relevant-Stakeholders: Manager.
"#;

    #[test]
    fn canonical_text_is_a_fixed_point() {
        let lex = Lexicon::seed();
        let doc = parse_document(&SourceDocument::in_memory(TEXT), &lex)
            .document
            .unwrap();
        assert_eq!(render_document(&doc), TEXT);
    }

    #[test]
    fn quoting_escapes() {
        assert_eq!(quote(r#"a "b" \c"#), r#""a \"b\" \\c""#);
    }
}
