//! Typed syntax tree of a `.hmreq` document.
//!
//! Every node carries the span it was parsed from. Trees rebuilt from JSON
//! carry [`Span::SYNTHETIC`]; compare such trees against parsed ones with
//! [`RequirementDocument::without_spans`].

use std::fmt;
use std::str::FromStr;

use crate::source::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeclarationKind {
    Stakeholder,
    Actor,
}

impl DeclarationKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclarationKind::Stakeholder => "stakeholder",
            DeclarationKind::Actor => "actor",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub kind: DeclarationKind,
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Article {
    The,
    A,
    An,
}

impl Article {
    pub fn as_str(self) -> &'static str {
        match self {
            Article::The => "the",
            Article::A => "a",
            Article::An => "an",
        }
    }

    /// Lowercase form only; capitalized articles are accepted by the parser
    /// solely in sentence-initial position.
    pub fn from_lowercase(word: &str) -> Option<Article> {
        match word {
            "the" => Some(Article::The),
            "a" => Some(Article::A),
            "an" => Some(Article::An),
            _ => None,
        }
    }

    pub fn capitalized(self) -> &'static str {
        match self {
            Article::The => "The",
            Article::A => "A",
            Article::An => "An",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActorRef {
    pub name: String,
    pub article: Option<Article>,
    pub span: Span,
}

impl ActorRef {
    pub fn new(name: impl Into<String>, article: Option<Article>) -> Self {
        ActorRef {
            name: name.into(),
            article,
            span: Span::SYNTHETIC,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreVariant {
    Ubiquitous,
    While,
    When,
    IfThen,
    Where,
}

impl PreVariant {
    pub const ALL: [PreVariant; 5] = [
        PreVariant::Ubiquitous,
        PreVariant::While,
        PreVariant::When,
        PreVariant::IfThen,
        PreVariant::Where,
    ];

    /// Name used in the interchange format.
    pub fn as_str(self) -> &'static str {
        match self {
            PreVariant::Ubiquitous => "ubiquitous",
            PreVariant::While => "while",
            PreVariant::When => "when",
            PreVariant::IfThen => "ifThen",
            PreVariant::Where => "where",
        }
    }

    pub fn has_condition(self) -> bool {
        self != PreVariant::Ubiquitous
    }

    pub fn allows_subject(self) -> bool {
        matches!(
            self,
            PreVariant::While | PreVariant::When | PreVariant::IfThen
        )
    }
}

impl FromStr for PreVariant {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PreVariant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EarsPreStatement {
    pub variant: PreVariant,
    pub subject: Option<ActorRef>,
    pub condition: Option<String>,
    pub span: Span,
}

impl EarsPreStatement {
    pub fn ubiquitous() -> Self {
        EarsPreStatement {
            variant: PreVariant::Ubiquitous,
            subject: None,
            condition: None,
            span: Span::SYNTHETIC,
        }
    }

    /// Checks the variant/subject/condition combination.
    pub fn shape_error(&self) -> Option<&'static str> {
        if self.variant.has_condition() != self.condition.is_some() {
            return Some(if self.condition.is_some() {
                "ubiquitous pre-statement takes no condition"
            } else {
                "pre-statement requires a condition"
            });
        }
        if self.subject.is_some() && !self.variant.allows_subject() {
            return Some("pre-statement variant takes no subject");
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modal {
    Shall,
    Should,
    Must,
    Will,
    May,
}

impl Modal {
    pub const ALL: [Modal; 5] = [Modal::Shall, Modal::Should, Modal::Must, Modal::Will, Modal::May];

    pub fn as_str(self) -> &'static str {
        match self {
            Modal::Shall => "shall",
            Modal::Should => "should",
            Modal::Must => "must",
            Modal::Will => "will",
            Modal::May => "may",
        }
    }
}

impl FromStr for Modal {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Modal::ALL.into_iter().find(|m| m.as_str() == s).ok_or(())
    }
}

impl fmt::Display for Modal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One bound element of a requirement block, in frame order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockElement {
    Actor(ActorRef),
    Text { value: String, span: Span },
    Keyword { literal: String, span: Span },
}

impl BlockElement {
    pub fn text(value: impl Into<String>) -> Self {
        BlockElement::Text {
            value: value.into(),
            span: Span::SYNTHETIC,
        }
    }

    pub fn keyword(literal: impl Into<String>) -> Self {
        BlockElement::Keyword {
            literal: literal.into(),
            span: Span::SYNTHETIC,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frequency {
    pub amount: String,
    pub unit: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Adjuncts {
    pub means: Option<String>,
    pub frequency: Option<Frequency>,
}

impl Adjuncts {
    pub fn is_empty(&self) -> bool {
        self.means.is_none() && self.frequency.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementBlock {
    pub rule_id: String,
    pub verb: String,
    pub elements: Vec<BlockElement>,
    pub adjuncts: Adjuncts,
    pub span: Span,
}

impl RequirementBlock {
    pub fn actor_args(&self) -> impl Iterator<Item = &ActorRef> {
        self.elements.iter().filter_map(|e| match e {
            BlockElement::Actor(a) => Some(a),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementContent {
    pub actor: ActorRef,
    pub modal: Modal,
    pub negated: bool,
    pub block: RequirementBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StakeholderRef {
    pub name: String,
    pub span: Span,
}

impl StakeholderRef {
    pub fn new(name: impl Into<String>) -> Self {
        StakeholderRef {
            name: name.into(),
            span: Span::SYNTHETIC,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Requirement {
    pub id: String,
    pub pre: EarsPreStatement,
    pub content: RequirementContent,
    pub stakeholders: Vec<StakeholderRef>,
    pub span: Span,
}

impl Requirement {
    pub fn lists_stakeholder(&self, name: &str) -> bool {
        self.stakeholders.iter().any(|s| s.name == name)
    }

    pub fn stakeholder_names(&self) -> impl Iterator<Item = &str> {
        self.stakeholders.iter().map(|s| s.name.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RequirementDocument {
    pub declarations: Vec<Declaration>,
    pub requirements: Vec<Requirement>,
}

impl RequirementDocument {
    pub fn requirement(&self, id: &str) -> Option<&Requirement> {
        self.requirements.iter().find(|r| r.id == id)
    }

    pub fn stakeholders(&self) -> impl Iterator<Item = &Declaration> {
        self.declarations
            .iter()
            .filter(|d| d.kind == DeclarationKind::Stakeholder)
    }

    pub fn is_stakeholder(&self, name: &str) -> bool {
        self.stakeholders().any(|d| d.name == name)
    }

    /// Stakeholders double as actors.
    pub fn is_actor(&self, name: &str) -> bool {
        self.declarations.iter().any(|d| d.name == name)
    }

    /// Copy with every span replaced by [`Span::SYNTHETIC`].
    pub fn without_spans(&self) -> RequirementDocument {
        let mut doc = self.clone();
        for d in &mut doc.declarations {
            d.span = Span::SYNTHETIC;
        }
        for r in &mut doc.requirements {
            r.span = Span::SYNTHETIC;
            r.pre.span = Span::SYNTHETIC;
            if let Some(s) = &mut r.pre.subject {
                s.span = Span::SYNTHETIC;
            }
            r.content.actor.span = Span::SYNTHETIC;
            r.content.block.span = Span::SYNTHETIC;
            for e in &mut r.content.block.elements {
                match e {
                    BlockElement::Actor(a) => a.span = Span::SYNTHETIC,
                    BlockElement::Text { span, .. } | BlockElement::Keyword { span, .. } => {
                        *span = Span::SYNTHETIC
                    }
                }
            }
            for s in &mut r.stakeholders {
                s.span = Span::SYNTHETIC;
            }
        }
        doc
    }

    /// Every span in the tree, for bounds checks.
    pub fn spans(&self) -> Vec<Span> {
        let mut out: Vec<Span> = self.declarations.iter().map(|d| d.span).collect();
        for r in &self.requirements {
            out.push(r.span);
            out.push(r.pre.span);
            out.extend(r.pre.subject.iter().map(|s| s.span));
            out.push(r.content.actor.span);
            out.push(r.content.block.span);
            for e in &r.content.block.elements {
                out.push(match e {
                    BlockElement::Actor(a) => a.span,
                    BlockElement::Text { span, .. } | BlockElement::Keyword { span, .. } => *span,
                });
            }
            out.extend(r.stakeholders.iter().map(|s| s.span));
        }
        out
    }
}

/// Identifier rule for declared names and requirement ids: letters, digits
/// and underscores, starting with a letter.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
