//! Registry of verb-class rule frames.
//!
//! Each rule is named after the VerbNet class it was derived from and lists
//! the verbs it owns plus the element sequence a requirement block must
//! follow after the verb. The parser is driven entirely by this data, so the
//! grammar grows by editing the lexicon file.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const SEED: &str = include_str!("../data/seed_lexicon.json");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementKind {
    Verb,
    Actor,
    Text,
    Keyword(Vec<String>),
    Means,
    Frequency,
}

impl ElementKind {
    pub fn name(&self) -> &'static str {
        match self {
            ElementKind::Verb => "verb",
            ElementKind::Actor => "actor",
            ElementKind::Text => "text",
            ElementKind::Keyword(_) => "keyword",
            ElementKind::Means => "means",
            ElementKind::Frequency => "frequency",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameElement {
    pub kind: ElementKind,
    pub optional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleFrame {
    pub rule_id: String,
    pub verbs: Vec<String>,
    pub frame: Vec<FrameElement>,
}

impl RuleFrame {
    pub fn has_verb(&self, verb: &str) -> bool {
        self.verbs.iter().any(|v| v == verb)
    }

    /// Elements after the leading verb.
    pub fn arguments(&self) -> &[FrameElement] {
        &self.frame[1..]
    }

    /// Human-readable frame, e.g. `notify|alert|inform [article] <Actor> [about|of] ["text"]`.
    pub fn signature(&self) -> String {
        let mut parts = Vec::with_capacity(self.frame.len());
        for el in &self.frame {
            let body = match &el.kind {
                ElementKind::Verb => self.verbs.join("|"),
                ElementKind::Actor => "[article] <Actor>".to_string(),
                ElementKind::Text => "\"text\"".to_string(),
                ElementKind::Keyword(words) => words.join("|"),
                ElementKind::Means => "by means of \"text\"".to_string(),
                ElementKind::Frequency => "every \"text\" <unit>".to_string(),
            };
            parts.push(if el.optional {
                format!("({body})?")
            } else {
                body
            });
        }
        parts.join(" ")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("malformed lexicon file: {0}")]
    Malformed(String),
    #[error("duplicate rule: {0}")]
    DuplicateRule(String),
    #[error("verb collision: {verb} (rules {first} and {second})")]
    VerbCollision {
        verb: String,
        first: String,
        second: String,
    },
    #[error("rule {rule}: no verbs")]
    NoVerbs { rule: String },
    #[error("rule {rule}: verb {verb:?} must be a lowercase word")]
    InvalidVerb { rule: String, verb: String },
    #[error("rule {rule}: frame must start with a single non-optional verb element (position {position})")]
    VerbPosition { rule: String, position: usize },
    #[error("rule {rule}: unknown element kind {kind:?} at position {position}")]
    UnknownKind {
        rule: String,
        position: usize,
        kind: String,
    },
    #[error("rule {rule}: adjunct at position {position} must be optional, unique, and trail the frame (means before frequency)")]
    AdjunctPosition { rule: String, position: usize },
    #[error("rule {rule}: invalid keywords at position {position}: {reason}")]
    InvalidKeywords {
        rule: String,
        position: usize,
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    version: String,
    rules: Vec<RuleFrame>,
    by_verb: HashMap<String, usize>,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.version == other.version && self.rules == other.rules
    }
}

impl Eq for Lexicon {}

impl Lexicon {
    /// The lexicon shipped with the crate.
    pub fn seed() -> Lexicon {
        Lexicon::load(SEED).expect("seed lexicon is valid")
    }

    pub fn seed_text() -> &'static str {
        SEED
    }

    pub fn load(text: &str) -> Result<Lexicon, LexiconError> {
        let file: LexiconFile =
            serde_json::from_str(text).map_err(|e| LexiconError::Malformed(e.to_string()))?;
        let rules = file
            .rules
            .into_iter()
            .map(RawRule::into_frame)
            .collect::<Result<Vec<_>, _>>()?;
        Lexicon::new(file.version, rules)
    }

    pub fn new(version: impl Into<String>, rules: Vec<RuleFrame>) -> Result<Lexicon, LexiconError> {
        let mut by_verb = HashMap::new();
        let mut ids = HashMap::new();
        for (i, rule) in rules.iter().enumerate() {
            validate_rule(rule)?;
            if ids.insert(rule.rule_id.as_str(), i).is_some() {
                return Err(LexiconError::DuplicateRule(rule.rule_id.clone()));
            }
            for verb in &rule.verbs {
                if let Some(prev) = by_verb.insert(verb.clone(), i) {
                    return Err(LexiconError::VerbCollision {
                        verb: verb.clone(),
                        first: rules[prev].rule_id.clone(),
                        second: rule.rule_id.clone(),
                    });
                }
            }
        }
        Ok(Lexicon {
            version: version.into(),
            rules,
            by_verb,
        })
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn rules(&self) -> &[RuleFrame] {
        &self.rules
    }

    pub fn rule(&self, rule_id: &str) -> Option<&RuleFrame> {
        self.rules.iter().find(|r| r.rule_id == rule_id)
    }

    /// Owning rule of a verb, case-insensitive.
    pub fn lookup(&self, verb: &str) -> Option<&RuleFrame> {
        let key = verb.to_lowercase();
        self.by_verb.get(&key).map(|&i| &self.rules[i])
    }

    pub fn verb_count(&self) -> usize {
        self.rules.iter().map(|r| r.verbs.len()).sum()
    }

    /// Serializes back to the lexicon file format.
    pub fn render(&self) -> String {
        let file = LexiconFile {
            version: self.version.clone(),
            rules: self.rules.iter().map(RawRule::from_frame).collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("lexicon serializes");
        out.push('\n');
        out
    }
}

impl fmt::Display for RuleFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule_id, self.signature())
    }
}

fn is_lower_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase())
}

fn validate_rule(rule: &RuleFrame) -> Result<(), LexiconError> {
    let name = || rule.rule_id.clone();
    if rule.verbs.is_empty() {
        return Err(LexiconError::NoVerbs { rule: name() });
    }
    if let Some(v) = rule.verbs.iter().find(|v| !is_lower_word(v)) {
        return Err(LexiconError::InvalidVerb {
            rule: name(),
            verb: v.clone(),
        });
    }
    match rule.frame.first() {
        Some(FrameElement {
            kind: ElementKind::Verb,
            optional: false,
        }) => {}
        _ => return Err(LexiconError::VerbPosition { rule: name(), position: 0 }),
    }
    // 0 = arguments, 1 = after means, 2 = after frequency
    let mut tail = 0;
    for (position, el) in rule.frame.iter().enumerate().skip(1) {
        let stage = match el.kind {
            ElementKind::Means => 1,
            ElementKind::Frequency => 2,
            _ => 0,
        };
        if stage < tail || (stage > 0 && (stage == tail || !el.optional)) {
            return Err(LexiconError::AdjunctPosition { rule: name(), position });
        }
        tail = stage;
        match &el.kind {
            ElementKind::Verb => {
                return Err(LexiconError::VerbPosition { rule: name(), position });
            }
            ElementKind::Keyword(words) => {
                let bad = |reason: &str| LexiconError::InvalidKeywords {
                    rule: name(),
                    position,
                    reason: reason.to_string(),
                };
                if words.is_empty() {
                    return Err(bad("empty keyword list"));
                }
                for w in words {
                    if !w.split(' ').all(is_lower_word) {
                        return Err(bad(&format!("{w:?} is not a lowercase word or phrase")));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconFile {
    version: String,
    rules: Vec<RawRule>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    class: String,
    verbs: Vec<String>,
    frame: Vec<RawElement>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    kind: String,
    #[serde(default)]
    optional: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    keywords: Option<Vec<String>>,
}

impl RawRule {
    fn into_frame(self) -> Result<RuleFrame, LexiconError> {
        let rule = self.class;
        let frame = self
            .frame
            .into_iter()
            .enumerate()
            .map(|(position, el)| {
                let kind = match (el.kind.as_str(), el.keywords) {
                    ("keyword", Some(words)) => ElementKind::Keyword(words),
                    ("keyword", None) => {
                        return Err(LexiconError::InvalidKeywords {
                            rule: rule.clone(),
                            position,
                            reason: "missing keywords".into(),
                        })
                    }
                    (_, Some(_)) => {
                        return Err(LexiconError::InvalidKeywords {
                            rule: rule.clone(),
                            position,
                            reason: format!("keywords given for {} element", el.kind),
                        })
                    }
                    ("verb", None) => ElementKind::Verb,
                    ("actor", None) => ElementKind::Actor,
                    ("text", None) => ElementKind::Text,
                    ("means", None) => ElementKind::Means,
                    ("frequency", None) => ElementKind::Frequency,
                    (other, None) => {
                        return Err(LexiconError::UnknownKind {
                            rule: rule.clone(),
                            position,
                            kind: other.to_string(),
                        })
                    }
                };
                Ok(FrameElement {
                    kind,
                    optional: el.optional,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RuleFrame {
            rule_id: rule,
            verbs: self.verbs,
            frame,
        })
    }

    fn from_frame(rule: &RuleFrame) -> RawRule {
        RawRule {
            class: rule.rule_id.clone(),
            verbs: rule.verbs.clone(),
            frame: rule
                .frame
                .iter()
                .map(|el| RawElement {
                    kind: el.kind.name().to_string(),
                    optional: el.optional,
                    keywords: match &el.kind {
                        ElementKind::Keyword(words) => Some(words.clone()),
                        _ => None,
                    },
                })
                .collect(),
        }
    }
}
