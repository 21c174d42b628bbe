//! Recursive-descent parser for `.hmreq` documents.
//!
//! ```text
//! document     -> (declaration | requirement)*
//! declaration  -> ('stakeholder' | 'actor') ID
//! requirement  -> 'req' ID ':' pre actor modal 'not'? block '.' stakeholders
//! pre          -> ε
//!               | ('While' | 'When') subject? STRING ','
//!               | 'If' subject? STRING ','? 'then'
//!               | 'Where' STRING ','
//! subject      -> article? ID
//! actor        -> article? ID
//! block        -> VERB <elements of the verb's rule frame>
//! stakeholders -> 'Relevant-Stakeholders' ':' ID (',' ID)* '.'
//! ```
//!
//! A malformed requirement produces one error and the parser skips ahead to
//! the next `req`, `stakeholder`, or `actor` keyword.

use crate::ast::*;
use crate::diagnostic::{has_errors, Code, Diagnostic};
use crate::lexer::{tokenize, Token, TokenKind};
use crate::lexicon::{ElementKind, FrameElement, Lexicon, RuleFrame};
use crate::resolve::resolve;
use crate::source::{SourceDocument, Span};

pub const STAKEHOLDERS_KEYWORD: &str = "Relevant-Stakeholders";
const RESERVED: [&str; 3] = ["req", "stakeholder", "actor"];

/// Result of [`parse_document`]: the tree is present iff no error was
/// reported.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub document: Option<RequirementDocument>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Parsed {
    pub fn has_errors(&self) -> bool {
        has_errors(&self.diagnostics)
    }
}

pub fn parse_document(src: &SourceDocument, lexicon: &Lexicon) -> Parsed {
    let (tokens, mut diagnostics) = tokenize(src.text());
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        lexicon,
        end: src.len(),
        diags: Vec::new(),
        doc: RequirementDocument::default(),
    };
    parser.document();
    let Parser { doc, diags, .. } = parser;
    diagnostics.extend(diags);
    diagnostics.extend(resolve(&doc));
    diagnostics.sort_by_key(|d| d.span.start);

    let document = (!has_errors(&diagnostics)).then_some(doc);
    Parsed {
        document,
        diagnostics,
    }
}

/// Marker for a requirement abandoned after reporting its error.
struct Abandon;

type PResult<T> = Result<T, Abandon>;

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    lexicon: &'a Lexicon,
    end: usize,
    diags: Vec<Diagnostic>,
    doc: RequirementDocument,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_word(&self) -> Option<&'a str> {
        self.peek().and_then(Token::word)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    /// Span of the next token, or an empty span at end of input.
    fn here(&self) -> Span {
        self.peek().map_or(Span::new(self.end, self.end), |t| t.span)
    }

    fn prev_span(&self) -> Span {
        self.pos
            .checked_sub(1)
            .and_then(|i| self.tokens.get(i))
            .map_or(Span::new(0, 0), |t| t.span)
    }

    fn fail<T>(&mut self, code: Code, span: Span, message: impl Into<String>) -> PResult<T> {
        self.diags.push(Diagnostic::new(code, span, message));
        Err(Abandon)
    }

    fn unexpected<T>(&mut self, expected: &str) -> PResult<T> {
        let span = self.here();
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_string(), |t| t.kind.to_string());
        self.fail(
            Code::UnexpectedToken,
            span,
            format!("expected {expected}, found {found}"),
        )
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> PResult<Span> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(t.span)
            }
            _ => self.unexpected(expected),
        }
    }

    fn at_top_level_keyword(&self) -> bool {
        self.peek_word().is_some_and(|w| RESERVED.contains(&w))
    }

    fn recover(&mut self) {
        while self.peek().is_some() && !self.at_top_level_keyword() {
            self.pos += 1;
        }
    }

    fn document(&mut self) {
        while let Some(tok) = self.peek() {
            let result = match tok.word() {
                Some("req") => self.requirement().map(|r| self.doc.requirements.push(r)),
                Some(kw @ ("stakeholder" | "actor")) => {
                    let kind = if kw == "actor" {
                        DeclarationKind::Actor
                    } else {
                        DeclarationKind::Stakeholder
                    };
                    self.declaration(kind).map(|d| self.doc.declarations.push(d))
                }
                _ => {
                    self.pos += 1;
                    self.fail(
                        Code::UnexpectedToken,
                        tok.span,
                        format!(
                            "expected `req`, `stakeholder` or `actor`, found {}",
                            tok.kind
                        ),
                    )
                }
            };
            if result.is_err() {
                self.recover();
            }
        }
    }

    fn identifier(&mut self, what: &str) -> PResult<(String, Span)> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Word(w),
                span,
            }) if !RESERVED.contains(&w.as_str()) => {
                self.pos += 1;
                if is_identifier(w) {
                    Ok((w.clone(), *span))
                } else {
                    self.fail(
                        Code::InvalidIdentifier,
                        *span,
                        format!("invalid {what} `{w}`: use letters, digits and `_`, starting with a letter"),
                    )
                }
            }
            _ => self.unexpected(what),
        }
    }

    fn declaration(&mut self, kind: DeclarationKind) -> PResult<Declaration> {
        let start = self.bump().expect("keyword").span;
        let (name, span) = self.identifier(&format!("{} name", kind.keyword()))?;
        Ok(Declaration {
            kind,
            name,
            span: start.to(span),
        })
    }

    fn requirement(&mut self) -> PResult<Requirement> {
        let start = self.bump().expect("req").span;
        let (id, _) = self.identifier("requirement id")?;
        self.expect(TokenKind::Colon, "`:` after requirement id")?;
        let pre = self.pre_statement()?;
        let actor = self.actor_ref(pre.variant == PreVariant::Ubiquitous)?;

        let modal = match self.peek_word().and_then(|w| w.parse::<Modal>().ok()) {
            Some(m) => {
                self.pos += 1;
                m
            }
            None => {
                let span = self.here();
                return self.fail(
                    Code::MissingModal,
                    span,
                    "expected a modal verb (shall, should, must, will, may)",
                );
            }
        };
        let negated = self.peek_word() == Some("not");
        if negated {
            self.pos += 1;
        }

        let block = self.block()?;
        let period = self.expect_period("requirement block")?;

        let stakeholders = self.stakeholders(period)?;
        Ok(Requirement {
            id,
            pre,
            content: RequirementContent {
                actor,
                modal,
                negated,
                block,
            },
            stakeholders,
            span: start.to(self.prev_span()),
        })
    }

    fn expect_period(&mut self, after: &str) -> PResult<Span> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Period,
                span,
            }) => {
                self.pos += 1;
                Ok(*span)
            }
            _ => {
                let at = self.prev_span().end;
                self.fail(
                    Code::MissingPeriod,
                    Span::new(at, at),
                    format!("expected `.` after {after}"),
                )
            }
        }
    }

    fn pre_statement(&mut self) -> PResult<EarsPreStatement> {
        let Some(word) = self.peek_word() else {
            return Ok(self.ubiquitous());
        };
        let variant = match word.to_ascii_lowercase().as_str() {
            "while" => PreVariant::While,
            "when" => PreVariant::When,
            "if" => PreVariant::IfThen,
            "where" => PreVariant::Where,
            _ => return Ok(self.ubiquitous()),
        };
        let start = self.bump().expect("keyword").span;

        let subject = match self.peek() {
            Some(Token {
                kind: TokenKind::Word(_),
                span,
            }) => {
                if !variant.allows_subject() {
                    return self.fail(
                        Code::UnexpectedToken,
                        *span,
                        "`Where` pre-statements take a quoted condition only, no subject",
                    );
                }
                Some(self.actor_ref(false)?)
            }
            _ => None,
        };
        let condition = match self.peek() {
            Some(Token {
                kind: TokenKind::Str(s),
                ..
            }) => {
                self.pos += 1;
                s.clone()
            }
            _ => return self.unexpected("quoted condition"),
        };
        if let Some(conj @ ("and" | "or")) = self.peek_word() {
            let span = self.here();
            return self.fail(
                Code::ConjunctionInPreStatement,
                span,
                format!("`{conj}` cannot join conditions in a pre-statement; split the requirement"),
            );
        }
        if variant == PreVariant::IfThen {
            if self.peek().is_some_and(|t| t.kind == TokenKind::Comma) {
                self.pos += 1;
            }
            if self.peek_word() != Some("then") {
                return self.unexpected("`then`");
            }
            self.pos += 1;
        } else {
            self.expect(TokenKind::Comma, "`,` after pre-statement")?;
        }
        Ok(EarsPreStatement {
            variant,
            subject,
            condition: Some(condition),
            span: start.to(self.prev_span()),
        })
    }

    fn ubiquitous(&self) -> EarsPreStatement {
        let at = self.here().start;
        EarsPreStatement {
            span: Span::new(at, at),
            ..EarsPreStatement::ubiquitous()
        }
    }

    /// `article? ID`; capitalized articles only at sentence start.
    fn actor_ref(&mut self, sentence_initial: bool) -> PResult<ActorRef> {
        let start = self.here();
        let article = match self.peek_word() {
            Some(w) => Article::from_lowercase(w).or_else(|| {
                sentence_initial
                    .then(|| Article::from_lowercase(&w.to_lowercase()))
                    .flatten()
                    .filter(|_| w.chars().next().is_some_and(char::is_uppercase))
            }),
            None => None,
        };
        if article.is_some() {
            self.pos += 1;
        }
        let (name, span) = self.identifier("actor name")?;
        Ok(ActorRef {
            name,
            article,
            span: start.to(span),
        })
    }

    fn block(&mut self) -> PResult<RequirementBlock> {
        let (verb, verb_span) = match self.peek() {
            Some(Token {
                kind: TokenKind::Word(w),
                span,
            }) => (w.clone(), *span),
            _ => return self.unexpected("verb"),
        };
        let Some(rule) = self.lexicon.lookup(&verb) else {
            return self.fail(
                Code::UnknownVerb,
                verb_span,
                format!("unknown verb `{verb}`: not in any lexicon rule"),
            );
        };
        self.pos += 1;

        let args_start = self.pos;
        while let Some(t) = self.peek() {
            if t.kind == TokenKind::Period
                || t.is_word(STAKEHOLDERS_KEYWORD)
                || t.is_word("req")
            {
                break;
            }
            self.pos += 1;
        }
        let args = &self.tokens[args_start..self.pos];
        let span = verb_span.to(self.prev_span());

        match match_frame(rule.arguments(), args) {
            Some((elements, adjuncts)) => Ok(RequirementBlock {
                rule_id: rule.rule_id.clone(),
                verb: verb.to_lowercase(),
                elements,
                adjuncts,
                span,
            }),
            None => self.fail(
                Code::FrameMismatch,
                span,
                format!(
                    "`{verb}` block does not match rule {}; expected: {}",
                    rule.rule_id,
                    frame_hint(rule)
                ),
            ),
        }
    }

    fn stakeholders(&mut self, period: Span) -> PResult<Vec<StakeholderRef>> {
        if self.peek_word() != Some(STAKEHOLDERS_KEYWORD) {
            return self.fail(
                Code::MissingStakeholders,
                period,
                "requirement must end with a `Relevant-Stakeholders:` clause",
            );
        }
        let kw = self.bump().expect("keyword").span;
        self.expect(TokenKind::Colon, "`:` after Relevant-Stakeholders")?;

        let mut refs: Vec<StakeholderRef> = Vec::new();
        loop {
            if refs.is_empty() && !self.peek().is_some_and(|t| t.word().is_some()) {
                let span = kw.to(self.prev_span());
                return self.fail(
                    Code::MissingStakeholders,
                    span,
                    "Relevant-Stakeholders list is empty",
                );
            }
            let (name, span) = self.identifier("stakeholder name")?;
            if refs.iter().any(|r| r.name == name) {
                self.diags.push(Diagnostic::new(
                    Code::DuplicateStakeholderRef,
                    span,
                    format!("stakeholder `{name}` listed more than once"),
                ));
            } else {
                refs.push(StakeholderRef { name, span });
            }
            if self.peek().is_some_and(|t| t.kind == TokenKind::Comma) {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect_period("stakeholder list")?;
        Ok(refs)
    }
}

fn frame_hint(rule: &RuleFrame) -> String {
    let sig = rule.signature();
    // Drop the verb alternatives; the user already wrote one of them.
    match sig.split_once(' ') {
        Some((_, rest)) => rest.to_string(),
        None => "nothing after the verb".to_string(),
    }
}

enum Bound {
    Element(BlockElement),
    Means(String),
    Frequency(Frequency),
}

/// Aligns the tokens between verb and period against the frame's argument
/// elements. Optional elements are tried present before absent, so the
/// first alignment found is deterministic.
pub(crate) fn match_frame(
    frame: &[FrameElement],
    tokens: &[Token],
) -> Option<(Vec<BlockElement>, Adjuncts)> {
    // Words that open a keyword or adjunct are never read as bare actor names.
    let mut openers: Vec<&str> = vec!["by", "every"];
    for el in frame {
        if let ElementKind::Keyword(choices) = &el.kind {
            openers.extend(choices.iter().filter_map(|c| c.split(' ').next()));
        }
    }
    let mut bound = Vec::new();
    if !align(frame, tokens, &openers, &mut bound) {
        return None;
    }
    let mut elements = Vec::new();
    let mut adjuncts = Adjuncts::default();
    for b in bound {
        match b {
            Bound::Element(e) => elements.push(e),
            Bound::Means(m) => adjuncts.means = Some(m),
            Bound::Frequency(f) => adjuncts.frequency = Some(f),
        }
    }
    Some((elements, adjuncts))
}

fn align(frame: &[FrameElement], tokens: &[Token], openers: &[&str], out: &mut Vec<Bound>) -> bool {
    let Some((el, rest)) = frame.split_first() else {
        return tokens.is_empty();
    };
    if let Some((used, b)) = match_element(&el.kind, tokens, openers) {
        out.push(b);
        if align(rest, &tokens[used..], openers, out) {
            return true;
        }
        out.pop();
    }
    el.optional && align(rest, tokens, openers, out)
}

fn string_at(tokens: &[Token], i: usize) -> Option<&str> {
    match tokens.get(i).map(|t| &t.kind) {
        Some(TokenKind::Str(s)) => Some(s),
        _ => None,
    }
}

fn words_at(tokens: &[Token], words: &[&str]) -> bool {
    words
        .iter()
        .enumerate()
        .all(|(i, w)| tokens.get(i).is_some_and(|t| t.is_word(w)))
}

fn match_element(kind: &ElementKind, tokens: &[Token], openers: &[&str]) -> Option<(usize, Bound)> {
    let first = tokens.first()?;
    match kind {
        ElementKind::Verb => None,
        ElementKind::Text => string_at(tokens, 0).map(|s| {
            (
                1,
                Bound::Element(BlockElement::Text {
                    value: s.to_string(),
                    span: first.span,
                }),
            )
        }),
        ElementKind::Actor => {
            let article = first.word().and_then(Article::from_lowercase);
            let name_at = usize::from(article.is_some());
            let name_tok = tokens.get(name_at)?;
            let name = name_tok.word()?;
            if Article::from_lowercase(name).is_some()
                || RESERVED.contains(&name)
                || (article.is_none() && openers.contains(&name))
                || !is_identifier(name)
            {
                return None;
            }
            Some((
                name_at + 1,
                Bound::Element(BlockElement::Actor(ActorRef {
                    name: name.to_string(),
                    article,
                    span: first.span.to(name_tok.span),
                })),
            ))
        }
        ElementKind::Keyword(choices) => choices.iter().find_map(|phrase| {
            let words: Vec<&str> = phrase.split(' ').collect();
            words_at(tokens, &words).then(|| {
                (
                    words.len(),
                    Bound::Element(BlockElement::Keyword {
                        literal: phrase.clone(),
                        span: first.span.to(tokens[words.len() - 1].span),
                    }),
                )
            })
        }),
        ElementKind::Means => {
            if !words_at(tokens, &["by", "means", "of"]) {
                return None;
            }
            string_at(tokens, 3).map(|s| (4, Bound::Means(s.to_string())))
        }
        ElementKind::Frequency => {
            if !first.is_word("every") {
                return None;
            }
            let amount = string_at(tokens, 1)?;
            let unit = tokens.get(2)?.word()?;
            if !unit.chars().all(|c| c.is_ascii_lowercase()) {
                return None;
            }
            Some((
                3,
                Bound::Frequency(Frequency {
                    amount: amount.to_string(),
                    unit: unit.to_string(),
                }),
            ))
        }
    }
}
