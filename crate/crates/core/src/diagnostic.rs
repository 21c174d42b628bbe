use std::fmt;

use serde::Serialize;

use crate::source::{SourceDocument, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

macro_rules! codes {
    ($($variant:ident => $text:literal, $sev:ident;)*) => {
        /// Stable machine identifiers. The string forms are part of the CLI
        /// output contract and must not change.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Code {
            $($variant,)*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Code::$variant => $text,)*
                }
            }

            pub fn severity(self) -> Severity {
                match self {
                    $(Code::$variant => Severity::$sev,)*
                }
            }
        }
    };
}

codes! {
    UndeclaredActor => "E001_UNDECLARED_ACTOR", Error;
    UndeclaredStakeholder => "E002_UNDECLARED_STAKEHOLDER", Error;
    MissingStakeholders => "E003_MISSING_STAKEHOLDERS", Error;
    UnknownVerb => "E004_UNKNOWN_VERB", Error;
    FrameMismatch => "E005_FRAME_MISMATCH", Error;
    DuplicateRequirementId => "E006_DUPLICATE_REQUIREMENT_ID", Error;
    DuplicateDeclaration => "E007_DUPLICATE_DECLARATION", Error;
    ConjunctionInPreStatement => "E008_CONJUNCTION_IN_PRESTATEMENT", Error;
    UnterminatedString => "E009_UNTERMINATED_STRING", Error;
    MissingPeriod => "E010_MISSING_PERIOD", Error;
    UnexpectedToken => "E011_UNEXPECTED_TOKEN", Error;
    InvalidCharacter => "E012_INVALID_CHARACTER", Error;
    MissingModal => "E013_MISSING_MODAL", Error;
    InvalidIdentifier => "E014_INVALID_IDENTIFIER", Error;
    DuplicateStakeholderRef => "W001_DUPLICATE_STAKEHOLDER_REF", Warning;
    UnusedStakeholder => "W002_UNUSED_STAKEHOLDER", Warning;
    RedundantActorDeclaration => "W003_REDUNDANT_ACTOR_DECLARATION", Warning;
    ActorNotRelevant => "W010_ACTOR_NOT_RELEVANT", Warning;
    EmbeddedActor => "W011_EMBEDDED_ACTOR", Warning;
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn new(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: code.severity(),
            code,
            message: message.into(),
            span,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `path:line:col: severity[code]: message`
    pub fn render(&self, src: &SourceDocument) -> String {
        let at = src.line_col(self.span.start);
        format!(
            "{}:{}: {}[{}]: {}",
            src.origin(),
            at,
            self.severity,
            self.code,
            self.message
        )
    }

    /// One JSON object per diagnostic, fixed key order.
    pub fn render_machine(&self, src: &SourceDocument) -> String {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Line<'a> {
            path: &'a str,
            line: usize,
            column: usize,
            end_line: usize,
            end_column: usize,
            severity: Severity,
            code: &'a str,
            message: &'a str,
        }
        let start = src.line_col(self.span.start);
        let end = src.line_col(self.span.end);
        serde_json::to_string(&Line {
            path: src.origin(),
            line: start.line,
            column: start.column,
            end_line: end.line,
            end_column: end.column,
            severity: self.severity,
            code: self.code.as_str(),
            message: &self.message,
        })
        .expect("diagnostic serializes")
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_strings_are_unique_and_prefixed_by_severity() {
        let mut seen = std::collections::HashSet::new();
        for code in Code::ALL {
            assert!(seen.insert(code.as_str()));
            let prefix = match code.severity() {
                Severity::Error => 'E',
                Severity::Warning => 'W',
            };
            assert!(code.as_str().starts_with(prefix), "{code}");
        }
    }

    #[test]
    fn render_text_and_machine() {
        let src = SourceDocument::new("req R3:\n  x", "a.hmreq");
        let d = Diagnostic::new(Code::MissingStakeholders, Span::new(10, 11), "missing");
        assert_eq!(
            d.render(&src),
            "a.hmreq:2:3: error[E003_MISSING_STAKEHOLDERS]: missing"
        );
        assert_eq!(
            d.render_machine(&src),
            r#"{"path":"a.hmreq","line":2,"column":3,"endLine":2,"endColumn":4,"severity":"error","code":"E003_MISSING_STAKEHOLDERS","message":"missing"}"#
        );
    }
}
