use std::fmt;

use crate::diagnostic::{Code, Diagnostic};
use crate::source::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    /// Letters, digits, `_`, and inner hyphens (`Relevant-Stakeholders`).
    Word(String),
    /// Contents of a double-quoted literal with escapes resolved.
    Str(String),
    Colon,
    Comma,
    Period,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Word(w) => write!(f, "`{w}`"),
            TokenKind::Str(s) => write!(f, "string {s:?}"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Period => f.write_str("`.`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

impl Token {
    pub fn word(&self) -> Option<&str> {
        match &self.kind {
            TokenKind::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_word(&self, w: &str) -> bool {
        self.word() == Some(w)
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Splits `text` into tokens. Lexical errors are reported and lexing
/// continues: an unterminated string still yields a `Str` token running to
/// the end of its line.
pub fn tokenize(text: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let mut chars = text.char_indices().peekable();

    while let Some((start, c)) = chars.next() {
        let single = |kind| Token {
            kind,
            span: Span::new(start, start + 1),
        };
        match c {
            c if c.is_whitespace() => {}
            '/' if matches!(chars.peek(), Some((_, '/'))) => {
                while chars.next_if(|&(_, c)| c != '\n').is_some() {}
            }
            ':' => tokens.push(single(TokenKind::Colon)),
            ',' => tokens.push(single(TokenKind::Comma)),
            '.' => tokens.push(single(TokenKind::Period)),
            '"' => {
                let mut value = String::new();
                let mut end = None;
                while let Some(&(i, c)) = chars.peek() {
                    match c {
                        '\n' => break,
                        '"' => {
                            chars.next();
                            end = Some(i + 1);
                            break;
                        }
                        '\\' => {
                            chars.next();
                            match chars.peek() {
                                Some(&(_, e @ ('"' | '\\'))) => {
                                    value.push(e);
                                    chars.next();
                                }
                                _ => value.push('\\'),
                            }
                        }
                        _ => {
                            value.push(c);
                            chars.next();
                        }
                    }
                }
                let end = end.unwrap_or_else(|| {
                    let stop = chars.peek().map_or(text.len(), |&(i, _)| i);
                    diags.push(Diagnostic::new(
                        Code::UnterminatedString,
                        Span::new(start, stop),
                        "unterminated string literal",
                    ));
                    stop
                });
                tokens.push(Token {
                    kind: TokenKind::Str(value),
                    span: Span::new(start, end),
                });
            }
            c if is_word_char(c) => {
                let mut end = start + c.len_utf8();
                loop {
                    match chars.peek() {
                        Some(&(i, c)) if is_word_char(c) => {
                            end = i + c.len_utf8();
                            chars.next();
                        }
                        Some(&(i, '-')) if text[i + 1..].starts_with(is_word_char) => {
                            end = i + 1;
                            chars.next();
                        }
                        _ => break,
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Word(text[start..end].to_string()),
                    span: Span::new(start, end),
                });
            }
            other => diags.push(Diagnostic::new(
                Code::InvalidCharacter,
                Span::new(start, start + other.len_utf8()),
                format!("unexpected character {other:?}"),
            )),
        }
    }
    (tokens, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        let (tokens, diags) = tokenize(text);
        assert!(diags.is_empty(), "{diags:?}");
        tokens.into_iter().map(|t| t.kind).collect()
    }

    fn w(s: &str) -> TokenKind {
        TokenKind::Word(s.into())
    }

    #[test]
    fn words_strings_punctuation() {
        assert_eq!(
            kinds(r#"req R1: the System shall track "the location". Relevant-Stakeholders: A, B."#),
            vec![
                w("req"),
                w("R1"),
                TokenKind::Colon,
                w("the"),
                w("System"),
                w("shall"),
                w("track"),
                TokenKind::Str("the location".into()),
                TokenKind::Period,
                w("Relevant-Stakeholders"),
                TokenKind::Colon,
                w("A"),
                TokenKind::Comma,
                w("B"),
                TokenKind::Period,
            ]
        );
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(kinds("// header\nactor X // trailing\n"), vec![w("actor"), w("X")]);
    }

    #[test]
    fn escapes_in_strings() {
        assert_eq!(
            kinds(r#""say \"hi\" \\ \n""#),
            vec![TokenKind::Str(r#"say "hi" \ \n"#.into())]
        );
    }

    #[test]
    fn trailing_hyphen_is_not_part_of_word() {
        let (tokens, diags) = tokenize("a- b");
        assert_eq!(tokens[0].kind, w("a"));
        assert_eq!(diags[0].code, Code::InvalidCharacter);
    }

    #[test]
    fn unterminated_string_stops_at_line_end() {
        let text = "x \"open\nreq";
        let (tokens, diags) = tokenize(text);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::UnterminatedString);
        assert_eq!(diags[0].span, Span::new(2, 7));
        assert_eq!(tokens[1].kind, TokenKind::Str("open".into()));
        assert_eq!(tokens[2].kind, w("req"));
    }

    #[test]
    fn spans_cover_source_text() {
        let text = "req  Ä1: \"ü\".";
        let (tokens, _) = tokenize(text);
        assert_eq!(&text[tokens[1].span.start..tokens[1].span.end], "Ä1");
        assert_eq!(&text[tokens[3].span.start..tokens[3].span.end], "\"ü\"");
    }
}
