use std::fmt;
use std::path::Path;

/// Half-open byte range into a [`SourceDocument`].
///
/// Nodes built without a backing source (JSON import, programmatic
/// construction) carry [`Span::SYNTHETIC`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub const SYNTHETIC: Span = Span { start: 0, end: 0 };

    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    /// Smallest span covering both.
    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// 1-based line and column (column counted in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineCol {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for LineCol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone)]
pub struct SourceDocument {
    text: String,
    origin: String,
    line_starts: Vec<usize>,
}

impl SourceDocument {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> Self {
        let text = text.into();
        let line_starts = std::iter::once(0)
            .chain(text.match_indices('\n').map(|(i, _)| i + 1))
            .collect();
        SourceDocument {
            text,
            origin: origin.into(),
            line_starts,
        }
    }

    pub fn in_memory(text: impl Into<String>) -> Self {
        Self::new(text, "<memory>")
    }

    pub fn from_path(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::new(text, path.display().to_string()))
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn contains(&self, span: Span) -> bool {
        span.start <= span.end && span.end <= self.text.len()
    }

    pub fn slice(&self, span: Span) -> &str {
        &self.text[span.start..span.end]
    }

    /// Position of a byte offset. Offsets past the end clamp to the end.
    pub fn line_col(&self, offset: usize) -> LineCol {
        let offset = offset.min(self.text.len());
        let line = match self.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let start = self.line_starts[line];
        // Offsets come from token boundaries, so they are char boundaries.
        let column = self.text[start..offset].chars().count() + 1;
        LineCol {
            line: line + 1,
            column,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_col_counts_from_one() {
        let src = SourceDocument::in_memory("ab\ncd\n\nx");
        assert_eq!(src.line_col(0), LineCol { line: 1, column: 1 });
        assert_eq!(src.line_col(1), LineCol { line: 1, column: 2 });
        assert_eq!(src.line_col(3), LineCol { line: 2, column: 1 });
        assert_eq!(src.line_col(6), LineCol { line: 3, column: 1 });
        assert_eq!(src.line_col(7), LineCol { line: 4, column: 1 });
        assert_eq!(src.line_col(100), LineCol { line: 4, column: 2 });
    }

    #[test]
    fn columns_count_chars_not_bytes() {
        let src = SourceDocument::in_memory("\"Grüße\" x");
        assert_eq!(src.line_col(src.text().find('x').unwrap()).column, 9);
    }

    #[test]
    fn empty_document_has_one_line() {
        let src = SourceDocument::in_memory("");
        assert_eq!(src.line_col(0), LineCol { line: 1, column: 1 });
        assert!(src.contains(Span::SYNTHETIC));
    }
}
