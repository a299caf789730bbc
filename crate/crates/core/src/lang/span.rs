use std::fmt;

/// A region of the source text. `line` and `column` are 1-based; `column`
/// counts characters, `byte_offset` and `length` count bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub byte_offset: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, byte_offset: usize, length: usize) -> Self {
        Self {
            line,
            column,
            byte_offset,
            length,
        }
    }

    pub fn end(&self) -> usize {
        self.byte_offset + self.length
    }

    /// Zero-length span located at the start of `self`.
    pub fn empty_at_start(&self) -> Self {
        Self { length: 0, ..*self }
    }

    /// Smallest span covering both `self` and `other`. Line and column come
    /// from whichever starts first.
    pub fn cover(&self, other: &SourceSpan) -> Self {
        let (first, _) = if self.byte_offset <= other.byte_offset {
            (self, other)
        } else {
            (other, self)
        };
        let end = self.end().max(other.end());
        Self {
            line: first.line,
            column: first.column,
            byte_offset: first.byte_offset,
            length: end - first.byte_offset,
        }
    }

    pub fn contains(&self, other: &SourceSpan) -> bool {
        other.byte_offset >= self.byte_offset && other.end() <= self.end()
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}
