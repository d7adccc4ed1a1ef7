//! Plain-text catalog formats.
//!
//! A rectangle block is a header line `n k` followed by `k` rows of `n`
//! space-separated decimal symbols; blocks are separated by one blank line
//! and lines starting with `#` are comments. Arrays use a `rows cols v`
//! header. The writer emits a canonical formatting, so write -> read ->
//! write is byte-stable.

use std::fmt::Write as _;

use design_forge_core::arrays::GridArray;
use design_forge_core::design::{Params, Rectangle};

/// A parse failure, with the 1-based line number of the offending line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Parses a rectangle catalog.
pub fn parse_rectangles(text: &str) -> Result<Vec<Rectangle>, ParseError> {
    let mut out = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .peekable();
    loop {
        // Skip blank separators.
        while matches!(lines.peek(), Some((_, l)) if l.trim().is_empty()) {
            lines.next();
        }
        let Some((lineno, header)) = lines.next() else { break };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return fail(lineno, format!("expected a header 'n k', got {header:?}"));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| ParseError { line: lineno, message: format!("bad n {:?}", fields[0]) })?;
        let k: usize = fields[1]
            .parse()
            .map_err(|_| ParseError { line: lineno, message: format!("bad k {:?}", fields[1]) })?;
        let params = Params::new(n, k)
            .map_err(|e| ParseError { line: lineno, message: e.to_string() })?;
        let mut cells = Vec::with_capacity(n * k);
        for _ in 0..k {
            let Some((rowno, row)) = lines.next() else {
                return fail(lineno, format!("rectangle needs {k} rows, file ended early"));
            };
            if row.trim().is_empty() {
                return fail(rowno, format!("rectangle needs {k} rows, found a blank line"));
            }
            let symbols: Result<Vec<u8>, _> =
                row.split_whitespace().map(|t| t.parse::<u8>()).collect();
            let symbols = symbols
                .map_err(|_| ParseError { line: rowno, message: format!("bad symbol in {row:?}") })?;
            if symbols.len() != n {
                return fail(rowno, format!("expected {n} symbols, got {}", symbols.len()));
            }
            cells.extend_from_slice(&symbols);
        }
        let rect = Rectangle::new(params, cells)
            .map_err(|e| ParseError { line: lineno, message: e.to_string() })?;
        out.push(rect);
    }
    Ok(out)
}

fn push_row(out: &mut String, row: impl Iterator<Item = u8>) {
    let mut first = true;
    for v in row {
        if !first {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
        first = false;
    }
    out.push('\n');
}

/// Canonical catalog formatting: blocks separated by one blank line.
pub fn write_rectangles(rects: &[Rectangle]) -> String {
    let mut out = String::new();
    for (i, r) in rects.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{} {}", r.n(), r.k());
        for row in 0..r.k() {
            push_row(&mut out, r.row(row).iter().copied());
        }
    }
    out
}

/// Array blocks use a `rows cols v` header; cells must be filled.
pub fn write_arrays(arrays: &[GridArray]) -> String {
    let mut out = String::new();
    for (i, a) in arrays.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{} {} {}", a.rows(), a.cols(), a.symbol_count());
        for r in 0..a.rows() {
            push_row(&mut out, (0..a.cols()).map(|c| a.get(r, c).expect("full array")));
        }
    }
    out
}
