//! The compact text notation for unit matrices.
//!
//! Symbols: `1` → 1, `-` → −1, `i` → i, `j` → −i. One row per line; spaces and
//! tabs between symbols are ignored. A file wraps the body in a header line
//! `CHM <order>` or `RHM <order>`, optionally preceded by `#` comment lines:
//!
//! ```text
//! # a pair member
//! CHM 2
//! 1i
//! j-
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{UnitEntry, UnitMatrix};

/// Parse failure. `row` is the 1-based line number of the input, `column` the
/// 1-based symbol position within that line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unknown symbol {symbol:?} at row {row}, column {column}")]
    UnknownSymbol {
        symbol: char,
        row: usize,
        column: usize,
    },
    #[error("row {row} has {found} symbols, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { found: usize, expected: usize },
    #[error("bad header {0:?}; expected `CHM <order>` or `RHM <order>`")]
    Header(String),
    #[error("symbol {symbol:?} at row {row}, column {column} is not allowed in a real matrix")]
    NonReal {
        symbol: char,
        row: usize,
        column: usize,
    },
}

/// Parses a matrix body. Blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<UnitMatrix, ParseError> {
    let rows = parse_rows(text.lines().enumerate().map(|(k, l)| (k + 1, l)), None)?;
    build(rows)
}

fn parse_rows<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    expected: Option<usize>,
) -> Result<Vec<Vec<UnitEntry>>, ParseError> {
    let mut rows: Vec<Vec<UnitEntry>> = Vec::new();
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut column = 0;
        for c in line.chars() {
            if c.is_whitespace() {
                continue;
            }
            column += 1;
            match UnitEntry::from_symbol(c) {
                Some(e) => row.push(e),
                None => {
                    return Err(ParseError::UnknownSymbol {
                        symbol: c,
                        row: line_no,
                        column,
                    })
                }
            }
        }
        let width = expected.or(rows.first().map(Vec::len)).unwrap_or(row.len());
        if row.len() != width {
            return Err(ParseError::Ragged {
                row: line_no,
                found: row.len(),
                expected: width,
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

fn build(rows: Vec<Vec<UnitEntry>>) -> Result<UnitMatrix, ParseError> {
    let Some(first) = rows.first() else {
        return Err(ParseError::Empty);
    };
    if rows.len() != first.len() {
        return Err(ParseError::RowCount {
            found: rows.len(),
            expected: first.len(),
        });
    }
    Ok(UnitMatrix::from_rows(rows).expect("rows validated as square"))
}

/// Renders a matrix body: one row per line, no separators, no trailing newline.
pub fn serialize_matrix(m: &UnitMatrix) -> String {
    m.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// Complex Hadamard candidate, alphabet `1 - i j`.
    Complex,
    /// Real Hadamard candidate, alphabet `1 -`.
    Real,
}

impl MatrixKind {
    pub fn tag(self) -> &'static str {
        match self {
            MatrixKind::Complex => "CHM",
            MatrixKind::Real => "RHM",
        }
    }

    /// `RHM` for real matrices, `CHM` otherwise.
    pub fn of(m: &UnitMatrix) -> MatrixKind {
        if m.is_real() {
            MatrixKind::Real
        } else {
            MatrixKind::Complex
        }
    }
}

impl FromStr for MatrixKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "CHM" => Ok(MatrixKind::Complex),
            "RHM" => Ok(MatrixKind::Real),
            _ => Err(()),
        }
    }
}

/// A matrix file: kind, order and body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    pub kind: MatrixKind,
    pub matrix: UnitMatrix,
}

impl MatrixDocument {
    pub fn new(matrix: UnitMatrix) -> Self {
        MatrixDocument {
            kind: MatrixKind::of(&matrix),
            matrix,
        }
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn parse(text: &str) -> Result<MatrixDocument, ParseError> {
        let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
        let header = loop {
            match lines.next() {
                None => return Err(ParseError::Empty),
                Some((_, l)) if l.trim().is_empty() || l.trim_start().starts_with('#') => continue,
                Some((_, l)) => break l.trim(),
            }
        };
        let mut parts = header.split_whitespace();
        let (kind, order) = match (
            parts.next().map(str::parse::<MatrixKind>),
            parts.next().map(str::parse::<usize>),
            parts.next(),
        ) {
            (Some(Ok(kind)), Some(Ok(order)), None) if order > 0 => (kind, order),
            _ => return Err(ParseError::Header(header.to_string())),
        };
        let body: Vec<(usize, &str)> = lines.collect();
        let rows = parse_rows(body.iter().copied(), Some(order))?;
        if rows.len() != order {
            return Err(ParseError::RowCount {
                found: rows.len(),
                expected: order,
            });
        }
        if kind == MatrixKind::Real {
            for &(line_no, line) in &body {
                if let Some((column, symbol)) = line
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .enumerate()
                    .find(|(_, c)| matches!(c, 'i' | 'j'))
                {
                    return Err(ParseError::NonReal {
                        symbol,
                        row: line_no,
                        column: column + 1,
                    });
                }
            }
        }
        Ok(MatrixDocument {
            kind,
            matrix: build(rows)?,
        })
    }
}

impl fmt::Display for MatrixDocument {
    /// Canonical file form: header, rows, trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.kind.tag(), self.order())?;
        writeln!(f, "{}", self.matrix)
    }
}

/// Parses either a full document or a bare body, returning the matrix.
pub fn parse_any(text: &str) -> Result<UnitMatrix, ParseError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with("CHM") || l.starts_with("RHM") => {
            Ok(MatrixDocument::parse(text)?.matrix)
        }
        _ => parse_matrix(text),
    }
}
