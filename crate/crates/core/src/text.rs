//! Line-oriented text format for matroids.
//!
//! ```text
//! # comment
//! matroid U23
//! ground a b c
//! circuit a b c
//! end
//! ```
//!
//! `#` starts a comment anywhere on a line and blank lines are ignored.
//! Labels match `[A-Za-z0-9_]+`; ground order fixes the element indices. A
//! stream may hold several documents back to back.

use std::fmt::Write as _;

use thiserror::Error;

use crate::matroid::{Matroid, MatroidError};
use crate::sets::{GroundSet, SetFamily, SubsetMask, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown label `{label}`")]
    UnknownLabel { line: usize, column: usize, label: String },
    #[error("line {line}, column {column}: duplicate label `{label}`")]
    DuplicateLabel { line: usize, column: usize, label: String },
    #[error("line {line}: circuit listed twice")]
    DuplicateCircuit { line: usize },
    #[error("line {line}: {source}")]
    Axiom { line: usize, source: MatroidError },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match *self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownLabel { line, .. }
            | ParseError::DuplicateLabel { line, .. }
            | ParseError::DuplicateCircuit { line }
            | ParseError::Axiom { line, .. } => line,
        }
    }
}

/// A parsed document before circuit validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidDocument {
    pub name: Option<String>,
    pub ground: Vec<String>,
    pub circuit_lines: Vec<Vec<String>>,
    /// Source line of each circuit; empty for documents built in memory.
    pub circuit_line_numbers: Vec<usize>,
}

impl MatroidDocument {
    pub fn from_matroid(m: &Matroid, name: Option<&str>) -> Self {
        let ground = m.ground();
        MatroidDocument {
            name: name.map(str::to_string),
            ground: ground.labels().to_vec(),
            circuit_lines: m
                .circuits()
                .iter()
                .map(|c| c.iter().map(|i| ground.label(i).to_string()).collect())
                .collect(),
            circuit_line_numbers: Vec::new(),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match &self.name {
            Some(name) => writeln!(out, "matroid {name}").unwrap(),
            None => out.push_str("matroid\n"),
        }
        writeln!(out, "ground {}", self.ground.join(" ")).unwrap();
        for c in &self.circuit_lines {
            writeln!(out, "circuit {}", c.join(" ")).unwrap();
        }
        out.push_str("end\n");
        out
    }

    /// Validates the circuits and builds the matroid.
    pub fn to_matroid(&self) -> Result<Matroid, ParseError> {
        let ground =
            GroundSet::new(self.ground.iter().cloned()).map_err(|e| ParseError::Axiom { line: 0, source: e.into() })?;
        let line_of = |k: usize| self.circuit_line_numbers.get(k).copied().unwrap_or(0);
        let mut masks: Vec<(SubsetMask, usize)> = Vec::with_capacity(self.circuit_lines.len());
        let mut family = SetFamily::new();
        for (k, labels) in self.circuit_lines.iter().enumerate() {
            let mask = ground
                .mask_of(labels.iter().map(String::as_str))
                .map_err(|e| ParseError::Axiom { line: line_of(k), source: e.into() })?;
            if !family.insert(mask) {
                return Err(ParseError::DuplicateCircuit { line: line_of(k) });
            }
            masks.push((mask, line_of(k)));
        }
        Matroid::from_circuits(ground, family).map_err(|source| {
            let involved: Vec<SubsetMask> = match source {
                MatroidError::NotClutter { smaller, larger } => vec![smaller, larger],
                MatroidError::EliminationFailure { c1, c2, .. } => vec![c1, c2],
                _ => Vec::new(),
            };
            let line = masks.iter().filter(|(m, _)| involved.contains(m)).map(|&(_, l)| l).max().unwrap_or(0);
            ParseError::Axiom { line, source }
        })
    }
}

fn is_label(token: &str) -> bool {
    !token.is_empty() && token.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &content[s..i], column: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &content[s..], column: s + 1 });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

fn labels<'a>(line: usize, toks: &[Token<'a>]) -> Result<Vec<&'a str>, ParseError> {
    let mut out: Vec<&str> = Vec::with_capacity(toks.len());
    for t in toks {
        if !is_label(t.text) {
            return Err(syntax(line, t.column, format!("invalid label `{}`", t.text)));
        }
        if out.contains(&t.text) {
            return Err(ParseError::DuplicateLabel { line, column: t.column, label: t.text.to_string() });
        }
        out.push(t.text);
    }
    Ok(out)
}

enum State {
    Outside,
    Header,
    Body,
}

/// Parses every document in `input`.
pub fn parse_documents(input: &str) -> Result<Vec<MatroidDocument>, ParseError> {
    let mut docs = Vec::new();
    let mut state = State::Outside;
    let mut current =
        MatroidDocument { name: None, ground: Vec::new(), circuit_lines: Vec::new(), circuit_line_numbers: Vec::new() };
    let mut last_line = 0;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        let rest = &toks[1..];
        match (&state, head.text) {
            (State::Outside, "matroid") => {
                current.name = match rest {
                    [] => None,
                    [name] if is_label(name.text) => Some(name.text.to_string()),
                    [name] => return Err(syntax(line, name.column, format!("invalid name `{}`", name.text))),
                    [_, extra, ..] => return Err(syntax(line, extra.column, "unexpected token after name")),
                };
                state = State::Header;
            }
            (State::Outside, _) => return Err(syntax(line, head.column, "expected `matroid`")),
            (State::Header, "ground") => {
                if rest.is_empty() {
                    return Err(syntax(line, head.column + head.text.len(), "ground needs at least one label"));
                }
                if rest.len() > MAX_GROUND {
                    return Err(syntax(
                        line,
                        rest[MAX_GROUND].column,
                        format!("ground has more than {MAX_GROUND} labels"),
                    ));
                }
                current.ground = labels(line, rest)?.into_iter().map(str::to_string).collect();
                state = State::Body;
            }
            (State::Header, _) => return Err(syntax(line, head.column, "expected `ground`")),
            (State::Body, "circuit") => {
                if rest.is_empty() {
                    return Err(syntax(line, head.column + head.text.len(), "circuit needs at least one label"));
                }
                let ls = labels(line, rest)?;
                for (l, t) in ls.iter().zip(rest) {
                    if !current.ground.iter().any(|g| g == l) {
                        return Err(ParseError::UnknownLabel { line, column: t.column, label: l.to_string() });
                    }
                }
                current.circuit_lines.push(ls.into_iter().map(str::to_string).collect());
                current.circuit_line_numbers.push(line);
            }
            (State::Body, "end") => {
                if let Some(extra) = rest.first() {
                    return Err(syntax(line, extra.column, "unexpected token after `end`"));
                }
                docs.push(std::mem::replace(
                    &mut current,
                    MatroidDocument {
                        name: None,
                        ground: Vec::new(),
                        circuit_lines: Vec::new(),
                        circuit_line_numbers: Vec::new(),
                    },
                ));
                state = State::Outside;
            }
            (State::Body, _) => return Err(syntax(line, head.column, "expected `circuit` or `end`")),
        }
    }
    match state {
        State::Outside if !docs.is_empty() => Ok(docs),
        State::Outside => Err(syntax(last_line.max(1), 1, "no matroid document found")),
        _ => Err(syntax(last_line.max(1), 1, "missing `end`")),
    }
}

/// Parses exactly one document.
pub fn parse_document(input: &str) -> Result<MatroidDocument, ParseError> {
    let mut docs = parse_documents(input)?;
    if docs.len() > 1 {
        let line = docs[1].circuit_line_numbers.first().copied().unwrap_or(0);
        return Err(syntax(line, 1, "expected a single matroid document"));
    }
    Ok(docs.remove(0))
}

/// Parses and validates one matroid.
pub fn parse_matroid_text(input: &str) -> Result<Matroid, ParseError> {
    parse_document(input)?.to_matroid()
}

/// Parses one matroid and its optional name.
pub fn parse_named_matroid(input: &str) -> Result<(Option<String>, Matroid), ParseError> {
    let doc = parse_document(input)?;
    let m = doc.to_matroid()?;
    Ok((doc.name, m))
}

/// Canonical document for `m`, without a name.
pub fn serialize_matroid_text(m: &Matroid) -> String {
    MatroidDocument::from_matroid(m, None).serialize()
}

pub fn serialize_named(m: &Matroid, name: &str) -> String {
    MatroidDocument::from_matroid(m, Some(name)).serialize()
}
