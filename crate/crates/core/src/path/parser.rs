// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Recursive-descent parser for the ASCII path-condition syntax.
//!
//! ```text
//! path  := seq
//! seq   := unary ("." unary)*
//! unary := atom ("+")*
//! atom  := LABEL | "~" atom | "(" seq ")" | "@"
//! LABEL := [A-Za-z_][A-Za-z0-9_#-]*
//! ```

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Label, PathCondition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty path condition")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected}, found {found:?}")]
    Expected { expected: &'static str, found: String },
    #[error("unknown relationship label {0:?}")]
    UnknownLabel(String),
    #[error("zero-or-more `*` is not allowed in path conditions; write the rule twice, once with `+` and once with `@`")]
    StarRejected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Label(String),
    Dot,
    Tilde,
    Plus,
    LParen,
    RParen,
    Diamond,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Label(s) => s.clone(),
            Tok::Dot => ".".into(),
            Tok::Tilde => "~".into(),
            Tok::Plus => "+".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Diamond => "@".into(),
        }
    }
}

fn is_label_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '#' | '-')
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let single = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '.' => Some(Tok::Dot),
            '~' => Some(Tok::Tilde),
            '+' => Some(Tok::Plus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '@' => Some(Tok::Diamond),
            '*' => {
                return Err(ParseError { kind: ParseErrorKind::StarRejected, position: pos });
            }
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            toks.push((tok, pos));
            continue;
        }
        if !is_label_start(c) {
            return Err(ParseError { kind: ParseErrorKind::UnexpectedChar(c), position: pos });
        }
        let mut end = pos;
        while let Some(&(i, c)) = chars.peek() {
            if is_label_char(c) {
                end = i + c.len_utf8();
                chars.next();
            } else {
                break;
            }
        }
        toks.push((Tok::Label(text[pos..end].to_string()), pos));
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end: usize,
    known: Option<&'a BTreeSet<Label>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        self.idx += 1;
        t
    }

    fn seq(&mut self) -> Result<PathCondition, ParseError> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Tok::Dot) {
            self.bump();
            parts.push(self.unary()?);
        }
        // right-associated, matching the canonical form and the renderer
        Ok(PathCondition::sequence(parts))
    }

    fn unary(&mut self) -> Result<PathCondition, ParseError> {
        let mut pc = self.atom()?;
        while self.peek() == Some(&Tok::Plus) {
            self.bump();
            pc = PathCondition::plus(pc);
        }
        Ok(pc)
    }

    fn atom(&mut self) -> Result<PathCondition, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Label(name)) => {
                if let Some(known) = self.known {
                    if !known.iter().any(|l| l.as_str() == name) {
                        return Err(ParseError {
                            kind: ParseErrorKind::UnknownLabel(name),
                            position: pos,
                        });
                    }
                }
                Ok(PathCondition::label(name))
            }
            Some(Tok::Tilde) => Ok(PathCondition::reverse(self.atom()?)),
            Some(Tok::Diamond) => Ok(PathCondition::Diamond),
            Some(Tok::LParen) => {
                let inner = self.seq()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(other) => Err(ParseError {
                        kind: ParseErrorKind::Expected { expected: "`)`", found: other.describe() },
                        position: close,
                    }),
                    None => Err(ParseError { kind: ParseErrorKind::UnexpectedEnd, position: close }),
                }
            }
            Some(other) => Err(ParseError {
                kind: ParseErrorKind::Expected {
                    expected: "label, `~`, `(` or `@`",
                    found: other.describe(),
                },
                position: pos,
            }),
            None => Err(ParseError { kind: ParseErrorKind::UnexpectedEnd, position: pos }),
        }
    }
}

fn parse_with(text: &str, known: Option<&BTreeSet<Label>>) -> Result<PathCondition, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError { kind: ParseErrorKind::Empty, position: 0 });
    }
    let mut p = Parser { toks, idx: 0, end: text.len(), known };
    let pc = p.seq()?;
    if let Some(tok) = p.peek().cloned() {
        return Err(ParseError {
            kind: ParseErrorKind::Expected { expected: "`.`, `+` or end of input", found: tok.describe() },
            position: p.pos(),
        });
    }
    Ok(pc)
}

/// Parses `text`, rejecting labels outside `labels`.
pub fn parse(text: &str, labels: &BTreeSet<Label>) -> Result<PathCondition, ParseError> {
    parse_with(text, Some(labels))
}

/// Parses `text` accepting any well-formed label.
pub fn parse_any(text: &str) -> Result<PathCondition, ParseError> {
    parse_with(text, None)
}
