// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Path conditions: a small regular language over relationship labels.
//!
//! A path condition describes the shape of a chain of edges between a
//! subject and an object. The constructors are:
//!
//! - `@` (the empty condition), satisfied only when both ends coincide;
//! - a label `r`, satisfied by a single edge `(u, v, r)`;
//! - concatenation `a . b`;
//! - one-or-more `a+`;
//! - reversal `~a`, which swaps the two ends.
//!
//! Zero-or-more (`Star`) exists only as an internal residual produced while
//! matching, never in parsed or stored conditions.
//!
//! Most code works on the *canonical* form produced by [`simplify`]:
//! reversal only on single edges, no `@` inside larger conditions, and
//! right-associated concatenation. Two canonical conditions are equivalent
//! when they are structurally equal, which is what the matcher's seen-set
//! relies on.

mod ops;
mod parser;
mod render;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub(crate) use ops::split_canonical;
pub use ops::{canonical_equal, head, length, plus_count, simplify, suffix, HeadError};
pub use parser::{parse, parse_any, ParseError, ParseErrorKind};
pub use render::{render, RenderError};

/// A relationship label, e.g. `Member-of`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: impl AsRef<str>) -> Self {
        Label(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(Arc::from(s))
    }
}

impl AsRef<str> for Label {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A single-edge condition: `r` or its reversal `~r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeCondition {
    pub label: Label,
    pub reversed: bool,
}

impl EdgeCondition {
    pub fn forward(label: impl Into<Label>) -> Self {
        EdgeCondition { label: label.into(), reversed: false }
    }

    pub fn backward(label: impl Into<Label>) -> Self {
        EdgeCondition { label: label.into(), reversed: true }
    }

    pub fn flipped(&self) -> Self {
        EdgeCondition { label: self.label.clone(), reversed: !self.reversed }
    }
}

impl fmt::Display for EdgeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "~{}", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathCondition {
    Diamond,
    Edge(EdgeCondition),
    Concat(Box<PathCondition>, Box<PathCondition>),
    Plus(Box<PathCondition>),
    /// Zero or more occurrences. Internal only.
    Star(Box<PathCondition>),
    Reverse(Box<PathCondition>),
}

impl PathCondition {
    pub fn label(name: impl Into<Label>) -> Self {
        PathCondition::Edge(EdgeCondition::forward(name))
    }

    pub fn edge(cond: EdgeCondition) -> Self {
        PathCondition::Edge(cond)
    }

    pub fn concat(left: PathCondition, right: PathCondition) -> Self {
        PathCondition::Concat(Box::new(left), Box::new(right))
    }

    pub fn plus(inner: PathCondition) -> Self {
        PathCondition::Plus(Box::new(inner))
    }

    pub fn star(inner: PathCondition) -> Self {
        PathCondition::Star(Box::new(inner))
    }

    pub fn reverse(inner: PathCondition) -> Self {
        PathCondition::Reverse(Box::new(inner))
    }

    /// Right-associated concatenation of `parts`; `@` when empty.
    pub fn sequence(parts: impl IntoIterator<Item = PathCondition>) -> Self {
        let parts: Vec<_> = parts.into_iter().collect();
        let mut iter = parts.into_iter().rev();
        match iter.next() {
            None => PathCondition::Diamond,
            Some(last) => iter.fold(last, |acc, p| PathCondition::concat(p, acc)),
        }
    }

    pub fn is_diamond(&self) -> bool {
        matches!(self, PathCondition::Diamond)
    }

    pub fn contains_star(&self) -> bool {
        match self {
            PathCondition::Diamond | PathCondition::Edge(_) => false,
            PathCondition::Star(_) => true,
            PathCondition::Concat(a, b) => a.contains_star() || b.contains_star(),
            PathCondition::Plus(a) | PathCondition::Reverse(a) => a.contains_star(),
        }
    }

    /// Number of constructor nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            PathCondition::Diamond | PathCondition::Edge(_) => 1,
            PathCondition::Concat(a, b) => 1 + a.size() + b.size(),
            PathCondition::Plus(a) | PathCondition::Star(a) | PathCondition::Reverse(a) => {
                1 + a.size()
            }
        }
    }

    /// Every label mentioned anywhere in the condition.
    pub fn labels(&self) -> Vec<&Label> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels<'a>(&'a self, out: &mut Vec<&'a Label>) {
        match self {
            PathCondition::Diamond => {}
            PathCondition::Edge(e) => out.push(&e.label),
            PathCondition::Concat(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
            PathCondition::Plus(a) | PathCondition::Star(a) | PathCondition::Reverse(a) => {
                a.collect_labels(out)
            }
        }
    }

    /// True when the condition is in canonical simple form.
    pub fn is_simple(&self) -> bool {
        fn non_diamond(pc: &PathCondition) -> bool {
            match pc {
                PathCondition::Diamond | PathCondition::Reverse(_) => false,
                PathCondition::Edge(_) => true,
                PathCondition::Concat(a, b) => {
                    !matches!(**a, PathCondition::Concat(..)) && non_diamond(a) && non_diamond(b)
                }
                PathCondition::Plus(a) | PathCondition::Star(a) => non_diamond(a),
            }
        }
        self.is_diamond() || non_diamond(self)
    }
}

/// Lenient display that also prints internal `Star` residuals as `(x)*`.
/// Use [`render`] for the strict, re-parseable form.
impl fmt::Display for PathCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_lenient(self))
    }
}
