// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use super::{EdgeCondition, PathCondition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeadError {
    #[error("the empty condition `@` has no head")]
    Diamond,
    #[error("a leading zero-or-more residual must be unfolded before taking its head")]
    LeadingStar,
}

/// Rewrites `pc` into canonical simple form.
///
/// Reversal is pushed down onto single edges, `@` is dropped from
/// concatenations and from under `+`/`*`, and concatenation is
/// right-associated. The result is equivalent to `pc` on every graph.
pub fn simplify(pc: &PathCondition) -> PathCondition {
    normalize(pc, false)
}

fn normalize(pc: &PathCondition, rev: bool) -> PathCondition {
    match pc {
        PathCondition::Diamond => PathCondition::Diamond,
        PathCondition::Edge(e) => PathCondition::Edge(EdgeCondition {
            label: e.label.clone(),
            reversed: e.reversed != rev,
        }),
        PathCondition::Reverse(inner) => normalize(inner, !rev),
        PathCondition::Concat(a, b) => {
            let (first, second) = if rev { (b, a) } else { (a, b) };
            let mut factors = Vec::new();
            push_factors(normalize(first, rev), &mut factors);
            push_factors(normalize(second, rev), &mut factors);
            PathCondition::sequence(factors)
        }
        PathCondition::Plus(inner) => match normalize(inner, rev) {
            PathCondition::Diamond => PathCondition::Diamond,
            n => PathCondition::plus(n),
        },
        PathCondition::Star(inner) => match normalize(inner, rev) {
            PathCondition::Diamond => PathCondition::Diamond,
            n => PathCondition::star(n),
        },
    }
}

// Flattens an already-normalized condition into its concatenation factors.
fn push_factors(pc: PathCondition, out: &mut Vec<PathCondition>) {
    match pc {
        PathCondition::Diamond => {}
        PathCondition::Concat(a, b) => {
            push_factors(*a, out);
            push_factors(*b, out);
        }
        other => out.push(other),
    }
}

/// Concatenates two canonical conditions, keeping the result canonical.
fn seq(a: PathCondition, b: PathCondition) -> PathCondition {
    let mut factors = Vec::new();
    push_factors(a, &mut factors);
    push_factors(b, &mut factors);
    PathCondition::sequence(factors)
}

/// The first edge condition a path satisfying `pc` must traverse.
pub fn head(pc: &PathCondition) -> Result<EdgeCondition, HeadError> {
    head_of(&simplify(pc))
}

fn head_of(pc: &PathCondition) -> Result<EdgeCondition, HeadError> {
    match pc {
        PathCondition::Diamond => Err(HeadError::Diamond),
        PathCondition::Edge(e) => Ok(e.clone()),
        PathCondition::Concat(a, _) => head_of(a),
        PathCondition::Plus(inner) => head_of(inner),
        PathCondition::Star(_) => Err(HeadError::LeadingStar),
        // unreachable on simplified input
        PathCondition::Reverse(_) => head_of(&simplify(pc)),
    }
}

/// What remains of `pc` after its head has been consumed, in canonical form.
///
/// The suffix of `x+` is `suffix(x) . x*`, so the result may contain the
/// internal zero-or-more constructor.
pub fn suffix(pc: &PathCondition) -> Result<PathCondition, HeadError> {
    suffix_of(&simplify(pc))
}

fn suffix_of(pc: &PathCondition) -> Result<PathCondition, HeadError> {
    match pc {
        PathCondition::Diamond => Err(HeadError::Diamond),
        PathCondition::Edge(_) => Ok(PathCondition::Diamond),
        PathCondition::Concat(a, b) => Ok(seq(suffix_of(a)?, (**b).clone())),
        PathCondition::Plus(inner) => {
            Ok(seq(suffix_of(inner)?, PathCondition::star((**inner).clone())))
        }
        PathCondition::Star(_) => Err(HeadError::LeadingStar),
        PathCondition::Reverse(_) => suffix_of(&simplify(pc)),
    }
}

/// Head and suffix of a condition already in canonical form.
pub(crate) fn split_canonical(pc: &PathCondition) -> Result<(EdgeCondition, PathCondition), HeadError> {
    Ok((head_of(pc)?, suffix_of(pc)?))
}

/// Number of edge conditions in the canonical form of `pc`; `@` has length 0.
pub fn length(pc: &PathCondition) -> usize {
    fn len(pc: &PathCondition) -> usize {
        match pc {
            PathCondition::Diamond => 0,
            PathCondition::Edge(_) => 1,
            PathCondition::Concat(a, b) => len(a) + len(b),
            PathCondition::Plus(a) | PathCondition::Star(a) => len(a),
            PathCondition::Reverse(a) => len(a),
        }
    }
    len(&simplify(pc))
}

/// Number of `+` operators in the canonical form of `pc`.
pub fn plus_count(pc: &PathCondition) -> usize {
    fn count(pc: &PathCondition) -> usize {
        match pc {
            PathCondition::Diamond | PathCondition::Edge(_) => 0,
            PathCondition::Concat(a, b) => count(a) + count(b),
            PathCondition::Plus(a) => 1 + count(a),
            PathCondition::Star(a) | PathCondition::Reverse(a) => count(a),
        }
    }
    count(&simplify(pc))
}

/// Structural equality after canonicalization.
pub fn canonical_equal(a: &PathCondition, b: &PathCondition) -> bool {
    simplify(a) == simplify(b)
}
