// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use super::PathCondition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("zero-or-more residual `{0}` has no surface syntax")]
    StarPresent(String),
}

/// Prints `pc` in the surface syntax accepted by [`parse`](super::parse).
///
/// The output re-parses to the same tree, so `render` is a fixpoint after
/// one round trip.
pub fn render(pc: &PathCondition) -> Result<String, RenderError> {
    if pc.contains_star() {
        return Err(RenderError::StarPresent(render_lenient(pc)));
    }
    Ok(render_lenient(pc))
}

pub(crate) fn render_lenient(pc: &PathCondition) -> String {
    let mut out = String::new();
    write_seq(pc, &mut out);
    out
}

fn write_seq(pc: &PathCondition, out: &mut String) {
    match pc {
        PathCondition::Concat(a, b) => {
            if matches!(**a, PathCondition::Concat(..)) {
                out.push('(');
                write_seq(a, out);
                out.push(')');
            } else {
                write_unary(a, out);
            }
            out.push_str(" . ");
            write_seq(b, out);
        }
        other => write_unary(other, out),
    }
}

fn write_unary(pc: &PathCondition, out: &mut String) {
    match pc {
        PathCondition::Plus(inner) => {
            write_postfix_operand(inner, out);
            out.push('+');
        }
        PathCondition::Star(inner) => {
            write_postfix_operand(inner, out);
            out.push('*');
        }
        other => write_atom(other, out),
    }
}

// `~r+` would parse as `(~r)+`, so anything but a bare label, `@`,
// a nested postfix or a parenthesised group gets parentheses here.
fn write_postfix_operand(pc: &PathCondition, out: &mut String) {
    match pc {
        PathCondition::Edge(e) if !e.reversed => out.push_str(e.label.as_str()),
        PathCondition::Diamond => out.push('@'),
        PathCondition::Plus(_) | PathCondition::Star(_) => write_unary(pc, out),
        other => {
            out.push('(');
            write_seq(other, out);
            out.push(')');
        }
    }
}

fn write_atom(pc: &PathCondition, out: &mut String) {
    match pc {
        PathCondition::Diamond => out.push('@'),
        PathCondition::Edge(e) => {
            if e.reversed {
                out.push('~');
            }
            out.push_str(e.label.as_str());
        }
        PathCondition::Reverse(inner) => {
            out.push('~');
            match **inner {
                PathCondition::Diamond | PathCondition::Reverse(_) => write_atom(inner, out),
                PathCondition::Edge(ref e) if !e.reversed => write_atom(inner, out),
                _ => {
                    out.push('(');
                    write_seq(inner, out);
                    out.push(')');
                }
            }
        }
        other => {
            out.push('(');
            write_seq(other, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{parse_any, simplify, EdgeCondition, PathCondition as P};

    #[test]
    fn basic_forms() {
        assert_eq!(render(&P::Diamond).unwrap(), "@");
        assert_eq!(render(&P::edge(EdgeCondition::backward("M"))).unwrap(), "~M");
        assert_eq!(render(&P::plus(P::reverse(P::label("M")))).unwrap(), "(~M)+");
        assert_eq!(render(&P::plus(P::edge(EdgeCondition::backward("M")))).unwrap(), "(~M)+");
        assert_eq!(
            render(&P::concat(P::concat(P::label("a"), P::label("b")), P::label("c"))).unwrap(),
            "(a . b) . c"
        );
        assert_eq!(render(&P::reverse(P::plus(P::label("a")))).unwrap(), "~(a+)");
    }

    #[test]
    fn star_is_rejected() {
        let pc = P::concat(P::star(P::label("r")), P::label("s"));
        assert!(matches!(render(&pc), Err(RenderError::StarPresent(_))));
        assert_eq!(pc.to_string(), "r* . s");
    }

    #[test]
    fn simplified_example_renders() {
        let pc = parse_any("~( ~(r1 . r2) . (r1 . r3)+ )").unwrap();
        assert_eq!(render(&simplify(&pc)).unwrap(), "(~r3 . ~r1)+ . r1 . r2");
    }

    #[test]
    fn render_reparses_to_same_tree() {
        for text in [
            "a",
            "~a",
            "~~a",
            "~@",
            "@+",
            "a . b . c",
            "(a . b) . c",
            "~(a . b)",
            "(a . ~b)+ . c",
            "~(a+)",
            "~a+",
            "a++ . (b . c)+",
            "((a))",
        ] {
            let pc = parse_any(text).unwrap();
            let printed = render(&pc).unwrap();
            assert_eq!(parse_any(&printed).unwrap(), pc, "{text} -> {printed}");
            assert_eq!(render(&parse_any(&printed).unwrap()).unwrap(), printed);
        }
    }
}
