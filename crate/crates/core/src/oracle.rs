// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference decision procedure for path conditions.
//!
//! A condition is compiled into a Thompson-style NFA over edge conditions,
//! and satisfaction is reachability of `(v, accept)` from `(u, start)` in
//! the product of the graph and the automaton. Nothing here shares code
//! with the breadth-first matcher: reversal is handled during compilation
//! instead of by rewriting, and edges are probed with
//! [`SystemGraph::has_edge_ix`] against every candidate node.
//!
//! Intended for differential testing on small graphs, not for production.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{NodeIx, SystemGraph};
use crate::matcher::{MatchMetrics, MatchOutcome, PathMatcher, TraceSink};
use crate::path::{EdgeCondition, PathCondition};

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: StateId,
    /// `None` is an epsilon move.
    pub on: Option<EdgeCondition>,
    pub to: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathNfa {
    pub states: usize,
    pub start: StateId,
    pub accept: StateId,
    pub transitions: Vec<Transition>,
}

impl PathNfa {
    fn state(&mut self) -> StateId {
        self.states += 1;
        self.states - 1
    }

    fn link(&mut self, from: StateId, on: Option<EdgeCondition>, to: StateId) {
        self.transitions.push(Transition { from, on, to });
    }

    fn epsilon_closure(&self, seeds: impl IntoIterator<Item = StateId>) -> HashSet<StateId> {
        let mut seen: HashSet<StateId> = HashSet::new();
        let mut stack: Vec<StateId> = seeds.into_iter().collect();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                for t in &self.transitions {
                    if t.from == s && t.on.is_none() {
                        stack.push(t.to);
                    }
                }
            }
        }
        seen
    }

    /// Whether the automaton accepts `word`. Useful for testing the
    /// compilation on its own.
    pub fn accepts(&self, word: &[EdgeCondition]) -> bool {
        let mut current = self.epsilon_closure([self.start]);
        for sym in word {
            let next: Vec<StateId> = self
                .transitions
                .iter()
                .filter(|t| current.contains(&t.from) && t.on.as_ref() == Some(sym))
                .map(|t| t.to)
                .collect();
            current = self.epsilon_closure(next);
        }
        current.contains(&self.accept)
    }
}

/// Compiles `pc` into an NFA accepting exactly its edge-condition words.
pub fn compile_nfa(pc: &PathCondition) -> PathNfa {
    let mut nfa = PathNfa { states: 0, start: 0, accept: 0, transitions: Vec::new() };
    let (start, accept) = build(&mut nfa, pc, false);
    nfa.start = start;
    nfa.accept = accept;
    nfa
}

fn build(nfa: &mut PathNfa, pc: &PathCondition, flip: bool) -> (StateId, StateId) {
    match pc {
        PathCondition::Diamond => {
            let s = nfa.state();
            let a = nfa.state();
            nfa.link(s, None, a);
            (s, a)
        }
        PathCondition::Edge(e) => {
            let s = nfa.state();
            let a = nfa.state();
            let sym = EdgeCondition { label: e.label.clone(), reversed: e.reversed ^ flip };
            nfa.link(s, Some(sym), a);
            (s, a)
        }
        PathCondition::Reverse(inner) => build(nfa, inner, !flip),
        PathCondition::Concat(a, b) => {
            // reversing a concatenation swaps the order of its parts
            let (first, second) = if flip { (b, a) } else { (a, b) };
            let (s1, a1) = build(nfa, first, flip);
            let (s2, a2) = build(nfa, second, flip);
            nfa.link(a1, None, s2);
            (s1, a2)
        }
        PathCondition::Plus(inner) | PathCondition::Star(inner) => {
            let s = nfa.state();
            let a = nfa.state();
            let (si, ai) = build(nfa, inner, flip);
            nfa.link(s, None, si);
            nfa.link(ai, None, a);
            nfa.link(ai, None, si);
            if matches!(pc, PathCondition::Star(_)) {
                nfa.link(s, None, a);
            }
            (s, a)
        }
    }
}

/// Decides `G, u, v |= pc` by product-automaton reachability.
pub fn oracle_satisfies(g: &SystemGraph, u: &str, v: &str, pc: &PathCondition) -> Result<bool> {
    Ok(product_search(&compile_nfa(pc), g, u, Some(v), &mut Vec::new())?.found)
}

/// Every `v` with `G, u, v |= pc`, sorted.
pub fn oracle_targets(g: &SystemGraph, u: &str, pc: &PathCondition) -> Result<Vec<String>> {
    compile_nfa(pc).targets(g, u)
}

impl PathNfa {
    /// Every `v` reachable from `u` along an accepted word, sorted.
    pub fn targets(&self, g: &SystemGraph, u: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        product_search(self, g, u, None, &mut out)?;
        Ok(out)
    }
}

fn product_search(
    nfa: &PathNfa,
    g: &SystemGraph,
    u: &str,
    v: Option<&str>,
    targets: &mut Vec<String>,
) -> Result<MatchOutcome> {
    for id in std::iter::once(u).chain(v) {
        if !g.contains(id) {
            return Err(Error::UnknownEntity(id.to_string()));
        }
    }
    let nodes: Vec<&str> = g.entities().map(|(id, _)| id).collect();
    let handles: Vec<NodeIx> = nodes.iter().map(|n| g.node_index(n).expect("listed entity")).collect();
    let ix = |id: &str| nodes.iter().position(|n| *n == id).expect("known node");
    let src = ix(u);
    let dst = v.map(ix);
    let mut accepted = vec![false; nodes.len()];
    let mut outgoing: Vec<Vec<&Transition>> = vec![Vec::new(); nfa.states];
    for t in &nfa.transitions {
        outgoing[t.from].push(t);
    }
    let mut metrics = MatchMetrics::default();
    let mut seen: HashSet<(usize, StateId)> = HashSet::new();
    let mut queue: VecDeque<(usize, StateId)> = VecDeque::new();
    let mut visited_nodes: HashSet<usize> = HashSet::new();

    seen.insert((src, nfa.start));
    queue.push_back((src, nfa.start));
    while let Some((n, q)) = queue.pop_front() {
        metrics.pairs_processed += 1;
        if visited_nodes.insert(n) {
            metrics.nodes_visited += 1;
        }
        if q == nfa.accept {
            if dst == Some(n) {
                return Ok(MatchOutcome { found: true, metrics });
            }
            accepted[n] = true;
        }
        for t in &outgoing[q] {
            let targets: Vec<usize> = match &t.on {
                None => vec![n],
                Some(cond) => (0..nodes.len())
                    .filter(|&m| {
                        metrics.edges_considered += 1;
                        if cond.reversed {
                            g.has_edge_ix(handles[m], handles[n], &cond.label)
                        } else {
                            g.has_edge_ix(handles[n], handles[m], &cond.label)
                        }
                    })
                    .collect(),
            };
            for m in targets {
                if seen.insert((m, t.to)) {
                    queue.push_back((m, t.to));
                    metrics.queue_peak = metrics.queue_peak.max(queue.len());
                }
            }
        }
    }
    targets.extend(nodes.iter().zip(accepted).filter(|(_, a)| *a).map(|(n, _)| n.to_string()));
    Ok(MatchOutcome { found: false, metrics })
}

/// [`PathMatcher`] adapter over [`oracle_satisfies`]. Its metrics count
/// product states and `has_edge` probes, so they are not comparable with
/// the breadth-first matcher's.
#[derive(Debug, Default, Clone, Copy)]
pub struct NfaOracle;

impl PathMatcher for NfaOracle {
    fn name(&self) -> &str {
        "nfa-oracle"
    }

    fn check(
        &self,
        g: &SystemGraph,
        u: &str,
        v: &str,
        pc: &PathCondition,
        _trace: &mut dyn TraceSink,
    ) -> Result<MatchOutcome> {
        product_search(&compile_nfa(pc), g, u, Some(v), &mut Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, SystemModel};
    use crate::path::parse_any;

    fn r() -> EdgeCondition {
        EdgeCondition::forward("r")
    }

    #[test]
    fn single_label() {
        let nfa = compile_nfa(&PathCondition::label("r"));
        assert_eq!(nfa.states, 2);
        assert_eq!(nfa.transitions, vec![Transition { from: 0, on: Some(r()), to: 1 }]);
    }

    #[test]
    fn diamond_is_single_epsilon() {
        let nfa = compile_nfa(&PathCondition::Diamond);
        assert_eq!(nfa.states, 2);
        assert_eq!(nfa.transitions, vec![Transition { from: nfa.start, on: None, to: nfa.accept }]);
        assert!(nfa.accepts(&[]));
    }

    #[test]
    fn plus_language() {
        let nfa = compile_nfa(&parse_any("r+").unwrap());
        assert!(!nfa.accepts(&[]));
        assert!(nfa.accepts(&[r()]));
        assert!(nfa.accepts(&[r(), r()]));
        assert!(nfa.accepts(&[r(), r(), r()]));
        assert!(!nfa.accepts(&[r(), EdgeCondition::backward("r")]));
    }

    #[test]
    fn reversal_language() {
        let nfa = compile_nfa(&parse_any("~(a . ~b)").unwrap());
        assert!(nfa.accepts(&[EdgeCondition::forward("b"), EdgeCondition::backward("a")]));
        assert!(!nfa.accepts(&[EdgeCondition::backward("a"), EdgeCondition::forward("b")]));
    }

    #[test]
    fn state_bound() {
        for t in ["r", "@", "a . b . c", "(a . ~b)+ . ~(c+)", "~(~(a . b) . (a . c)+)"] {
            let pc = parse_any(t).unwrap();
            assert!(compile_nfa(&pc).states <= 2 * pc.size(), "{t}");
        }
    }

    #[test]
    fn fragment_example() {
        let model = SystemModel::new()
            .with_type("T")
            .with_label("P")
            .with_label("R")
            .permit("T", "T", "P")
            .permit("T", "T", "R");
        let g = SystemGraph::from_parts(
            model,
            ["U1", "P1", "F1"].map(|n| (n.to_string(), "T".to_string())),
            [Edge::new("U1", "P1", "P"), Edge::new("F1", "P1", "R")],
        );
        assert!(oracle_satisfies(&g, "U1", "F1", &parse_any("P . ~R").unwrap()).unwrap());
        assert!(!oracle_satisfies(&g, "U1", "F1", &parse_any("P . R").unwrap()).unwrap());
        assert!(oracle_satisfies(&g, "F1", "F1", &PathCondition::Diamond).unwrap());
        assert_eq!(oracle_targets(&g, "U1", &parse_any("P . ~R").unwrap()).unwrap(), vec!["F1"]);
        assert_eq!(oracle_targets(&g, "U1", &parse_any("P . (~R . R)+").unwrap()).unwrap(), vec!["P1"]);
        assert!(matches!(
            oracle_satisfies(&g, "U1", "nope", &PathCondition::Diamond),
            Err(Error::UnknownEntity(_))
        ));
    }
}
