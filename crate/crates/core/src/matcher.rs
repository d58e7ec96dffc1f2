// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Path matching: does some path from `u` to `v` satisfy a condition?
//!
//! [`BfsMatcher`] runs a breadth-first search over `(node, residual)` pairs.
//! At each dequeued pair it compares the head of the residual with every
//! incident edge and enqueues the neighbour with the suffix. A pair is
//! enqueued at most once, so a node may be revisited only with a different
//! residual; this is what makes cyclic graphs and `+` terminate.
//!
//! A residual of the form `x* . y` is unfolded when dequeued into the two
//! pairs `(node, y)` and `(node, x+ . y)` before any edge is examined.
//! Doing this at dequeue time (rather than inside the edge loops) also
//! covers the zero-repetition branch at nodes with no incident edges.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Direction, NodeIx, SystemGraph};
use crate::path::{simplify, split_canonical, EdgeCondition, PathCondition};
use crate::policy::{PrincipalMatchingRule, Request, RuleCondition};
use crate::strategy::PrincipalMatchingStrategy;

/// Work counters for one match.
///
/// `edges_considered` counts one comparison per directed incident edge and
/// two per symmetric edge (the `r` and `~r` readings).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchMetrics {
    /// Distinct graph nodes dequeued.
    pub nodes_visited: usize,
    pub edges_considered: usize,
    pub queue_peak: usize,
    /// Distinct `(node, residual)` pairs dequeued.
    pub pairs_processed: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchOutcome {
    pub found: bool,
    pub metrics: MatchMetrics,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceAction {
    /// Leading `x*` split into its zero and one-or-more branches.
    Unfold,
    /// Head compared with incident edges; `matched` neighbours qualified.
    Step { head: String, matched: usize },
    /// The target was reached with nothing left to match.
    Found,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub node: String,
    pub residual: String,
    pub action: TraceAction,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.action {
            TraceAction::Unfold => write!(f, "{}\t{}\tunfold", self.node, self.residual),
            TraceAction::Step { head, matched } => {
                write!(f, "{}\t{}\tstep {} ({} matched)", self.node, self.residual, head, matched)
            }
            TraceAction::Found => write!(f, "{}\t{}\tfound", self.node, self.residual),
        }
    }
}

pub trait TraceSink {
    fn enabled(&self) -> bool {
        true
    }
    fn event(&mut self, event: TraceEvent);
}

/// Discards every event.
pub struct NoTrace;

impl TraceSink for NoTrace {
    fn enabled(&self) -> bool {
        false
    }
    fn event(&mut self, _event: TraceEvent) {}
}

impl TraceSink for Vec<TraceEvent> {
    fn event(&mut self, event: TraceEvent) {
        self.push(event);
    }
}

impl<F: FnMut(TraceEvent)> TraceSink for F {
    fn event(&mut self, event: TraceEvent) {
        self(event)
    }
}

/// Decides `G, u, v |= pc`.
pub trait PathMatcher: Send + Sync {
    fn name(&self) -> &str;

    fn check(
        &self,
        g: &SystemGraph,
        u: &str,
        v: &str,
        pc: &PathCondition,
        trace: &mut dyn TraceSink,
    ) -> Result<MatchOutcome>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct BfsMatcher;

impl PathMatcher for BfsMatcher {
    fn name(&self) -> &str {
        "bfs"
    }

    fn check(
        &self,
        g: &SystemGraph,
        u: &str,
        v: &str,
        pc: &PathCondition,
        trace: &mut dyn TraceSink,
    ) -> Result<MatchOutcome> {
        let start = g.node_index(u).ok_or_else(|| Error::UnknownEntity(u.to_string()))?;
        let target = g.node_index(v).ok_or_else(|| Error::UnknownEntity(v.to_string()))?;
        Ok(Search::new(g, target, trace).run(start, simplify(pc)))
    }
}

/// Runs the breadth-first matcher.
pub fn match_path(g: &SystemGraph, u: &str, v: &str, pc: &PathCondition) -> Result<MatchOutcome> {
    BfsMatcher.check(g, u, v, pc, &mut NoTrace)
}

type ResidualId = u32;

#[derive(Clone)]
enum Expansion {
    /// `x* . y` becomes `y` and `x+ . y`.
    Unfold { zero: ResidualId, more: ResidualId },
    Step { head: EdgeCondition, rest: ResidualId },
}

struct Search<'g, 't> {
    g: &'g SystemGraph,
    target: NodeIx,
    trace: &'t mut dyn TraceSink,
    residuals: Vec<PathCondition>,
    interned: HashMap<PathCondition, ResidualId>,
    expansions: Vec<Option<Expansion>>,
    seen: HashSet<(NodeIx, ResidualId)>,
    queue: VecDeque<(NodeIx, ResidualId)>,
    visited: HashSet<NodeIx>,
    metrics: MatchMetrics,
}

const DIAMOND: ResidualId = 0;

impl<'g, 't> Search<'g, 't> {
    fn new(g: &'g SystemGraph, target: NodeIx, trace: &'t mut dyn TraceSink) -> Self {
        let mut s = Search {
            g,
            target,
            trace,
            residuals: Vec::new(),
            interned: HashMap::new(),
            expansions: Vec::new(),
            seen: HashSet::new(),
            queue: VecDeque::new(),
            visited: HashSet::new(),
            metrics: MatchMetrics::default(),
        };
        let d = s.intern(PathCondition::Diamond);
        debug_assert_eq!(d, DIAMOND);
        s
    }

    fn intern(&mut self, pc: PathCondition) -> ResidualId {
        if let Some(&id) = self.interned.get(&pc) {
            return id;
        }
        let id = self.residuals.len() as ResidualId;
        self.residuals.push(pc.clone());
        self.interned.insert(pc, id);
        self.expansions.push(None);
        id
    }

    fn expansion(&mut self, id: ResidualId) -> &Expansion {
        if self.expansions[id as usize].is_none() {
            let pc = self.residuals[id as usize].clone();
            let exp = match pc {
                PathCondition::Star(x) => Expansion::Unfold {
                    zero: DIAMOND,
                    more: self.intern(PathCondition::Plus(x)),
                },
                PathCondition::Concat(a, y) if matches!(*a, PathCondition::Star(_)) => {
                    let PathCondition::Star(x) = *a else { unreachable!() };
                    let more = PathCondition::concat(PathCondition::Plus(x), (*y).clone());
                    Expansion::Unfold { zero: self.intern(*y), more: self.intern(more) }
                }
                other => {
                    let (head, rest) =
                        split_canonical(&other).expect("queued residuals are never empty");
                    Expansion::Step { head, rest: self.intern(rest) }
                }
            };
            self.expansions[id as usize] = Some(exp);
        }
        self.expansions[id as usize].as_ref().expect("just filled")
    }

    /// Returns true when the pair completes a match.
    fn discover(&mut self, node: NodeIx, residual: ResidualId) -> bool {
        if self.seen.contains(&(node, residual)) {
            return false;
        }
        if residual == DIAMOND {
            // nothing left to match: either we are at the target or this
            // branch is dead
            return node == self.target;
        }
        self.seen.insert((node, residual));
        self.queue.push_back((node, residual));
        self.metrics.queue_peak = self.metrics.queue_peak.max(self.queue.len());
        false
    }

    fn emit(&mut self, node: NodeIx, residual: ResidualId, action: TraceAction) {
        if self.trace.enabled() {
            let event = TraceEvent {
                node: self.g.node_id(node).to_string(),
                residual: self.residuals[residual as usize].to_string(),
                action,
            };
            self.trace.event(event);
        }
    }

    fn finish(&self, found: bool) -> MatchOutcome {
        MatchOutcome { found, metrics: self.metrics }
    }

    fn run(mut self, start: NodeIx, pc: PathCondition) -> MatchOutcome {
        if pc.is_diamond() {
            return self.finish(start == self.target);
        }
        let initial = self.intern(pc);
        self.discover(start, initial);

        let mut targets: Vec<NodeIx> = Vec::new();
        while let Some((node, residual)) = self.queue.pop_front() {
            self.metrics.pairs_processed += 1;
            if self.visited.insert(node) {
                self.metrics.nodes_visited += 1;
            }
            match self.expansion(residual).clone() {
                Expansion::Unfold { zero, more } => {
                    self.emit(node, residual, TraceAction::Unfold);
                    if self.discover(node, zero) || self.discover(node, more) {
                        self.emit(node, zero, TraceAction::Found);
                        return self.finish(true);
                    }
                }
                Expansion::Step { head, rest } => {
                    targets.clear();
                    for inc in self.g.incident(node) {
                        let hit = match inc.direction {
                            Direction::Out => {
                                self.metrics.edges_considered += 1;
                                !head.reversed && head.label == inc.label
                            }
                            Direction::In => {
                                self.metrics.edges_considered += 1;
                                head.reversed && head.label == inc.label
                            }
                            Direction::Sym => {
                                self.metrics.edges_considered += 2;
                                head.label == inc.label
                            }
                        };
                        if hit {
                            targets.push(inc.neighbor);
                        }
                    }
                    self.emit(
                        node,
                        residual,
                        TraceAction::Step { head: head.to_string(), matched: targets.len() },
                    );
                    for i in 0..targets.len() {
                        let next = targets[i];
                        if self.discover(next, rest) {
                            self.emit(next, rest, TraceAction::Found);
                            return self.finish(true);
                        }
                    }
                }
            }
        }
        self.finish(false)
    }
}

/// Outcome of evaluating one principal-matching rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleMatch {
    pub rule: usize,
    pub principal: String,
    pub found: bool,
    /// Absent for the TOP rule, which needs no search.
    pub metrics: Option<MatchMetrics>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalMatch {
    pub principals: Vec<String>,
    /// Rules actually evaluated, in evaluation order.
    pub evaluated: Vec<RuleMatch>,
}

/// Binds request `q` to principals under `pms`, deciding each rule's path
/// condition with `matcher`.
pub fn match_principals(
    g: &SystemGraph,
    q: &Request,
    rules: &[PrincipalMatchingRule],
    pms: &dyn PrincipalMatchingStrategy,
    matcher: &dyn PathMatcher,
    trace: &mut dyn TraceSink,
) -> Result<PrincipalMatch> {
    for id in [&q.subject, &q.object] {
        if !g.contains(id) {
            return Err(Error::UnknownEntity(id.clone()));
        }
    }
    let mut evaluated = Vec::new();
    let principals = pms.select(rules, &mut |i| {
        let rule = &rules[i];
        let (found, metrics) = match &rule.condition {
            RuleCondition::Top => (true, None),
            RuleCondition::Path(pc) => {
                let out = matcher.check(g, &q.subject, &q.object, pc, trace)?;
                (out.found, Some(out.metrics))
            }
        };
        evaluated.push(RuleMatch { rule: i, principal: rule.principal.clone(), found, metrics });
        Ok(found)
    })?;
    Ok(PrincipalMatch { principals, evaluated })
}
