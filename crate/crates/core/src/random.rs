// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded generators for graphs, conditions and authorization systems.
//!
//! Everything takes a caller-supplied RNG; use [`rng`] for a reproducible
//! stream from a `u64` seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, SystemGraph, SystemModel};
use crate::path::{EdgeCondition, Label, PathCondition};
use crate::pdp::AuthorizationSystem;
use crate::policy::{AuthorizationRule, Decision, Defaults, ObjectSpec, PrincipalMatchingRule, Request};
use crate::strategy::Registry;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct GraphShape {
    pub max_nodes: usize,
    pub max_labels: usize,
    /// Probability of each possible `(from, to, label)` edge.
    pub density: f64,
}

impl Default for GraphShape {
    fn default() -> Self {
        GraphShape { max_nodes: 8, max_labels: 3, density: 0.15 }
    }
}

pub const LABEL_POOL: [&str; 4] = ["a", "b", "c", "d"];

/// Single-type graph on `n0..`; the last label is symmetric.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, shape: GraphShape) -> SystemGraph {
    let nodes = rng.gen_range(1..=shape.max_nodes);
    let nlabels = rng.gen_range(1..=shape.max_labels.min(LABEL_POOL.len()));
    let labels = &LABEL_POOL[..nlabels];
    let mut model = SystemModel::new().with_type("N");
    for (i, l) in labels.iter().enumerate() {
        model = if i + 1 == nlabels { model.with_symmetric(*l) } else { model.with_label(*l) };
        model = model.permit("N", "N", *l);
    }
    let ids: Vec<String> = (0..nodes).map(|i| format!("n{i}")).collect();
    let mut edges = Vec::new();
    for from in &ids {
        for to in &ids {
            for l in labels {
                if rng.gen_bool(shape.density) {
                    edges.push(Edge::new(from.as_str(), to.as_str(), *l));
                }
            }
        }
    }
    SystemGraph::from_parts(model, ids.into_iter().map(|id| (id, "N".to_string())), edges)
}

/// Graph of `nodes` nodes and exactly `edges` distinct directed edges,
/// without a symmetric label.
pub fn sparse_graph<R: Rng + ?Sized>(rng: &mut R, nodes: usize, edges: usize, labels: &[&str]) -> SystemGraph {
    let mut model = SystemModel::new().with_type("N");
    for l in labels {
        model = model.with_label(*l).permit("N", "N", *l);
    }
    let mut set = std::collections::BTreeSet::new();
    while set.len() < edges {
        let from = rng.gen_range(0..nodes);
        let to = rng.gen_range(0..nodes);
        let l = labels.choose(rng).expect("at least one label");
        set.insert(Edge::new(format!("n{from}"), format!("n{to}"), *l));
    }
    SystemGraph::from_parts(model, (0..nodes).map(|i| (format!("n{i}"), "N".to_string())), set)
}

fn random_edge<R: Rng + ?Sized>(rng: &mut R, labels: &[Label]) -> EdgeCondition {
    let label = labels.choose(rng).expect("at least one label").clone();
    EdgeCondition { label, reversed: rng.gen_bool(0.4) }
}

/// Simple condition with `1 <= length <= max_len`.
pub fn random_simple_condition<R: Rng + ?Sized>(rng: &mut R, labels: &[Label], max_len: usize) -> PathCondition {
    let len = rng.gen_range(1..=max_len.max(1));
    simple_of_length(rng, labels, len, 0)
}

fn simple_of_length<R: Rng + ?Sized>(rng: &mut R, labels: &[Label], len: usize, depth: u32) -> PathCondition {
    let mut parts = Vec::new();
    let mut left = len;
    while left > 0 {
        let take = rng.gen_range(1..=left);
        if depth < 2 && rng.gen_bool(0.3) {
            parts.push(PathCondition::plus(simple_of_length(rng, labels, take, depth + 1)));
        } else {
            parts.extend((0..take).map(|_| PathCondition::edge(random_edge(rng, labels))));
        }
        left -= take;
    }
    PathCondition::sequence(parts)
}

/// Arbitrary star-free condition over every public constructor.
pub fn random_condition<R: Rng + ?Sized>(rng: &mut R, labels: &[Label], depth: u32) -> PathCondition {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return if rng.gen_bool(0.12) {
            PathCondition::Diamond
        } else {
            PathCondition::edge(random_edge(rng, labels))
        };
    }
    match rng.gen_range(0..4) {
        0 | 1 => PathCondition::concat(
            random_condition(rng, labels, depth - 1),
            random_condition(rng, labels, depth - 1),
        ),
        2 => PathCondition::plus(random_condition(rng, labels, depth - 1)),
        _ => PathCondition::reverse(random_condition(rng, labels, depth - 1)),
    }
}

pub const PRINCIPAL_POOL: [&str; 4] = ["p0", "p1", "p2", "p3"];
pub const ACTION_POOL: [&str; 2] = ["read", "write"];

fn decision<R: Rng + ?Sized>(rng: &mut R) -> Decision {
    Decision::from_bool(rng.gen_bool(0.5))
}

/// Valid authorization system over the labels and entities of `g`.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, g: &SystemGraph) -> AuthorizationSystem {
    let labels: Vec<Label> = g.model().labels.iter().cloned().collect();
    let ids: Vec<&str> = g.entities().map(|(id, _)| id).collect();
    let registry = Registry::builtin();
    let mut rules: Vec<PrincipalMatchingRule> = (0..rng.gen_range(0..=4))
        .map(|_| {
            let pc = random_condition(rng, &labels, 3);
            PrincipalMatchingRule::path(pc, *PRINCIPAL_POOL.choose(rng).unwrap())
        })
        .collect();
    if rng.gen_bool(0.3) {
        rules.push(PrincipalMatchingRule::top("world"));
    }
    let auth = (0..rng.gen_range(0..=6))
        .map(|_| {
            let principal = if rng.gen_bool(0.15) { "world" } else { *PRINCIPAL_POOL.choose(rng).unwrap() };
            let object = if rng.gen_bool(0.5) {
                ObjectSpec::Any
            } else {
                ObjectSpec::Entity(ids.choose(rng).unwrap().to_string())
            };
            AuthorizationRule::new(principal, object, *ACTION_POOL.choose(rng).unwrap(), rng.gen_bool(0.5))
        })
        .collect();
    let mut defaults = Defaults::system(decision(rng));
    for id in &ids {
        if rng.gen_bool(0.15) {
            defaults.subjects.insert(id.to_string(), decision(rng));
        }
        if rng.gen_bool(0.15) {
            defaults.objects.insert(id.to_string(), decision(rng));
        }
    }
    let pms_names: Vec<&str> = registry.pms_names().collect();
    let crs_names: Vec<&str> = registry.crs_names().collect();
    AuthorizationSystem {
        pm_policy: rules,
        pms: registry.pms(pms_names.choose(rng).unwrap()).unwrap(),
        auth_policy: auth,
        crs: registry.crs(crs_names.choose(rng).unwrap()).unwrap(),
        defaults,
    }
}

pub fn random_request<R: Rng + ?Sized>(rng: &mut R, g: &SystemGraph) -> Request {
    let ids: Vec<&str> = g.entities().map(|(id, _)| id).collect();
    Request::new(*ids.choose(rng).unwrap(), *ids.choose(rng).unwrap(), *ACTION_POOL.choose(rng).unwrap())
}

/// Labels of `g`'s model, sorted.
pub fn labels_of(g: &SystemGraph) -> Vec<Label> {
    g.model().labels.iter().cloned().collect()
}
