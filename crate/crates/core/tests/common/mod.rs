// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use pathauth_core::graph::SystemGraph;
use pathauth_core::oracle::oracle_targets;
use pathauth_core::path::{EdgeCondition, Label, PathCondition};
use pathauth_core::random::{self, GraphShape};
use proptest::prelude::*;

pub const LABELS: [&str; 3] = ["a", "b", "c"];

pub fn labels() -> Vec<Label> {
    LABELS.iter().map(|l| Label::new(l)).collect()
}

pub fn graph(seed: u64) -> SystemGraph {
    random::random_graph(&mut random::rng(seed), GraphShape::default())
}

pub fn arb_graph() -> impl Strategy<Value = SystemGraph> {
    any::<u64>().prop_map(graph)
}

pub fn arb_edge() -> impl Strategy<Value = EdgeCondition> {
    (prop::sample::select(LABELS.to_vec()), any::<bool>())
        .prop_map(|(l, reversed)| EdgeCondition { label: Label::new(l), reversed })
}

/// Any star-free condition.
pub fn arb_condition() -> impl Strategy<Value = PathCondition> {
    let leaf = prop_oneof![
        1 => Just(PathCondition::Diamond),
        6 => arb_edge().prop_map(PathCondition::edge),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(a, b)| PathCondition::concat(a, b)),
            1 => inner.clone().prop_map(PathCondition::plus),
            1 => inner.prop_map(PathCondition::reverse),
        ]
    })
}

pub fn arb_simple_condition() -> impl Strategy<Value = PathCondition> {
    any::<u64>().prop_map(|seed| random::random_simple_condition(&mut random::rng(seed), &labels(), 6))
}

/// Oracle satisfaction for every ordered node pair, row per source.
pub fn satisfaction(g: &SystemGraph, pc: &PathCondition) -> Vec<Vec<String>> {
    g.entities().map(|(u, _)| oracle_targets(g, u, pc).unwrap()).collect()
}

pub fn ids(g: &SystemGraph) -> Vec<String> {
    g.entities().map(|(id, _)| id.to_string()).collect()
}

/// Case count without on-disk failure persistence.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
