// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Relationship-based access control over labelled entity graphs.
//!
//! Requests are bound to principals by path conditions evaluated between
//! subject and object, and principals are bound to decisions by an
//! ordinary authorization policy. See [`pdp::evaluate`] for the pipeline.

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod matcher;
pub mod oracle;
pub mod path;
pub mod pdp;
pub mod policy;
pub mod random;
pub mod strategy;

pub use error::{Error, Result, Violation};
pub use graph::{Edge, SystemGraph, SystemModel};
pub use matcher::{match_path, match_principals, BfsMatcher, MatchMetrics, MatchOutcome, PathMatcher};
pub use oracle::{compile_nfa, oracle_satisfies, NfaOracle};
pub use path::{parse, parse_any, simplify, Label, PathCondition};
pub use pdp::{evaluate, AuthorizationSystem, DecisionTrace, Pdp};
pub use policy::{AuthorizationRule, Decision, Defaults, PrincipalMatchingRule, Request};
pub use strategy::Registry;
