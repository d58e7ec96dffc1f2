// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Interchangeable evaluation strategies and the name-keyed registry that
//! selects them at runtime.
//!
//! Three families are pluggable:
//!
//! - [`PrincipalMatchingStrategy`]: how rule matches become the list of
//!   matched principals (`FirstMatch`, `AllMatch`);
//! - [`ConflictResolution`]: how a conflicting set of possible decisions
//!   becomes one decision (`FirstMatch`, `DenyOverride`, `AllowOverride`);
//! - [`PathMatcher`]: how `G, u, v |= pi` is decided (`bfs`, `nfa-oracle`).
//!
//! Workspace files and the CLI refer to strategies by name; a [`Registry`]
//! resolves the names.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::matcher::{BfsMatcher, PathMatcher};
use crate::oracle::NfaOracle;
use crate::policy::{Decision, PrincipalMatchingRule};

pub trait PrincipalMatchingStrategy: Send + Sync {
    fn name(&self) -> &str;

    /// Selects the matched principals. `matches(i)` evaluates rule `i`;
    /// strategies decide which rules get evaluated and in what order.
    fn select(
        &self,
        rules: &[PrincipalMatchingRule],
        matches: &mut dyn FnMut(usize) -> Result<bool>,
    ) -> Result<Vec<String>>;
}

/// Stops at the first matching rule.
#[derive(Debug, Default, Clone, Copy)]
pub struct FirstMatchPms;

impl PrincipalMatchingStrategy for FirstMatchPms {
    fn name(&self) -> &str {
        "FirstMatch"
    }

    fn select(
        &self,
        rules: &[PrincipalMatchingRule],
        matches: &mut dyn FnMut(usize) -> Result<bool>,
    ) -> Result<Vec<String>> {
        for (i, rule) in rules.iter().enumerate() {
            if matches(i)? {
                return Ok(vec![rule.principal.clone()]);
            }
        }
        Ok(Vec::new())
    }
}

/// Evaluates every rule; principals appear once, in order of first match.
#[derive(Debug, Default, Clone, Copy)]
pub struct AllMatchPms;

impl PrincipalMatchingStrategy for AllMatchPms {
    fn name(&self) -> &str {
        "AllMatch"
    }

    fn select(
        &self,
        rules: &[PrincipalMatchingRule],
        matches: &mut dyn FnMut(usize) -> Result<bool>,
    ) -> Result<Vec<String>> {
        let mut out: Vec<String> = Vec::new();
        for (i, rule) in rules.iter().enumerate() {
            if matches(i)? && !out.contains(&rule.principal) {
                out.push(rule.principal.clone());
            }
        }
        Ok(out)
    }
}

pub trait ConflictResolution: Send + Sync {
    fn name(&self) -> &str;

    /// Picks a decision from a possible-decision list holding both values,
    /// in the order they were added.
    fn resolve_conflict(&self, pd: &[Decision]) -> Decision;

    /// `None` for an empty list, the sole value when all agree, otherwise
    /// [`resolve_conflict`](Self::resolve_conflict).
    fn resolve(&self, pd: &[Decision]) -> Option<Decision> {
        let first = *pd.first()?;
        if pd.iter().all(|&d| d == first) {
            Some(first)
        } else {
            Some(self.resolve_conflict(pd))
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct FirstMatchCrs;

impl ConflictResolution for FirstMatchCrs {
    fn name(&self) -> &str {
        "FirstMatch"
    }

    fn resolve_conflict(&self, pd: &[Decision]) -> Decision {
        pd[0]
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct DenyOverride;

impl ConflictResolution for DenyOverride {
    fn name(&self) -> &str {
        "DenyOverride"
    }

    fn resolve_conflict(&self, _pd: &[Decision]) -> Decision {
        Decision::Deny
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct AllowOverride;

impl ConflictResolution for AllowOverride {
    fn name(&self) -> &str {
        "AllowOverride"
    }

    fn resolve_conflict(&self, _pd: &[Decision]) -> Decision {
        Decision::Allow
    }
}

/// Name-keyed lookup of strategy implementations.
#[derive(Clone, Default)]
pub struct Registry {
    pms: BTreeMap<String, Arc<dyn PrincipalMatchingStrategy>>,
    crs: BTreeMap<String, Arc<dyn ConflictResolution>>,
    matchers: BTreeMap<String, Arc<dyn PathMatcher>>,
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("pms", &self.pms.keys().collect::<Vec<_>>())
            .field("crs", &self.crs.keys().collect::<Vec<_>>())
            .field("matchers", &self.matchers.keys().collect::<Vec<_>>())
            .finish()
    }
}

pub const DEFAULT_MATCHER: &str = "bfs";

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register_pms(FirstMatchPms);
        r.register_pms(AllMatchPms);
        r.register_crs(FirstMatchCrs);
        r.register_crs(DenyOverride);
        r.register_crs(AllowOverride);
        r.register_matcher(BfsMatcher);
        r.register_matcher(NfaOracle);
        r
    }

    /// Shared registry with the built-in strategies.
    pub fn builtin() -> &'static Registry {
        static BUILTIN: OnceLock<Registry> = OnceLock::new();
        BUILTIN.get_or_init(Registry::with_builtins)
    }

    pub fn register_pms(&mut self, s: impl PrincipalMatchingStrategy + 'static) {
        self.pms.insert(s.name().to_string(), Arc::new(s));
    }

    pub fn register_crs(&mut self, s: impl ConflictResolution + 'static) {
        self.crs.insert(s.name().to_string(), Arc::new(s));
    }

    pub fn register_matcher(&mut self, m: impl PathMatcher + 'static) {
        self.matchers.insert(m.name().to_string(), Arc::new(m));
    }

    pub fn pms(&self, name: &str) -> Result<Arc<dyn PrincipalMatchingStrategy>> {
        self.pms.get(name).cloned().ok_or_else(|| Error::UnknownStrategy {
            kind: "principal-matching",
            name: name.to_string(),
        })
    }

    pub fn crs(&self, name: &str) -> Result<Arc<dyn ConflictResolution>> {
        self.crs.get(name).cloned().ok_or_else(|| Error::UnknownStrategy {
            kind: "conflict-resolution",
            name: name.to_string(),
        })
    }

    pub fn matcher(&self, name: &str) -> Result<Arc<dyn PathMatcher>> {
        self.matchers
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy { kind: "path-matcher", name: name.to_string() })
    }

    pub fn pms_names(&self) -> impl Iterator<Item = &str> {
        self.pms.keys().map(String::as_str)
    }

    pub fn crs_names(&self) -> impl Iterator<Item = &str> {
        self.crs.keys().map(String::as_str)
    }

    pub fn matcher_names(&self) -> impl Iterator<Item = &str> {
        self.matchers.keys().map(String::as_str)
    }
}
