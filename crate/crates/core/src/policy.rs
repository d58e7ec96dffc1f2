// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Policy building blocks: requests, principal-matching rules,
//! authorization rules and default decisions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::path::PathCondition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Allow,
    Deny,
}

impl Decision {
    pub fn from_bool(allow: bool) -> Self {
        if allow {
            Decision::Allow
        } else {
            Decision::Deny
        }
    }

    pub fn is_allow(self) -> bool {
        self == Decision::Allow
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Allow => "ALLOW",
            Decision::Deny => "DENY",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Request {
    pub subject: String,
    pub object: String,
    pub action: String,
}

impl Request {
    pub fn new(subject: impl Into<String>, object: impl Into<String>, action: impl Into<String>) -> Self {
        Request { subject: subject.into(), object: object.into(), action: action.into() }
    }
}

impl fmt::Display for Request {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.subject, self.object, self.action)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleCondition {
    Path(PathCondition),
    /// Matches every request it is evaluated against.
    Top,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalMatchingRule {
    pub condition: RuleCondition,
    pub principal: String,
}

impl PrincipalMatchingRule {
    pub fn path(condition: PathCondition, principal: impl Into<String>) -> Self {
        PrincipalMatchingRule { condition: RuleCondition::Path(condition), principal: principal.into() }
    }

    pub fn top(principal: impl Into<String>) -> Self {
        PrincipalMatchingRule { condition: RuleCondition::Top, principal: principal.into() }
    }

    pub fn is_top(&self) -> bool {
        self.condition == RuleCondition::Top
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ObjectSpec {
    Any,
    Entity(String),
}

impl ObjectSpec {
    pub fn applies_to(&self, object: &str) -> bool {
        match self {
            ObjectSpec::Any => true,
            ObjectSpec::Entity(o) => o == object,
        }
    }
}

impl fmt::Display for ObjectSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectSpec::Any => f.write_str("*"),
            ObjectSpec::Entity(o) => f.write_str(o),
        }
    }
}

/// `(principal, object-or-*, action, allow)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AuthorizationRule {
    pub principal: String,
    pub object: ObjectSpec,
    pub action: String,
    pub allow: bool,
}

impl AuthorizationRule {
    pub fn new(principal: impl Into<String>, object: ObjectSpec, action: impl Into<String>, allow: bool) -> Self {
        AuthorizationRule { principal: principal.into(), object, action: action.into(), allow }
    }

    pub fn any(principal: impl Into<String>, action: impl Into<String>, allow: bool) -> Self {
        Self::new(principal, ObjectSpec::Any, action, allow)
    }

    pub fn on(principal: impl Into<String>, object: impl Into<String>, action: impl Into<String>, allow: bool) -> Self {
        Self::new(principal, ObjectSpec::Entity(object.into()), action, allow)
    }

    pub fn applies(&self, object: &str, action: &str) -> bool {
        self.action == action && self.object.applies_to(object)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defaults {
    pub system: Decision,
    #[serde(default)]
    pub subjects: BTreeMap<String, Decision>,
    #[serde(default)]
    pub objects: BTreeMap<String, Decision>,
}

impl Defaults {
    pub fn system(decision: Decision) -> Self {
        Defaults { system: decision, subjects: BTreeMap::new(), objects: BTreeMap::new() }
    }
}
