// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Workspace files: one JSON document holding the system model, the
//! system graph, the authorization system and optional requests.
//!
//! ```json
//! {
//!   "version": 1,
//!   "model": {"types": [], "labels": [], "symmetric": [], "permissible": []},
//!   "graph": {"entities": [{"id": "", "type": ""}], "edges": [{"from": "", "to": "", "label": ""}]},
//!   "authorization_system": {
//!     "pms": "AllMatch", "crs": "FirstMatch",
//!     "principal_rules": [{"path": "P . ~R", "principal": "p"}],
//!     "auth_rules": [{"principal": "p", "object": "*", "action": "read", "allow": true}],
//!     "defaults": {"system": "deny", "subjects": {}, "objects": {}}
//!   },
//!   "requests": [{"subject": "", "object": "", "action": ""}]
//! }
//! ```
//!
//! A `path` of `"TOP"` is the always-matching rule; an `object` of `"*"`
//! matches every object.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::graph::{validate_graph, validate_model, Edge, SystemGraph, SystemModel};
use crate::path::{parse, render};
use crate::pdp::AuthorizationSystem;
use crate::policy::{AuthorizationRule, Defaults, ObjectSpec, PrincipalMatchingRule, Request, RuleCondition};
use crate::strategy::Registry;

pub const FORMAT_VERSION: u32 = 1;
pub const TOP_KEYWORD: &str = "TOP";
pub const ANY_OBJECT: &str = "*";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDocument {
    pub version: u32,
    pub model: SystemModel,
    pub graph: GraphDocument,
    pub authorization_system: SystemDocument,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub requests: Vec<Request>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub entities: Vec<EntityDocument>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntityDocument {
    pub id: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub pms: String,
    pub crs: String,
    pub principal_rules: Vec<PrincipalRuleDocument>,
    pub auth_rules: Vec<AuthRuleDocument>,
    pub defaults: Defaults,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrincipalRuleDocument {
    pub path: String,
    pub principal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuthRuleDocument {
    pub principal: String,
    pub object: String,
    pub action: String,
    pub allow: bool,
}

/// A validated workspace.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub graph: SystemGraph,
    pub system: AuthorizationSystem,
    pub requests: Vec<Request>,
}

impl Workspace {
    /// Builds and fully validates a workspace, resolving strategy names in
    /// `registry`. All problems are reported together.
    pub fn from_document(doc: &WorkspaceDocument, registry: &Registry) -> Result<Self> {
        let mut v = Vec::new();
        if doc.version != FORMAT_VERSION {
            v.push(Violation::UnsupportedVersion(doc.version));
        }
        v.extend(validate_model(&doc.model));
        let graph = SystemGraph::from_parts(
            doc.model.clone(),
            doc.graph.entities.iter().map(|e| (e.id.clone(), e.ty.clone())),
            doc.graph.edges.iter().cloned(),
        );
        v.extend(validate_graph(&graph));

        let sd = &doc.authorization_system;
        let mut rules = Vec::with_capacity(sd.principal_rules.len());
        for (i, r) in sd.principal_rules.iter().enumerate() {
            if r.path.trim() == TOP_KEYWORD {
                rules.push(PrincipalMatchingRule::top(r.principal.clone()));
                continue;
            }
            match parse(&r.path, &doc.model.labels) {
                Ok(pc) => rules.push(PrincipalMatchingRule::path(pc, r.principal.clone())),
                Err(e) => {
                    v.push(Violation::BadCondition { rule: i, message: format!("{:?}: {e}", r.path) });
                    rules.push(PrincipalMatchingRule::top(r.principal.clone()));
                }
            }
        }
        let auth: Vec<AuthorizationRule> = sd
            .auth_rules
            .iter()
            .map(|r| {
                let object = if r.object == ANY_OBJECT {
                    ObjectSpec::Any
                } else {
                    ObjectSpec::Entity(r.object.clone())
                };
                AuthorizationRule::new(r.principal.clone(), object, r.action.clone(), r.allow)
            })
            .collect();
        let pms = registry.pms(&sd.pms);
        let crs = registry.crs(&sd.crs);
        for (kind, name, ok) in [("principal-matching", &sd.pms, pms.is_ok()), ("conflict-resolution", &sd.crs, crs.is_ok())] {
            if !ok {
                v.push(Violation::UnknownStrategy { kind, name: name.clone() });
            }
        }
        for (request, q) in doc.requests.iter().enumerate() {
            for entity in [&q.subject, &q.object] {
                if !graph.contains(entity) {
                    v.push(Violation::RequestUnknownEntity { request, entity: entity.clone() });
                }
            }
        }
        let (Ok(pms), Ok(crs)) = (pms, crs) else {
            v.sort();
            v.dedup();
            return Err(Error::Invalid(v));
        };
        let system = AuthorizationSystem {
            pm_policy: rules,
            pms,
            auth_policy: auth,
            crs,
            defaults: sd.defaults.clone(),
        };
        v.extend(system.violations_against(&graph));
        if !v.is_empty() {
            v.sort();
            v.dedup();
            return Err(Error::Invalid(v));
        }
        Ok(Workspace { graph, system, requests: doc.requests.clone() })
    }

    /// Canonical document: entities and edges sorted, rules in policy order.
    pub fn to_document(&self) -> WorkspaceDocument {
        let sys = &self.system;
        WorkspaceDocument {
            version: FORMAT_VERSION,
            model: self.graph.model().clone(),
            graph: GraphDocument {
                entities: self
                    .graph
                    .entities()
                    .map(|(id, ty)| EntityDocument { id: id.to_string(), ty: ty.to_string() })
                    .collect(),
                edges: self.graph.edges().cloned().collect(),
            },
            authorization_system: SystemDocument {
                pms: sys.pms.name().to_string(),
                crs: sys.crs.name().to_string(),
                principal_rules: sys
                    .pm_policy
                    .iter()
                    .map(|r| PrincipalRuleDocument {
                        path: match &r.condition {
                            RuleCondition::Top => TOP_KEYWORD.to_string(),
                            RuleCondition::Path(pc) => render(pc).expect("policy conditions are star-free"),
                        },
                        principal: r.principal.clone(),
                    })
                    .collect(),
                auth_rules: sys
                    .auth_policy
                    .iter()
                    .map(|r| AuthRuleDocument {
                        principal: r.principal.clone(),
                        object: r.object.to_string(),
                        action: r.action.clone(),
                        allow: r.allow,
                    })
                    .collect(),
                defaults: sys.defaults.clone(),
            },
            requests: self.requests.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(&self.to_document())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|source| Error::Io { path: path.to_path_buf(), source })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json(doc: &WorkspaceDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn read_document(path: &Path) -> Result<WorkspaceDocument> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| Error::Json { path: path.to_path_buf(), source })
}

/// Reads and validates a workspace with the built-in strategies.
pub fn load_workspace(path: &Path) -> Result<Workspace> {
    Workspace::from_document(&read_document(path)?, Registry::builtin())
}
