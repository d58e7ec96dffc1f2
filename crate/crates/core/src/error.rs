// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::path::{HeadError, Label, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown entity {0:?}")]
    UnknownEntity(String),

    #[error("invalid path condition {text:?}: {source}")]
    Path {
        text: String,
        #[source]
        source: ParseError,
    },

    #[error(transparent)]
    Head(#[from] HeadError),

    #[error("{}", Violations(.0))]
    Invalid(Vec<Violation>),

    #[error("unknown {kind} strategy {name:?}")]
    UnknownStrategy { kind: &'static str, name: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

/// One reason a model, graph, policy or workspace is ill-formed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    SymmetricLabelNotInLabels(Label),
    PermissibleUnknownType { from: String, to: String, label: Label, missing: String },
    PermissibleUnknownLabel { from: String, to: String, label: Label },
    EntityUnknownType { entity: String, ty: String },
    DuplicateEntity(String),
    EdgeUnknownEntity { from: String, to: String, label: Label, missing: String },
    EdgeUnknownLabel { from: String, to: String, label: Label },
    EdgeNotPermitted { from: String, to: String, label: Label, from_type: String, to_type: String },
    TopNotLast { rule: usize },
    BadCondition { rule: usize, message: String },
    UnknownStrategy { kind: &'static str, name: String },
    AuthRuleUnknownObject { rule: usize, object: String },
    DefaultUnknownEntity { scope: &'static str, entity: String },
    RequestUnknownEntity { request: usize, entity: String },
    UnsupportedVersion(u32),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            SymmetricLabelNotInLabels(l) => {
                write!(f, "symmetric label {l:?} is not a relationship label")
            }
            PermissibleUnknownType { from, to, label, missing } => write!(
                f,
                "permissible relationship ({from}, {to}, {label}) names unknown type {missing:?}"
            ),
            PermissibleUnknownLabel { from, to, label } => write!(
                f,
                "permissible relationship ({from}, {to}, {label}) names unknown label {label:?}"
            ),
            EntityUnknownType { entity, ty } => {
                write!(f, "entity {entity:?} has unknown type {ty:?}")
            }
            DuplicateEntity(id) => write!(f, "entity {id:?} declared more than once"),
            EdgeUnknownEntity { from, to, label, missing } => {
                write!(f, "edge ({from}, {to}, {label}) references unknown entity {missing:?}")
            }
            EdgeUnknownLabel { from, to, label } => {
                write!(f, "edge ({from}, {to}, {label}) uses unknown label {label:?}")
            }
            EdgeNotPermitted { from, to, label, from_type, to_type } => write!(
                f,
                "edge ({from}, {to}, {label}) is not permitted: ({from_type}, {to_type}, {label}) \
                 is not a permissible relationship"
            ),
            TopNotLast { rule } => {
                write!(f, "principal-matching rule {rule}: TOP must be the last rule")
            }
            BadCondition { rule, message } => {
                write!(f, "principal-matching rule {rule}: {message}")
            }
            UnknownStrategy { kind, name } => write!(f, "unknown {kind} strategy {name:?}"),
            AuthRuleUnknownObject { rule, object } => {
                write!(f, "authorization rule {rule}: unknown object {object:?}")
            }
            DefaultUnknownEntity { scope, entity } => {
                write!(f, "{scope} default names unknown entity {entity:?}")
            }
            RequestUnknownEntity { request, entity } => {
                write!(f, "request {request}: unknown entity {entity:?}")
            }
            UnsupportedVersion(v) => write!(f, "unsupported workspace version {v}"),
        }
    }
}

struct Violations<'a>(&'a [Violation]);

impl fmt::Display for Violations<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.0.len())?;
        for v in self.0 {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}
