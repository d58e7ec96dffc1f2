// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Shipped example workspaces.
//!
//! - `unix`: owner / group / world over users, groups and objects.
//! - `rbac`: role-based access control with a role hierarchy and direct
//!   user-permission exceptions. Requests name permission entities as
//!   their objects.
//! - `corporate`: a project environment with files, folders, groups,
//!   printers, projects and users, labelled `C`lient-of, `D`eliverable-for,
//!   `M`ember-of, `P`articipant-of, `R`esource-for and `S`upervises.

use std::collections::BTreeMap;

use crate::graph::{Edge, PermissibleEdge, SystemModel};
use crate::io::{
    AuthRuleDocument, EntityDocument, GraphDocument, PrincipalRuleDocument, SystemDocument, Workspace,
    WorkspaceDocument, FORMAT_VERSION,
};
use crate::policy::{Decision, Defaults, Request};
use crate::strategy::Registry;

pub const NAMES: [&str; 3] = ["unix", "rbac", "corporate"];

pub fn by_name(name: &str) -> Option<Workspace> {
    match name {
        "unix" => Some(unix()),
        "rbac" => Some(rbac()),
        "corporate" => Some(corporate()),
        _ => None,
    }
}

struct Builder {
    doc: WorkspaceDocument,
}

impl Builder {
    fn new(pms: &str, crs: &str) -> Self {
        Builder {
            doc: WorkspaceDocument {
                version: FORMAT_VERSION,
                model: SystemModel::default(),
                graph: GraphDocument { entities: Vec::new(), edges: Vec::new() },
                authorization_system: SystemDocument {
                    pms: pms.into(),
                    crs: crs.into(),
                    principal_rules: Vec::new(),
                    auth_rules: Vec::new(),
                    defaults: Defaults { system: Decision::Deny, subjects: BTreeMap::new(), objects: BTreeMap::new() },
                },
                requests: Vec::new(),
            },
        }
    }

    fn types(&mut self, names: &[&str]) -> &mut Self {
        self.doc.model.types.extend(names.iter().map(|s| s.to_string()));
        self
    }

    fn permit(&mut self, triples: &[(&str, &str, &str)]) -> &mut Self {
        for &(from, to, label) in triples {
            self.doc.model.labels.insert(label.into());
            self.doc.model.permissible.insert(PermissibleEdge::new(from, to, label));
        }
        self
    }

    fn entities(&mut self, ty: &str, ids: &[&str]) -> &mut Self {
        self.doc.graph.entities.extend(ids.iter().map(|id| EntityDocument { id: id.to_string(), ty: ty.into() }));
        self
    }

    fn edges(&mut self, label: &str, pairs: &[(&str, &str)]) -> &mut Self {
        self.doc.graph.edges.extend(pairs.iter().map(|&(from, to)| Edge::new(from, to, label)));
        self
    }

    fn rule(&mut self, path: &str, principal: &str) -> &mut Self {
        self.doc.authorization_system.principal_rules.push(PrincipalRuleDocument { path: path.into(), principal: principal.into() });
        self
    }

    fn auth(&mut self, principal: &str, object: &str, action: &str, allow: bool) -> &mut Self {
        self.doc.authorization_system.auth_rules.push(AuthRuleDocument {
            principal: principal.into(),
            object: object.into(),
            action: action.into(),
            allow,
        });
        self
    }

    fn request(&mut self, s: &str, o: &str, a: &str) -> &mut Self {
        self.doc.requests.push(Request::new(s, o, a));
        self
    }

    fn build(&self) -> Workspace {
        Workspace::from_document(&self.doc, Registry::builtin()).expect("shipped fixture is valid")
    }
}

pub fn unix() -> Workspace {
    Builder::new("FirstMatch", "FirstMatch")
        .types(&["user", "group", "object"])
        .permit(&[("user", "object", "uo"), ("user", "group", "ug"), ("group", "object", "go")])
        .entities("user", &["alice", "bob", "carol"])
        .entities("group", &["staff"])
        .entities("object", &["file1"])
        .edges("uo", &[("alice", "file1")])
        .edges("ug", &[("alice", "staff"), ("bob", "staff")])
        .edges("go", &[("staff", "file1")])
        .rule("uo", "owner")
        .rule("ug . go", "group")
        .rule("TOP", "world")
        .auth("owner", "*", "read", true)
        .auth("owner", "*", "write", true)
        .auth("group", "*", "read", true)
        .auth("group", "*", "write", false)
        .auth("world", "*", "read", false)
        .request("alice", "file1", "write")
        .request("bob", "file1", "read")
        .request("bob", "file1", "write")
        .request("carol", "file1", "read")
        .build()
}

pub const RBAC_PERMISSIONS: [(&str, &str); 3] =
    [("read-ledger", "read"), ("approve-expense", "approve"), ("audit-ledger", "audit")];

pub fn rbac() -> Workspace {
    let mut b = Builder::new("AllMatch", "FirstMatch");
    b.types(&["user", "role", "permission"])
        .permit(&[
            ("user", "role", "ua"),
            ("role", "permission", "pa"),
            ("role", "role", "rr"),
            ("user", "permission", "up"),
        ])
        .entities("user", &["alice", "bob", "carol", "dave"])
        .entities("role", &["manager", "clerk", "auditor"])
        .entities("permission", &RBAC_PERMISSIONS.map(|(p, _)| p))
        .edges("ua", &[("alice", "manager"), ("bob", "clerk"), ("dave", "auditor")])
        .edges("rr", &[("manager", "clerk")])
        .edges("pa", &[("clerk", "read-ledger"), ("manager", "approve-expense"), ("auditor", "audit-ledger")])
        .edges("up", &[("carol", "approve-expense")]);
    for (p, _) in RBAC_PERMISSIONS {
        b.rule("ua . pa", p).rule("ua . rr+ . pa", p).rule("up", p);
    }
    for (p, op) in RBAC_PERMISSIONS {
        b.auth(p, p, op, true);
    }
    b.request("alice", "read-ledger", "read")
        .request("alice", "approve-expense", "approve")
        .request("bob", "approve-expense", "approve")
        .request("carol", "approve-expense", "approve")
        .request("dave", "read-ledger", "read")
        .build()
}

pub fn corporate() -> Workspace {
    Builder::new("AllMatch", "FirstMatch")
        .types(&["File", "Folder", "Group", "Printer", "Project", "User"])
        .permit(&[
            ("User", "Group", "M"),
            ("Group", "Group", "M"),
            ("File", "Folder", "M"),
            ("Folder", "Folder", "M"),
            ("User", "Project", "P"),
            ("Group", "Project", "P"),
            ("User", "Project", "S"),
            ("User", "Group", "S"),
            ("User", "User", "S"),
            ("Folder", "Project", "R"),
            ("File", "Project", "R"),
            ("Printer", "Group", "R"),
            ("Printer", "Project", "R"),
            ("Folder", "Project", "D"),
            ("File", "Project", "D"),
            ("Group", "Project", "C"),
            ("Group", "User", "C"),
        ])
        .entities("User", &["CEO", "CTO", "Tech.#1", "Tech.#2", "Tech.#3", "Sales.#1", "Sales.#2"])
        .entities("Group", &["Board", "Tech.Team", "Sales.Team", "Client.#1"])
        .entities("Project", &["Proj.#1", "Proj.#2"])
        .entities(
            "Folder",
            &["Proj.#1 Resources", "Proj.#1 Specs", "Proj.#1 Deliverables", "Proj.#2 Resources", "Proj.#2 Deliverables"],
        )
        .entities(
            "File",
            &["Func.Spec.#1", "Test.Spec.#1", "Proj.#1 Report#1", "Proj.#1 Report#2", "Proj.#2 Plan#1", "Proj.#2 Report#1"],
        )
        .entities("Printer", &["Printer#1", "Printer#2"])
        .edges(
            "M",
            &[
                ("CEO", "Board"),
                ("CTO", "Board"),
                ("Tech.#1", "Tech.Team"),
                ("Tech.#2", "Tech.Team"),
                ("Tech.#3", "Tech.Team"),
                ("Sales.#1", "Sales.Team"),
                ("Sales.#2", "Sales.Team"),
                ("Proj.#1 Specs", "Proj.#1 Resources"),
                ("Func.Spec.#1", "Proj.#1 Specs"),
                ("Test.Spec.#1", "Proj.#1 Specs"),
                ("Proj.#2 Plan#1", "Proj.#2 Resources"),
                ("Proj.#1 Report#1", "Proj.#1 Deliverables"),
                ("Proj.#1 Report#2", "Proj.#1 Deliverables"),
                ("Proj.#2 Report#1", "Proj.#2 Deliverables"),
            ],
        )
        .edges(
            "S",
            &[
                ("CEO", "Board"),
                ("CEO", "Sales.Team"),
                ("CTO", "Tech.Team"),
                ("CTO", "Tech.#1"),
                ("Tech.#2", "Proj.#1"),
                ("Sales.#1", "Proj.#2"),
            ],
        )
        .edges(
            "P",
            &[
                ("Tech.#1", "Proj.#1"),
                ("Tech.#2", "Proj.#1"),
                ("Tech.#3", "Proj.#2"),
                ("Sales.#1", "Proj.#2"),
                ("Sales.#2", "Proj.#1"),
            ],
        )
        .edges("C", &[("Client.#1", "Proj.#1"), ("Client.#1", "Sales.#1")])
        .edges(
            "R",
            &[
                ("Proj.#1 Resources", "Proj.#1"),
                ("Proj.#2 Resources", "Proj.#2"),
                ("Printer#1", "Tech.Team"),
                ("Printer#2", "Sales.Team"),
            ],
        )
        .edges("D", &[("Proj.#1 Deliverables", "Proj.#1"), ("Proj.#2 Deliverables", "Proj.#2")])
        .rule("C . ~D . (~M)+", "Deliverable Client")
        .rule("S+ . ~M . S . ~D", "Deliverable Reviewer")
        .rule("S+ . ~M . S . ~D . (~M)+", "Deliverable Reviewer")
        .rule("S . ~D", "Deliverable Supervisor")
        .rule("S . ~D . (~M)+", "Deliverable Supervisor")
        .rule("P . ~D", "Deliverable User")
        .rule("P . ~D . (~M)+", "Deliverable User")
        .rule("S . ~R", "Project Resource Supervisor")
        .rule("S . ~R . (~M)+", "Project Resource Supervisor")
        .rule("P . ~R", "Project Resource User")
        .rule("P . ~R . (~M)+", "Project Resource User")
        .rule("M . ~R", "Team Resource User")
        .auth("Deliverable Client", "*", "read", true)
        .auth("Deliverable Reviewer", "*", "read", true)
        .auth("Deliverable Supervisor", "*", "read", true)
        .auth("Deliverable Supervisor", "*", "write", true)
        .auth("Deliverable User", "*", "read", true)
        .auth("Project Resource Supervisor", "*", "read", true)
        .auth("Project Resource Supervisor", "*", "write", true)
        .auth("Project Resource User", "*", "read", true)
        .auth("Project Resource User", "Func.Spec.#1", "write", false)
        .auth("Project Resource User", "*", "write", true)
        .auth("Team Resource User", "*", "write", true)
        .request("Tech.#2", "Test.Spec.#1", "read")
        .request("Tech.#2", "Func.Spec.#1", "write")
        .request("Sales.#2", "Func.Spec.#1", "write")
        .request("CTO", "Proj.#1 Report#1", "read")
        .request("CEO", "Proj.#1 Report#1", "read")
        .build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdp::evaluate;
    use Decision::{Allow, Deny};

    fn outcomes(ws: &Workspace) -> Vec<Decision> {
        ws.requests.iter().map(|q| evaluate(&ws.graph, &ws.system, q).unwrap().outcome).collect()
    }

    #[test]
    fn shapes() {
        let u = unix();
        assert_eq!(u.system.pm_policy.len(), 3);
        assert!(u.system.pm_policy[2].is_top());
        let c = corporate();
        assert_eq!(c.system.pm_policy.len(), 12);
        assert_eq!(c.system.auth_policy.len(), 11);
        assert_eq!(c.graph.entity_count(), 26);
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn unix_outcomes() {
        assert_eq!(outcomes(&unix()), vec![Allow, Allow, Deny, Deny]);
    }

    #[test]
    fn rbac_outcomes() {
        assert_eq!(outcomes(&rbac()), vec![Allow, Allow, Deny, Allow, Deny]);
    }

    #[test]
    fn corporate_outcomes() {
        assert_eq!(outcomes(&corporate()), vec![Allow, Allow, Deny, Allow, Deny]);
    }
}
