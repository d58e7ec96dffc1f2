// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! System model and system graph.
//!
//! The [`SystemModel`] fixes the vocabulary: entity types, relationship
//! labels, which labels are symmetric, and which typed triples
//! `(from-type, to-type, label)` may appear as edges. A [`SystemGraph`] is
//! a labelled multigraph of entities over that vocabulary.
//!
//! Edges are unique per `(from, to, label)`. An edge whose label is
//! symmetric is stored once, with the lexicographically smaller endpoint
//! first, and is visible from both sides.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::path::Label;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PermissibleEdge {
    pub from: String,
    pub to: String,
    pub label: Label,
}

impl PermissibleEdge {
    pub fn new(from: impl Into<String>, to: impl Into<String>, label: impl Into<Label>) -> Self {
        PermissibleEdge { from: from.into(), to: to.into(), label: label.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemModel {
    pub types: BTreeSet<String>,
    pub labels: BTreeSet<Label>,
    #[serde(default)]
    pub symmetric: BTreeSet<Label>,
    pub permissible: BTreeSet<PermissibleEdge>,
}

impl SystemModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_type(mut self, ty: impl Into<String>) -> Self {
        self.types.insert(ty.into());
        self
    }

    pub fn with_label(mut self, label: impl Into<Label>) -> Self {
        self.labels.insert(label.into());
        self
    }

    pub fn with_symmetric(mut self, label: impl Into<Label>) -> Self {
        let label = label.into();
        self.labels.insert(label.clone());
        self.symmetric.insert(label);
        self
    }

    pub fn permit(
        mut self,
        from: impl Into<String>,
        to: impl Into<String>,
        label: impl Into<Label>,
    ) -> Self {
        self.permissible.insert(PermissibleEdge::new(from, to, label));
        self
    }

    pub fn is_symmetric(&self, label: &Label) -> bool {
        self.symmetric.contains(label)
    }

    /// Whether an edge `(from_type, to_type, label)` is allowed. Symmetric
    /// labels are permitted in either orientation.
    pub fn permits(&self, from_type: &str, to_type: &str, label: &Label) -> bool {
        let direct = PermissibleEdge::new(from_type, to_type, label.clone());
        if self.permissible.contains(&direct) {
            return true;
        }
        self.is_symmetric(label)
            && self.permissible.contains(&PermissibleEdge::new(to_type, from_type, label.clone()))
    }
}

/// Checks the model's internal consistency. Empty means valid.
pub fn validate_model(m: &SystemModel) -> Vec<Violation> {
    let mut out = Vec::new();
    for s in &m.symmetric {
        if !m.labels.contains(s) {
            out.push(Violation::SymmetricLabelNotInLabels(s.clone()));
        }
    }
    for p in &m.permissible {
        for ty in [&p.from, &p.to] {
            if !m.types.contains(ty) {
                out.push(Violation::PermissibleUnknownType {
                    from: p.from.clone(),
                    to: p.to.clone(),
                    label: p.label.clone(),
                    missing: ty.clone(),
                });
                break;
            }
        }
        if !m.labels.contains(&p.label) {
            out.push(Violation::PermissibleUnknownLabel {
                from: p.from.clone(),
                to: p.to.clone(),
                label: p.label.clone(),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub label: Label,
}

impl Edge {
    pub fn new(from: impl Into<String>, to: impl Into<String>, label: impl Into<Label>) -> Self {
        Edge { from: from.into(), to: to.into(), label: label.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Edge directed away from the node.
    Out,
    /// Edge directed towards the node.
    In,
    /// Symmetric edge; traversable as `r` or `~r` either way.
    Sym,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incident {
    pub neighbor: String,
    pub label: Label,
    pub direction: Direction,
}

/// Dense node handle, valid for one graph snapshot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIx(pub(crate) u32);

impl NodeIx {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IncidentIx {
    pub neighbor: NodeIx,
    pub label: Label,
    pub direction: Direction,
}

#[derive(Clone, Debug, Default)]
struct Index {
    ids: Vec<String>,
    lookup: HashMap<String, NodeIx>,
    adjacency: Vec<Vec<IncidentIx>>,
    // stored edges only, kept apart from the adjacency lists
    edge_keys: HashSet<(NodeIx, NodeIx, Label)>,
}

impl Index {
    fn build(entities: &BTreeMap<String, String>, edges: &BTreeSet<Edge>, model: &SystemModel) -> Self {
        let ids: Vec<String> = entities.keys().cloned().collect();
        let lookup = ids.iter().enumerate().map(|(i, id)| (id.clone(), NodeIx(i as u32))).collect();
        let mut index = Index { adjacency: vec![Vec::new(); ids.len()], ids, lookup, edge_keys: HashSet::new() };
        for e in edges {
            index.insert_edge(e, model.is_symmetric(&e.label));
        }
        index
    }

    fn entries_for(&self, e: &Edge, symmetric: bool) -> Option<Vec<(NodeIx, IncidentIx)>> {
        let from = *self.lookup.get(&e.from)?;
        let to = *self.lookup.get(&e.to)?;
        let label = e.label.clone();
        Some(if symmetric {
            let mut v = vec![(from, IncidentIx { neighbor: to, label: label.clone(), direction: Direction::Sym })];
            if from != to {
                v.push((to, IncidentIx { neighbor: from, label, direction: Direction::Sym }));
            }
            v
        } else {
            vec![
                (from, IncidentIx { neighbor: to, label: label.clone(), direction: Direction::Out }),
                (to, IncidentIx { neighbor: from, label, direction: Direction::In }),
            ]
        })
    }

    fn sort_key(&self, i: &IncidentIx) -> (Direction, NodeIx, Label) {
        // node indices follow sorted entity ids
        (i.direction, i.neighbor, i.label.clone())
    }

    fn insert_edge(&mut self, e: &Edge, symmetric: bool) {
        if let Some(key) = self.edge_key(e) {
            self.edge_keys.insert(key);
        }
        let Some(entries) = self.entries_for(e, symmetric) else { return };
        for (node, inc) in entries {
            let key = self.sort_key(&inc);
            let list = &self.adjacency[node.index()];
            let pos = list.partition_point(|x| self.sort_key(x) < key);
            self.adjacency[node.index()].insert(pos, inc);
        }
    }

    fn edge_key(&self, e: &Edge) -> Option<(NodeIx, NodeIx, Label)> {
        Some((*self.lookup.get(&e.from)?, *self.lookup.get(&e.to)?, e.label.clone()))
    }

    fn remove_edge(&mut self, e: &Edge, symmetric: bool) {
        if let Some(key) = self.edge_key(e) {
            self.edge_keys.remove(&key);
        }
        let Some(entries) = self.entries_for(e, symmetric) else { return };
        for (node, inc) in entries {
            let list = &mut self.adjacency[node.index()];
            if let Some(pos) = list.iter().position(|x| *x == inc) {
                list.remove(pos);
            }
        }
    }
}

/// An entity multigraph over a [`SystemModel`].
///
/// Graphs built with [`SystemGraph::from_parts`] may be ill-formed; use
/// [`validate_graph`] to list the problems. The mutation methods reject
/// any change that would make the graph ill-formed. Each mutation bumps
/// [`version`](SystemGraph::version).
#[derive(Clone, Debug)]
pub struct SystemGraph {
    model: Arc<SystemModel>,
    entities: BTreeMap<String, String>,
    edges: BTreeSet<Edge>,
    duplicates: Vec<String>,
    version: u64,
    index: Index,
}

impl SystemGraph {
    pub fn new(model: impl Into<Arc<SystemModel>>) -> Self {
        SystemGraph {
            model: model.into(),
            entities: BTreeMap::new(),
            edges: BTreeSet::new(),
            duplicates: Vec::new(),
            version: 0,
            index: Index::default(),
        }
    }

    /// Builds a graph without validation. Duplicate `(from, to, label)`
    /// triples collapse; symmetric edges are stored canonically.
    pub fn from_parts(
        model: impl Into<Arc<SystemModel>>,
        entities: impl IntoIterator<Item = (String, String)>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let model = model.into();
        let mut map = BTreeMap::new();
        let mut duplicates = Vec::new();
        for (id, ty) in entities {
            if map.contains_key(&id) {
                duplicates.push(id.clone());
            }
            map.insert(id, ty);
        }
        let edges: BTreeSet<Edge> = edges.into_iter().map(|e| canonical_edge(&model, e)).collect();
        let index = Index::build(&map, &edges, &model);
        SystemGraph { model, entities: map, edges, duplicates, version: 0, index }
    }

    pub fn model(&self) -> &SystemModel {
        &self.model
    }

    pub fn model_arc(&self) -> &Arc<SystemModel> {
        &self.model
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn entities(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entities.iter().map(|(id, ty)| (id.as_str(), ty.as_str()))
    }

    pub fn entity_type(&self, id: &str) -> Option<&str> {
        self.entities.get(id).map(String::as_str)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entities.contains_key(id)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True iff `(from, to, label)` is an edge; a symmetric edge counts in
    /// both orientations.
    pub fn has_edge(&self, from: &str, to: &str, label: &Label) -> bool {
        match (self.node_index(from), self.node_index(to)) {
            (Some(f), Some(t)) => self.has_edge_ix(f, t, label),
            // endpoints outside the entity set only occur in ill-formed graphs
            _ => {
                self.edges.contains(&Edge::new(from, to, label.clone()))
                    || self.model.is_symmetric(label) && self.edges.contains(&Edge::new(to, from, label.clone()))
            }
        }
    }

    /// [`has_edge`](Self::has_edge) on node handles.
    pub fn has_edge_ix(&self, from: NodeIx, to: NodeIx, label: &Label) -> bool {
        let keys = &self.index.edge_keys;
        keys.contains(&(from, to, label.clone()))
            || self.model.is_symmetric(label) && keys.contains(&(to, from, label.clone()))
    }

    /// Incident edges of `node`, ordered by direction (out, in, sym), then
    /// neighbour id, then label.
    pub fn edges_incident(&self, node: &str) -> Result<Vec<Incident>> {
        let ix = self.node_index(node).ok_or_else(|| Error::UnknownEntity(node.to_string()))?;
        Ok(self
            .incident(ix)
            .iter()
            .map(|i| Incident {
                neighbor: self.node_id(i.neighbor).to_string(),
                label: i.label.clone(),
                direction: i.direction,
            })
            .collect())
    }

    pub fn node_index(&self, id: &str) -> Option<NodeIx> {
        self.index.lookup.get(id).copied()
    }

    pub fn node_id(&self, ix: NodeIx) -> &str {
        &self.index.ids[ix.index()]
    }

    pub(crate) fn incident(&self, ix: NodeIx) -> &[IncidentIx] {
        &self.index.adjacency[ix.index()]
    }

    pub fn add_entity(&mut self, id: impl Into<String>, ty: impl Into<String>) -> Result<()> {
        let id = id.into();
        let ty = ty.into();
        if self.entities.contains_key(&id) {
            return Err(Error::Invalid(vec![Violation::DuplicateEntity(id)]));
        }
        if !self.model.types.contains(&ty) {
            return Err(Error::Invalid(vec![Violation::EntityUnknownType { entity: id, ty }]));
        }
        self.entities.insert(id, ty);
        self.index = Index::build(&self.entities, &self.edges, &self.model);
        self.version += 1;
        Ok(())
    }

    /// Removes an entity together with every edge touching it.
    pub fn remove_entity(&mut self, id: &str) -> Result<()> {
        if self.entities.remove(id).is_none() {
            return Err(Error::UnknownEntity(id.to_string()));
        }
        self.edges.retain(|e| e.from != id && e.to != id);
        self.index = Index::build(&self.entities, &self.edges, &self.model);
        self.version += 1;
        Ok(())
    }

    /// Adds an edge after checking it against the model. Returns `false`
    /// if the edge was already present.
    pub fn add_edge(&mut self, edge: Edge) -> Result<bool> {
        let violations = self.edge_violations(&edge);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let edge = canonical_edge(&self.model, edge);
        if !self.edges.insert(edge.clone()) {
            return Ok(false);
        }
        self.index.insert_edge(&edge, self.model.is_symmetric(&edge.label));
        self.version += 1;
        Ok(true)
    }

    pub fn remove_edge(&mut self, edge: &Edge) -> bool {
        let edge = canonical_edge(&self.model, edge.clone());
        if !self.edges.remove(&edge) {
            return false;
        }
        self.index.remove_edge(&edge, self.model.is_symmetric(&edge.label));
        self.version += 1;
        true
    }

    fn edge_violations(&self, e: &Edge) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.model.labels.contains(&e.label) {
            out.push(Violation::EdgeUnknownLabel {
                from: e.from.clone(),
                to: e.to.clone(),
                label: e.label.clone(),
            });
        }
        let mut types = Vec::with_capacity(2);
        for end in [&e.from, &e.to] {
            match self.entities.get(end) {
                Some(t) => types.push(t),
                None => out.push(Violation::EdgeUnknownEntity {
                    from: e.from.clone(),
                    to: e.to.clone(),
                    label: e.label.clone(),
                    missing: end.clone(),
                }),
            }
        }
        if out.is_empty() && !self.model.permits(types[0], types[1], &e.label) {
            out.push(Violation::EdgeNotPermitted {
                from: e.from.clone(),
                to: e.to.clone(),
                label: e.label.clone(),
                from_type: types[0].clone(),
                to_type: types[1].clone(),
            });
        }
        out
    }
}

fn canonical_edge(model: &SystemModel, e: Edge) -> Edge {
    if model.is_symmetric(&e.label) && e.to < e.from {
        Edge { from: e.to, to: e.from, label: e.label }
    } else {
        e
    }
}

/// Lists every well-formedness problem of `g`. Empty means well-formed.
pub fn validate_graph(g: &SystemGraph) -> Vec<Violation> {
    let mut out: Vec<Violation> =
        g.duplicates.iter().map(|id| Violation::DuplicateEntity(id.clone())).collect();
    for (id, ty) in &g.entities {
        if !g.model.types.contains(ty) {
            out.push(Violation::EntityUnknownType { entity: id.clone(), ty: ty.clone() });
        }
    }
    for e in &g.edges {
        out.extend(g.edge_violations(e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fragment() -> SystemGraph {
        let model = SystemModel::new()
            .with_type("User")
            .with_type("Project")
            .with_type("Folder")
            .with_type("File")
            .with_label("Participant-of")
            .with_label("Supervises")
            .with_label("Resource-for")
            .with_label("Member-of")
            .permit("User", "Project", "Participant-of")
            .permit("User", "Project", "Supervises")
            .permit("Folder", "Project", "Resource-for")
            .permit("Folder", "Folder", "Member-of")
            .permit("File", "Folder", "Member-of");
        SystemGraph::from_parts(
            model,
            [("U1", "User"), ("P1", "Project"), ("F1", "Folder"), ("F2", "Folder"), ("D1", "File"), ("D2", "File")]
                .map(|(a, b)| (a.to_string(), b.to_string())),
            [
                Edge::new("U1", "P1", "Participant-of"),
                Edge::new("U1", "P1", "Supervises"),
                Edge::new("F1", "P1", "Resource-for"),
                Edge::new("F2", "F1", "Member-of"),
                Edge::new("D1", "F2", "Member-of"),
                Edge::new("D2", "F2", "Member-of"),
            ],
        )
    }

    fn inc(n: &str, l: &str, d: Direction) -> Incident {
        Incident { neighbor: n.into(), label: l.into(), direction: d }
    }

    #[test]
    fn incident_order_on_fragment() {
        let g = fragment();
        assert!(validate_graph(&g).is_empty());
        assert_eq!(
            g.edges_incident("U1").unwrap(),
            vec![inc("P1", "Participant-of", Direction::Out), inc("P1", "Supervises", Direction::Out)]
        );
        assert_eq!(
            g.edges_incident("F2").unwrap(),
            vec![
                inc("F1", "Member-of", Direction::Out),
                inc("D1", "Member-of", Direction::In),
                inc("D2", "Member-of", Direction::In),
            ]
        );
        assert!(matches!(g.edges_incident("nope"), Err(Error::UnknownEntity(_))));
    }

    #[test]
    fn isolated_node_has_no_incident_edges() {
        let mut g = fragment();
        g.add_entity("U9", "User").unwrap();
        assert!(g.edges_incident("U9").unwrap().is_empty());
    }

    #[test]
    fn directed_edges_are_one_way() {
        let g = fragment();
        let s = Label::new("Supervises");
        assert!(g.has_edge("U1", "P1", &s));
        assert!(!g.has_edge("P1", "U1", &s));
    }

    #[test]
    fn symmetric_edges_both_ways() {
        let model = SystemModel::new()
            .with_type("Person")
            .with_symmetric("Sibling-of")
            .with_label("Brother-of")
            .permit("Person", "Person", "Sibling-of")
            .permit("Person", "Person", "Brother-of");
        let mut g = SystemGraph::new(model);
        g.add_entity("Alice", "Person").unwrap();
        g.add_entity("Bob", "Person").unwrap();
        g.add_edge(Edge::new("Bob", "Alice", "Sibling-of")).unwrap();
        // stored once, canonical order
        assert!(!g.add_edge(Edge::new("Alice", "Bob", "Sibling-of")).unwrap());
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges().next().unwrap(), &Edge::new("Alice", "Bob", "Sibling-of"));
        let sib = Label::new("Sibling-of");
        assert!(g.has_edge("Bob", "Alice", &sib));
        assert!(g.has_edge("Alice", "Bob", &sib));
        assert_eq!(g.edges_incident("Bob").unwrap(), vec![inc("Alice", "Sibling-of", Direction::Sym)]);

        g.add_edge(Edge::new("Bob", "Alice", "Brother-of")).unwrap();
        let bro = Label::new("Brother-of");
        assert!(g.has_edge("Bob", "Alice", &bro));
        assert!(!g.has_edge("Alice", "Bob", &bro));
        g.add_edge(Edge::new("Alice", "Bob", "Brother-of")).unwrap();
        assert!(g.has_edge("Alice", "Bob", &bro));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn model_violations() {
        let m = SystemModel::new().with_label("R");
        let mut bad = m.clone();
        bad.symmetric.insert(Label::new("Sibling-of"));
        assert_eq!(validate_model(&bad), vec![Violation::SymmetricLabelNotInLabels("Sibling-of".into())]);

        let bad = m.clone().with_type("User").permit("User", "Ghost", "R");
        let v = validate_model(&bad);
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], Violation::PermissibleUnknownType { missing, .. } if missing == "Ghost"));
    }

    #[test]
    fn mutation_rejects_ill_formed_edges() {
        let mut g = fragment();
        let before = g.version();
        let err = g.add_edge(Edge::new("U1", "F1", "Supervises")).unwrap_err();
        assert!(matches!(err, Error::Invalid(ref v) if matches!(v[0], Violation::EdgeNotPermitted { .. })));
        let err = g.add_edge(Edge::new("U1", "ghost", "Supervises")).unwrap_err();
        assert!(matches!(err, Error::Invalid(ref v) if matches!(v[0], Violation::EdgeUnknownEntity { .. })));
        assert_eq!(g.version(), before);
        assert!(g.add_entity("X", "Spaceship").is_err());
        assert!(g.add_entity("U1", "User").is_err());
    }

    #[test]
    fn removal_updates_index() {
        let mut g = fragment();
        assert!(g.remove_edge(&Edge::new("U1", "P1", "Supervises")));
        assert_eq!(g.edges_incident("U1").unwrap(), vec![inc("P1", "Participant-of", Direction::Out)]);
        g.remove_entity("F2").unwrap();
        assert!(g.edges_incident("D1").unwrap().is_empty());
        assert_eq!(g.edges_incident("F1").unwrap(), vec![inc("P1", "Resource-for", Direction::Out)]);
        assert!(validate_graph(&g).is_empty());
    }

    #[test]
    fn unchecked_graph_reports_violations() {
        let model = SystemModel::new().with_type("User").with_label("Client-of");
        let g = SystemGraph::from_parts(
            model,
            [("a".to_string(), "User".to_string()), ("b".to_string(), "User".to_string())],
            [Edge::new("a", "b", "Client-of"), Edge::new("a", "zz", "Client-of")],
        );
        let v = validate_graph(&g);
        assert_eq!(v.len(), 2);
        assert!(matches!(v[0], Violation::EdgeNotPermitted { .. }));
        assert!(matches!(v[1], Violation::EdgeUnknownEntity { .. }));
    }
}
