// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! Policy decision point.
//!
//! Evaluation runs in two stages. Principal matching binds the request to
//! a list of principals; the authorization policy then turns those into a
//! list of possible decisions, which a conflict-resolution strategy
//! reduces to one. When either stage comes up empty a default decides.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::graph::SystemGraph;
use crate::matcher::{match_principals, BfsMatcher, NoTrace, PathMatcher, RuleMatch, TraceSink};
use crate::policy::{AuthorizationRule, Decision, Defaults, PrincipalMatchingRule, Request, RuleCondition};
use crate::strategy::{ConflictResolution, PrincipalMatchingStrategy};

#[derive(Clone)]
pub struct AuthorizationSystem {
    pub pm_policy: Vec<PrincipalMatchingRule>,
    pub pms: Arc<dyn PrincipalMatchingStrategy>,
    pub auth_policy: Vec<AuthorizationRule>,
    pub crs: Arc<dyn ConflictResolution>,
    pub defaults: Defaults,
}

impl fmt::Debug for AuthorizationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AuthorizationSystem")
            .field("pm_policy", &self.pm_policy)
            .field("pms", &self.pms.name())
            .field("auth_policy", &self.auth_policy)
            .field("crs", &self.crs.name())
            .field("defaults", &self.defaults)
            .finish()
    }
}

impl AuthorizationSystem {
    pub fn new(
        pm_policy: Vec<PrincipalMatchingRule>,
        pms: Arc<dyn PrincipalMatchingStrategy>,
        auth_policy: Vec<AuthorizationRule>,
        crs: Arc<dyn ConflictResolution>,
        defaults: Defaults,
    ) -> Result<Self> {
        let sys = AuthorizationSystem { pm_policy, pms, auth_policy, crs, defaults };
        let v = sys.violations();
        if v.is_empty() {
            Ok(sys)
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Structural problems that do not need a graph: TOP placement.
    pub fn violations(&self) -> Vec<Violation> {
        let last = self.pm_policy.len().saturating_sub(1);
        self.pm_policy
            .iter()
            .enumerate()
            .filter(|(i, r)| r.is_top() && *i != last)
            .map(|(rule, _)| Violation::TopNotLast { rule })
            .collect()
    }

    /// Problems relative to `g`: unknown labels in conditions, unknown
    /// objects in rules and defaults.
    pub fn violations_against(&self, g: &SystemGraph) -> Vec<Violation> {
        let mut out = self.violations();
        let labels = &g.model().labels;
        for (rule, r) in self.pm_policy.iter().enumerate() {
            if let RuleCondition::Path(pc) = &r.condition {
                for l in pc.labels() {
                    if !labels.contains(l) {
                        out.push(Violation::BadCondition { rule, message: format!("unknown label {l:?}") });
                    }
                }
            }
        }
        for (rule, r) in self.auth_policy.iter().enumerate() {
            if let crate::policy::ObjectSpec::Entity(o) = &r.object {
                if !g.contains(o) {
                    out.push(Violation::AuthRuleUnknownObject { rule, object: o.clone() });
                }
            }
        }
        for (scope, table) in [("subject", &self.defaults.subjects), ("object", &self.defaults.objects)] {
            for entity in table.keys() {
                if !g.contains(entity) {
                    out.push(Violation::DefaultUnknownEntity { scope, entity: entity.clone() });
                }
            }
        }
        out
    }
}

/// Possible decisions for principals `mp` on `(o, a)`.
///
/// `pa` is scanned in order and each principal contributes only its first
/// applicable rule. Values keep arrival order, duplicates dropped.
pub fn possible_decisions(mp: &[String], o: &str, a: &str, pa: &[AuthorizationRule]) -> Vec<Decision> {
    let mut decided: Vec<&str> = Vec::new();
    let mut pd = Vec::new();
    for rule in pa {
        let p = rule.principal.as_str();
        if !rule.applies(o, a) || !mp.iter().any(|m| m == p) || decided.contains(&p) {
            continue;
        }
        decided.push(p);
        let d = Decision::from_bool(rule.allow);
        if !pd.contains(&d) {
            pd.push(d);
        }
    }
    pd
}

/// `None` stands for "no decision".
pub fn resolve(pd: &[Decision], crs: &dyn ConflictResolution) -> Option<Decision> {
    crs.resolve(pd)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefaultStage {
    NoPrincipals,
    NoDecision,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefaultLevel {
    Subject,
    Object,
    System,
}

impl fmt::Display for DefaultLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefaultLevel::Subject => "subject default",
            DefaultLevel::Object => "object default",
            DefaultLevel::System => "system default",
        })
    }
}

/// First applicable default. The subject level only counts when no
/// principal matched.
pub fn apply_defaults(stage: DefaultStage, s: &str, o: &str, defaults: &Defaults) -> (Decision, DefaultLevel) {
    if stage == DefaultStage::NoPrincipals {
        if let Some(&d) = defaults.subjects.get(s) {
            return (d, DefaultLevel::Subject);
        }
    }
    if let Some(&d) = defaults.objects.get(o) {
        return (d, DefaultLevel::Object);
    }
    (defaults.system, DefaultLevel::System)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Resolution {
    /// Every possible decision agreed.
    Unanimous,
    Conflict { strategy: String },
    Default { stage: DefaultStage, level: DefaultLevel },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionTrace {
    pub request: Request,
    pub matched_principals: Vec<String>,
    /// `true` is allow.
    pub possible_decisions: Vec<bool>,
    pub resolution: Resolution,
    pub outcome: Decision,
    pub metrics: Vec<RuleMatch>,
}

impl DecisionTrace {
    pub fn possible(&self) -> Vec<Decision> {
        self.possible_decisions.iter().map(|&b| Decision::from_bool(b)).collect()
    }
}

impl fmt::Display for DecisionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.resolution {
            Resolution::Default { level, .. } => write!(f, "{} ({level})", self.outcome),
            _ => write!(f, "{}", self.outcome),
        }
    }
}

/// Evaluation front end bound to one path matcher.
#[derive(Clone)]
pub struct Pdp {
    matcher: Arc<dyn PathMatcher>,
}

impl Default for Pdp {
    fn default() -> Self {
        Pdp { matcher: Arc::new(BfsMatcher) }
    }
}

impl fmt::Debug for Pdp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pdp").field("matcher", &self.matcher.name()).finish()
    }
}

impl Pdp {
    pub fn new(matcher: Arc<dyn PathMatcher>) -> Self {
        Pdp { matcher }
    }

    pub fn matcher(&self) -> &dyn PathMatcher {
        self.matcher.as_ref()
    }

    pub fn evaluate(&self, g: &SystemGraph, sys: &AuthorizationSystem, q: &Request) -> Result<DecisionTrace> {
        self.evaluate_traced(g, sys, q, &mut NoTrace)
    }

    pub fn evaluate_traced(
        &self,
        g: &SystemGraph,
        sys: &AuthorizationSystem,
        q: &Request,
        trace: &mut dyn TraceSink,
    ) -> Result<DecisionTrace> {
        let m = match_principals(g, q, &sys.pm_policy, sys.pms.as_ref(), self.matcher.as_ref(), trace)?;
        let mut out = DecisionTrace {
            request: q.clone(),
            matched_principals: m.principals,
            possible_decisions: Vec::new(),
            resolution: Resolution::Unanimous,
            outcome: sys.defaults.system,
            metrics: m.evaluated,
        };
        let stage = if out.matched_principals.is_empty() {
            DefaultStage::NoPrincipals
        } else {
            let pd = possible_decisions(&out.matched_principals, &q.object, &q.action, &sys.auth_policy);
            out.possible_decisions = pd.iter().map(|d| d.is_allow()).collect();
            match resolve(&pd, sys.crs.as_ref()) {
                Some(d) => {
                    out.outcome = d;
                    if pd.len() > 1 {
                        out.resolution = Resolution::Conflict { strategy: sys.crs.name().to_string() };
                    }
                    return Ok(out);
                }
                None => DefaultStage::NoDecision,
            }
        };
        let (d, level) = apply_defaults(stage, &q.subject, &q.object, &sys.defaults);
        out.outcome = d;
        out.resolution = Resolution::Default { stage, level };
        Ok(out)
    }
}

/// [`Pdp::evaluate`] with the breadth-first matcher.
pub fn evaluate(g: &SystemGraph, sys: &AuthorizationSystem, q: &Request) -> Result<DecisionTrace> {
    Pdp::default().evaluate(g, sys, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, SystemModel};
    use crate::path::PathCondition;
    use crate::strategy::{AllMatchPms, AllowOverride, DenyOverride, FirstMatchCrs, FirstMatchPms};
    use Decision::{Allow, Deny};

    fn mp(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn per_principal_first_rule() {
        let pa = vec![
            AuthorizationRule::on("user", "report", "write", false),
            AuthorizationRule::any("user", "write", true),
            AuthorizationRule::any("super", "write", true),
        ];
        assert_eq!(possible_decisions(&mp(&["user"]), "report", "write", &pa), vec![Deny]);
        assert_eq!(possible_decisions(&mp(&["user"]), "other", "write", &pa), vec![Allow]);
        assert_eq!(possible_decisions(&mp(&["super", "user"]), "report", "write", &pa), vec![Deny, Allow]);
        assert_eq!(possible_decisions(&mp(&["user"]), "report", "read", &pa), vec![]);
        assert_eq!(possible_decisions(&[], "spec", "write", &pa), vec![]);
    }

    #[test]
    fn duplicates_collapse_in_order() {
        let pa = vec![
            AuthorizationRule::any("a", "x", true),
            AuthorizationRule::any("b", "x", false),
            AuthorizationRule::any("c", "x", true),
        ];
        assert_eq!(possible_decisions(&mp(&["c", "b", "a"]), "o", "x", &pa), vec![Allow, Deny]);
    }

    #[test]
    fn resolve_examples() {
        assert_eq!(resolve(&[Allow, Deny], &FirstMatchCrs), Some(Allow));
        assert_eq!(resolve(&[Allow, Deny], &DenyOverride), Some(Deny));
        assert_eq!(resolve(&[], &AllowOverride), None);
    }

    #[test]
    fn default_levels() {
        let mut d = Defaults::system(Deny);
        assert_eq!(apply_defaults(DefaultStage::NoPrincipals, "s", "o", &d), (Deny, DefaultLevel::System));
        d.subjects.insert("s".into(), Allow);
        assert_eq!(apply_defaults(DefaultStage::NoPrincipals, "s", "o", &d), (Allow, DefaultLevel::Subject));
        assert_eq!(apply_defaults(DefaultStage::NoDecision, "s", "o", &d), (Deny, DefaultLevel::System));
        d.objects.insert("o".into(), Allow);
        d.subjects.insert("s".into(), Deny);
        assert_eq!(apply_defaults(DefaultStage::NoDecision, "s", "o", &d), (Allow, DefaultLevel::Object));
    }

    fn tiny() -> (SystemGraph, AuthorizationSystem) {
        let model = SystemModel::new().with_type("T").with_label("own").permit("T", "T", "own");
        let g = SystemGraph::from_parts(
            model,
            ["alice", "bob", "doc"].map(|n| (n.to_string(), "T".to_string())),
            [Edge::new("alice", "doc", "own")],
        );
        let sys = AuthorizationSystem::new(
            vec![PrincipalMatchingRule::path(PathCondition::label("own"), "owner")],
            Arc::new(AllMatchPms),
            vec![AuthorizationRule::any("owner", "read", true)],
            Arc::new(FirstMatchCrs),
            Defaults::system(Deny),
        )
        .unwrap();
        (g, sys)
    }

    #[test]
    fn pipeline_stages() {
        let (g, sys) = tiny();
        let t = evaluate(&g, &sys, &Request::new("alice", "doc", "read")).unwrap();
        assert_eq!((t.outcome, &t.resolution), (Allow, &Resolution::Unanimous));
        assert_eq!(t.matched_principals, vec!["owner"]);

        let t = evaluate(&g, &sys, &Request::new("alice", "doc", "write")).unwrap();
        assert_eq!(
            t.resolution,
            Resolution::Default { stage: DefaultStage::NoDecision, level: DefaultLevel::System }
        );

        let t = evaluate(&g, &sys, &Request::new("bob", "doc", "read")).unwrap();
        assert_eq!(t.to_string(), "DENY (system default)");
        assert!(t.possible_decisions.is_empty());

        assert!(matches!(
            evaluate(&g, &sys, &Request::new("carol", "doc", "read")),
            Err(Error::UnknownEntity(_))
        ));
    }

    #[test]
    fn top_must_be_last() {
        let err = AuthorizationSystem::new(
            vec![PrincipalMatchingRule::top("world"), PrincipalMatchingRule::path(PathCondition::label("a"), "p")],
            Arc::new(FirstMatchPms),
            vec![],
            Arc::new(FirstMatchCrs),
            Defaults::system(Deny),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Invalid(v) if v == vec![Violation::TopNotLast { rule: 0 }]));
    }

    #[test]
    fn trace_round_trips() {
        let (g, sys) = tiny();
        let t = evaluate(&g, &sys, &Request::new("alice", "doc", "read")).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<DecisionTrace>(&text).unwrap(), t);
    }
}
