//! Matching engines: graph simulation (child relationships only), QGP
//! simulation (child and parent relationships plus counting quantifiers),
//! query-focus evaluation, and full conditional simulation with predicates.
//!
//! Every engine computes the unique maximum match relation by fixpoint
//! removal from the label/attribute-compatible initial relation, so the
//! result does not depend on iteration order. Worklists are processed in
//! sorted node-id order for reproducible traces.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::constraints::{satisfies_lenient, AttributeAssignment};
use crate::model::{Cgp, DataGraph, EdgeKey, FocusedQgp, Qgp};
use crate::relation::Relation;

/// Maximum match relation from pattern nodes to data nodes.
pub type MatchRelation = Relation;

/// Label and attributes of a matched data node, carried inside match results
/// so that later extraction never needs the original graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NodePayload {
    pub label: String,
    pub attrs: AttributeAssignment,
}

/// The match result of a CGP: per core node the set of matching data nodes
/// (with payloads), per core edge the set of matching data edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchResult {
    pub node_matches: BTreeMap<String, BTreeMap<String, NodePayload>>,
    pub edge_matches: BTreeMap<EdgeKey, BTreeSet<(String, String)>>,
}

impl MatchResult {
    pub fn node_ids(&self, core_node: &str) -> BTreeSet<String> {
        self.node_matches
            .get(core_node)
            .map(|m| m.keys().cloned().collect())
            .unwrap_or_default()
    }

    pub fn edge_pairs(&self, core_edge: &EdgeKey) -> BTreeSet<(String, String)> {
        self.edge_matches.get(core_edge).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.node_matches.values().all(|m| m.is_empty())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimulationError {
    #[error("CQ unsupported in graph simulation: {edge}")]
    CqUnsupported { edge: EdgeKey },
}

/// Which structural conditions an engine enforces.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Children only, all CQs must be 1.
    ChildrenOnly,
    /// Children with CQs plus parents (dual form).
    Dual,
}

/// Shared fixpoint: start from `init` and remove pairs violating the edge
/// conditions until stable. Returns the maximum relation, or `None` when
/// some pattern node ends up unmatched.
fn prune_to_fixpoint(q: &Qgp, g: &DataGraph, mut rel: Relation, mode: Mode) -> Option<Relation> {
    // Pattern nodes adjacent to u, whose pairs must be rechecked when a pair
    // of u is removed.
    let mut neighbors: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for key in q.edges().keys() {
        neighbors.entry(&key.src).or_default().insert(&key.dst);
        neighbors.entry(&key.dst).or_default().insert(&key.src);
    }

    let mut queue: VecDeque<String> = q.nodes().keys().cloned().collect();
    let mut queued: BTreeSet<String> = queue.iter().cloned().collect();
    while let Some(u) = queue.pop_front() {
        queued.remove(&u);
        let candidates = rel.image(&u);
        let mut removed_any = false;
        for v in candidates {
            if pair_ok(q, g, &rel, &u, &v, mode) {
                continue;
            }
            rel.remove(&u, &v);
            removed_any = true;
        }
        if removed_any {
            for &n in neighbors.get(u.as_str()).into_iter().flatten() {
                if queued.insert(n.to_string()) {
                    queue.push_back(n.to_string());
                }
            }
            // Self-loops re-examine the node itself.
            if neighbors
                .get(u.as_str())
                .is_some_and(|ns| ns.contains(u.as_str()))
                && queued.insert(u.clone())
            {
                queue.push_back(u.clone());
            }
        }
    }

    if rel.covers(q.nodes().keys()) {
        Some(rel)
    } else {
        None
    }
}

fn pair_ok(q: &Qgp, g: &DataGraph, rel: &Relation, u: &str, v: &str, mode: Mode) -> bool {
    for (key, cq) in q.out_edges(u) {
        // Distinct matched children reached through the edge's label.
        let mut count: u32 = 0;
        for e in g.out_edges(v) {
            if e.label == key.label && rel.contains(&key.dst, &e.dst) {
                count += 1;
                if count >= cq {
                    break;
                }
            }
        }
        if count < cq {
            return false;
        }
    }
    if mode == Mode::Dual {
        for (key, _) in q.in_edges(u) {
            let ok = g
                .in_edges(v)
                .iter()
                .any(|e| e.label == key.label && rel.contains(&key.src, &e.src));
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Pairs allowed by label equality and attribute satisfaction.
fn compatible_pairs(q: &Qgp, g: &DataGraph) -> Relation {
    let mut rel = Relation::new();
    for (u, pn) in q.nodes() {
        for (v, dn) in g.nodes() {
            if pn.label == dn.label && satisfies_lenient(&dn.attrs, &pn.constraint) {
                rel.insert(u, v);
            }
        }
    }
    rel
}

/// Graph simulation: preserves child relationships only. All CQs must be 1.
pub fn graph_sim(p: &Qgp, g: &DataGraph) -> Result<Option<MatchRelation>, SimulationError> {
    for (key, cq) in p.edges() {
        if *cq != 1 {
            return Err(SimulationError::CqUnsupported { edge: key.clone() });
        }
    }
    Ok(prune_to_fixpoint(p, g, compatible_pairs(p, g), Mode::ChildrenOnly))
}

/// QGP simulation: dual simulation extended with counting quantifiers on
/// child edges. Parent edges require one matching parent regardless of CQ.
pub fn qgp_sim(q: &Qgp, g: &DataGraph) -> Option<MatchRelation> {
    prune_to_fixpoint(q, g, compatible_pairs(q, g), Mode::Dual)
}

/// Matches of the query focus; empty when the pattern has no match at all.
pub fn qgp_eval(q: &FocusedQgp, g: &DataGraph) -> BTreeSet<String> {
    match qgp_sim(&q.pattern, g) {
        Some(rel) => rel.image(&q.focus),
        None => BTreeSet::new(),
    }
}

/// Conditional simulation: QGP simulation over the core where a core pair
/// `(u, v)` additionally requires `v` to be in the evaluation of every
/// positive predicate on `u` and outside the evaluation of every negative
/// predicate on `u`. Each predicate is evaluated once over the whole graph;
/// focus membership is equivalent to the existence of a matching subgraph
/// because the maximum relation of a subgraph embeds into the graph's.
pub fn cond_sim(c: &Cgp, g: &DataGraph) -> Option<(MatchRelation, MatchResult)> {
    let mut init = compatible_pairs(&c.core, g);
    for p in c.positives() {
        let allowed = qgp_eval(p, g);
        for v in init.image(&p.focus) {
            if !allowed.contains(&v) {
                init.remove(&p.focus, &v);
            }
        }
    }
    for p in c.negatives() {
        let forbidden = qgp_eval(p, g);
        for v in init.image(&p.focus) {
            if forbidden.contains(&v) {
                init.remove(&p.focus, &v);
            }
        }
    }
    let rel = prune_to_fixpoint(&c.core, g, init, Mode::Dual)?;
    let result = derive_match_result(&c.core, g, &rel);
    Some((rel, result))
}

/// Project a relation to the per-node / per-edge match result. Only core
/// elements appear; matched nodes carry their label and attributes.
pub fn derive_match_result(core: &Qgp, g: &DataGraph, rel: &MatchRelation) -> MatchResult {
    let mut result = MatchResult::default();
    for u in core.nodes().keys() {
        let mut matches = BTreeMap::new();
        for v in rel.image(u) {
            if let Some(dn) = g.node(&v) {
                matches.insert(
                    v.clone(),
                    NodePayload {
                        label: dn.label.clone(),
                        attrs: dn.attrs.clone(),
                    },
                );
            }
        }
        result.node_matches.insert(u.clone(), matches);
    }
    for key in core.edges().keys() {
        let mut matches = BTreeSet::new();
        for v in rel.image(&key.src) {
            for e in g.out_edges(&v) {
                if e.label == key.label && rel.contains(&key.dst, &e.dst) {
                    matches.insert((e.src.clone(), e.dst.clone()));
                }
            }
        }
        result.edge_matches.insert(key.clone(), matches);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::{Atom, CmpOp, ConstraintConjunction, Value};
    use crate::model::FocusedQgp;

    fn none() -> ConstraintConjunction {
        ConstraintConjunction::none()
    }

    fn ge(attr: &str, v: i64) -> ConstraintConjunction {
        ConstraintConjunction(vec![Atom {
            attr: attr.to_string(),
            op: CmpOp::Ge,
            value: Value::Int(v),
        }])
    }

    #[test]
    fn graph_sim_single_node_matches_all_with_label() {
        let mut p = Qgp::new();
        p.add_node("u", "X", none());
        let mut g = DataGraph::new();
        g.add_node("v1", "X", AttributeAssignment::new());
        g.add_node("v2", "X", AttributeAssignment::new());
        g.add_node("w", "Y", AttributeAssignment::new());
        let rel = graph_sim(&p, &g).unwrap().unwrap();
        assert_eq!(rel.image("u"), ["v1", "v2"].map(String::from).into());
    }

    #[test]
    fn graph_sim_missing_child_empties() {
        let mut p = Qgp::new();
        p.add_node("a", "A", none());
        p.add_node("b", "B", none());
        p.add_edge("a", "b", "r", 1);
        let mut g = DataGraph::new();
        g.add_node("x", "A", AttributeAssignment::new());
        assert_eq!(graph_sim(&p, &g).unwrap(), None);
    }

    #[test]
    fn graph_sim_two_cycle_on_four_cycle() {
        let mut p = Qgp::new();
        p.add_node("a", "A", none());
        p.add_node("b", "B", none());
        p.add_edge("a", "b", "r", 1);
        p.add_edge("b", "a", "r", 1);
        let mut g = DataGraph::new();
        for (id, label) in [("a1", "A"), ("b1", "B"), ("a2", "A"), ("b2", "B")] {
            g.add_node(id, label, AttributeAssignment::new());
        }
        g.add_edge("a1", "b1", "r");
        g.add_edge("b1", "a2", "r");
        g.add_edge("a2", "b2", "r");
        g.add_edge("b2", "a1", "r");
        let rel = graph_sim(&p, &g).unwrap().unwrap();
        assert_eq!(rel.image("a"), ["a1", "a2"].map(String::from).into());
        assert_eq!(rel.image("b"), ["b1", "b2"].map(String::from).into());
    }

    #[test]
    fn graph_sim_rejects_cq_above_one() {
        let mut p = Qgp::new();
        p.add_node("a", "A", none());
        p.add_node("b", "B", none());
        p.add_edge("a", "b", "r", 2);
        let g = DataGraph::new();
        assert!(graph_sim(&p, &g).is_err());
    }

    fn supervision_pattern() -> Qgp {
        let mut q = Qgp::new();
        q.add_node("pr", "Pr", none());
        q.add_node("phd", "PhD", none());
        q.add_edge("pr", "phd", "supervised", 2);
        q
    }

    #[test]
    fn qgp_sim_on_exact_copy_is_full() {
        let q = supervision_pattern();
        let mut g = DataGraph::new();
        g.add_node("p", "Pr", AttributeAssignment::new());
        g.add_node("s1", "PhD", AttributeAssignment::new());
        g.add_node("s2", "PhD", AttributeAssignment::new());
        g.add_edge("p", "s1", "supervised");
        g.add_edge("p", "s2", "supervised");
        let rel = qgp_sim(&q, &g).unwrap();
        assert_eq!(rel.image("pr"), ["p"].map(String::from).into());
        assert_eq!(rel.image("phd"), ["s1", "s2"].map(String::from).into());
    }

    #[test]
    fn qgp_sim_cq_unmet_is_empty() {
        let q = supervision_pattern();
        let mut g = DataGraph::new();
        g.add_node("p", "Pr", AttributeAssignment::new());
        g.add_node("s1", "PhD", AttributeAssignment::new());
        g.add_edge("p", "s1", "supervised");
        assert_eq!(qgp_sim(&q, &g), None);
    }

    fn two_prof_graph() -> DataGraph {
        let mut g = DataGraph::new();
        g.add_node("p1", "Pr", AttributeAssignment::new());
        g.add_node("p2", "Pr", AttributeAssignment::new());
        g.add_node("s1", "PhD", AttributeAssignment::new());
        g.add_node("s2", "PhD", AttributeAssignment::new());
        g.add_edge("p1", "s1", "supervised");
        g.add_edge("p1", "s2", "supervised");
        g.add_edge("p2", "s1", "supervised");
        g
    }

    #[test]
    fn qgp_sim_drops_professor_short_of_quota() {
        let rel = qgp_sim(&supervision_pattern(), &two_prof_graph()).unwrap();
        assert_eq!(rel.image("pr"), ["p1"].map(String::from).into());
        assert_eq!(rel.image("phd"), ["s1", "s2"].map(String::from).into());
    }

    #[test]
    fn qgp_eval_returns_focus_matches() {
        let q = FocusedQgp::new(supervision_pattern(), "pr");
        assert_eq!(qgp_eval(&q, &two_prof_graph()), ["p1"].map(String::from).into());

        let single = {
            let mut q = Qgp::new();
            q.add_node("u", "PhD", none());
            FocusedQgp::new(q, "u")
        };
        assert_eq!(
            qgp_eval(&single, &two_prof_graph()),
            ["s1", "s2"].map(String::from).into()
        );

        let unmatched = {
            let mut q = Qgp::new();
            q.add_node("u", "Robot", none());
            FocusedQgp::new(q, "u")
        };
        assert!(qgp_eval(&unmatched, &two_prof_graph()).is_empty());
    }

    #[test]
    fn graph_sim_relation_contains_qgp_sim_relation() {
        // Dropping the parent condition only adds pairs.
        let mut q = Qgp::new();
        q.add_node("a", "A", none());
        q.add_node("b", "B", none());
        q.add_edge("a", "b", "r", 1);
        let mut g = DataGraph::new();
        g.add_node("x", "A", AttributeAssignment::new());
        g.add_node("y", "B", AttributeAssignment::new());
        g.add_node("y2", "B", AttributeAssignment::new());
        g.add_edge("x", "y", "r");
        let gs = graph_sim(&q, &g).unwrap().unwrap();
        let ds = qgp_sim(&q, &g).unwrap();
        assert!(ds.is_subset_of(&gs));
        // y2 has no parent: kept by graph simulation, dropped by the dual form.
        assert!(gs.contains("b", "y2"));
        assert!(!ds.contains("b", "y2"));
    }

    /// Core Pr{age>=45} ->supervised[2] PhD, positive predicate
    /// PhD ->published[2] Article.
    fn conditional_pattern() -> Cgp {
        let mut core = Qgp::new();
        core.add_node("a", "Pr", ge("age", 45));
        core.add_node("b", "PhD", none());
        core.add_edge("a", "b", "supervised", 2);
        let mut pred = Qgp::new();
        pred.add_node("b", "PhD", none());
        pred.add_node("c", "Article", none());
        pred.add_edge("b", "c", "published", 2);
        Cgp::new(core, vec![FocusedQgp::new(pred, "b")], vec![])
    }

    fn publication_graph(articles_for_s2: usize) -> DataGraph {
        let mut g = DataGraph::new();
        g.add_node("p", "Pr", AttributeAssignment::new().set("age", Value::Int(50)));
        g.add_node("s1", "PhD", AttributeAssignment::new());
        g.add_node("s2", "PhD", AttributeAssignment::new());
        g.add_edge("p", "s1", "supervised");
        g.add_edge("p", "s2", "supervised");
        for i in 0..2 {
            let id = format!("a1{i}");
            g.add_node(&id, "Article", AttributeAssignment::new());
            g.add_edge("s1", &id, "published");
        }
        for i in 0..articles_for_s2 {
            let id = format!("a2{i}");
            g.add_node(&id, "Article", AttributeAssignment::new());
            g.add_edge("s2", &id, "published");
        }
        g
    }

    #[test]
    fn cond_sim_keeps_students_meeting_the_predicate() {
        let c = conditional_pattern();
        let (rel, result) = cond_sim(&c, &publication_graph(2)).unwrap();
        assert_eq!(rel.image("a"), ["p"].map(String::from).into());
        assert_eq!(rel.image("b"), ["s1", "s2"].map(String::from).into());
        // Articles are predicate-only: never part of the match result.
        assert!(result.node_matches.keys().all(|k| k == "a" || k == "b"));
        assert_eq!(
            result.edge_pairs(&EdgeKey::new("a", "b", "supervised")).len(),
            2
        );
    }

    #[test]
    fn cond_sim_collapses_when_predicate_fails() {
        // s2 has a single article, so it fails the predicate; p then has only
        // one surviving child and the whole result is empty.
        let c = conditional_pattern();
        assert_eq!(cond_sim(&c, &publication_graph(1)), None);
    }

    #[test]
    fn cond_sim_predicate_free_equals_qgp_sim() {
        let q = supervision_pattern();
        let g = two_prof_graph();
        let (rel, _) = cond_sim(&Cgp::from_qgp(q.clone()), &g).unwrap();
        assert_eq!(rel, qgp_sim(&q, &g).unwrap());
    }

    #[test]
    fn fixpoint_only_removes_pairs() {
        let q = supervision_pattern();
        let g = two_prof_graph();
        let init = compatible_pairs(&q, &g);
        let rel = qgp_sim(&q, &g).unwrap();
        assert!(rel.is_subset_of(&init));
    }
}
