//! Containment-based matching: compute one pattern's match result purely
//! from another pattern's match result, given a positive strong-containment
//! verdict. The original data graph is never consulted; everything needed is
//! materialized from the view's node payloads and matched edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::constraints::satisfies_lenient;
use crate::containment::ContainmentMapping;
use crate::model::{Cgp, DataGraph, EdgeKey};
use crate::simulation::{qgp_eval, MatchResult, NodePayload};
use crate::strongc::{sc_analysis, PredicateStatus, Polarity, ScAnalysis};

/// Union materialization of a match result: every matched data node with its
/// payload, every matched data edge, and for each the core elements it
/// matched (provenance).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViewGraph {
    nodes: BTreeMap<String, NodePayload>,
    edges: BTreeSet<EdgeKey>,
    node_provenance: BTreeMap<String, BTreeSet<String>>,
    edge_provenance: BTreeMap<EdgeKey, BTreeSet<EdgeKey>>,
}

impl ViewGraph {
    pub fn nodes(&self) -> &BTreeMap<String, NodePayload> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<EdgeKey> {
        &self.edges
    }

    pub fn node_provenance(&self, id: &str) -> BTreeSet<String> {
        self.node_provenance.get(id).cloned().unwrap_or_default()
    }

    pub fn edge_provenance(&self, key: &EdgeKey) -> BTreeSet<EdgeKey> {
        self.edge_provenance.get(key).cloned().unwrap_or_default()
    }

    /// The view as an ordinary data graph, for running predicate queries
    /// over it.
    pub fn as_data_graph(&self) -> DataGraph {
        let mut g = DataGraph::new();
        for (id, payload) in &self.nodes {
            g.add_node(id, &payload.label, payload.attrs.clone());
        }
        for e in &self.edges {
            g.add_edge(&e.src, &e.dst, &e.label);
        }
        g
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScMatchError {
    #[error("corrupt match result: {reason}")]
    CorruptMatchResult { reason: String },
    #[error("inconsistent inputs: {reason}")]
    InconsistentInputs { reason: String },
}

/// Materialize a match result into a view graph, checking its internal
/// consistency: one payload per data node, and every matched edge's
/// endpoints present in the match sets of the edge's endpoint nodes.
pub fn build_view_graph(m2: &MatchResult) -> Result<ViewGraph, ScMatchError> {
    let mut view = ViewGraph::default();
    for (core_node, matches) in &m2.node_matches {
        for (v, payload) in matches {
            match view.nodes.get(v) {
                Some(existing) if existing != payload => {
                    return Err(ScMatchError::CorruptMatchResult {
                        reason: format!("node {v} appears with two different payloads"),
                    });
                }
                _ => {
                    view.nodes.insert(v.clone(), payload.clone());
                }
            }
            view.node_provenance
                .entry(v.clone())
                .or_default()
                .insert(core_node.clone());
        }
    }
    for (core_edge, pairs) in &m2.edge_matches {
        for (v, w) in pairs {
            let in_src = m2
                .node_matches
                .get(&core_edge.src)
                .is_some_and(|m| m.contains_key(v));
            let in_dst = m2
                .node_matches
                .get(&core_edge.dst)
                .is_some_and(|m| m.contains_key(w));
            if !in_src || !in_dst {
                return Err(ScMatchError::CorruptMatchResult {
                    reason: format!("edge match ({v}, {w}) of {core_edge} has an endpoint missing from the node matches"),
                });
            }
            let key = EdgeKey::new(v, w, &core_edge.label);
            view.edges.insert(key.clone());
            view.edge_provenance
                .entry(key)
                .or_default()
                .insert(core_edge.clone());
        }
    }
    Ok(view)
}

/// Extract the match result of `c1` from `m2`, a match result of `c2`, given
/// the outputs of a strong-containment check of `c1` in `c2`.
///
/// Candidate sets start from the intersections prescribed by the mapping
/// (and, for predicate nodes on refinable edges, by the refinement images)
/// and are only ever narrowed: by attribute constraints, by counting
/// quantifiers and parent conditions over the view's matched edges, and by
/// refinable negative predicates evaluated over the view. Eliminated
/// predicate parts are skipped; their guarantees enter through the match
/// sets of their counterpart core nodes. Returns `None` when some core
/// element ends up without matches, meaning `c1` has no match in the
/// original graph.
pub fn sc_match(
    c1: &Cgp,
    c2: &Cgp,
    mapping: &ContainmentMapping,
    r_plus: &BTreeSet<(EdgeKey, EdgeKey)>,
    r_minus: &BTreeSet<(EdgeKey, EdgeKey)>,
    m2: &MatchResult,
) -> Result<Option<MatchResult>, ScMatchError> {
    let analysis = validate_inputs(c1, c2, mapping, r_plus, r_minus, m2)?;
    let view = build_view_graph(m2)?;

    let refined: BTreeSet<EdgeKey> = r_plus.iter().map(|(e1, _)| e1.clone()).collect();
    // Pattern edges enforced over the view: all core edges plus refinable
    // predicate edges. Eliminated predicate edges never appear here.
    let mut active_edges: Vec<EdgeKey> = c1.core.edges().keys().cloned().collect();
    active_edges.extend(refined.iter().cloned());

    // Match-edge candidates per active pattern edge: the union of the match
    // sets of its images.
    let mut allowed: BTreeMap<EdgeKey, BTreeSet<(String, String)>> = BTreeMap::new();
    for e1 in &active_edges {
        let mut pairs = BTreeSet::new();
        if let Some(images) = analysis.mapping.edges.get(e1) {
            for e2 in images {
                pairs.extend(m2.edge_pairs(e2));
            }
        }
        for (f1, e2) in r_plus {
            if f1 == e1 {
                pairs.extend(m2.edge_pairs(e2));
            }
        }
        allowed.insert(e1.clone(), pairs);
    }

    // Candidate sets. Core nodes intersect over the mapping images;
    // endpoints of refinable edges additionally intersect the endpoint
    // projections of every refinement image; anchors of eliminated fragments
    // intersect the fragment counterpart's matches.
    let mut cands: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (u, image) in &analysis.mapping.nodes {
        let mut sets = image.iter().map(|u2| m2.node_ids(u2));
        let mut acc = sets.next().expect("mapping images are non-empty");
        for s in sets {
            acc.retain(|v| s.contains(v));
        }
        cands.insert(u.clone(), acc);
    }
    for (e1, e2) in r_plus {
        for (node, proj) in [(&e1.src, m2.node_ids(&e2.src)), (&e1.dst, m2.node_ids(&e2.dst))] {
            match cands.get_mut(node) {
                Some(set) => set.retain(|v| proj.contains(v)),
                None => {
                    cands.insert(node.clone(), proj);
                }
            }
        }
    }
    for (frag, w) in &analysis.rels.e_plus {
        if let Some(set) = cands.get_mut(&frag.center) {
            let counterpart = m2.node_ids(w);
            set.retain(|v| counterpart.contains(v));
        }
    }

    // Attribute constraints apply to every candidate set, using the payloads
    // carried by the view.
    for (x, set) in cands.iter_mut() {
        let constraint = match c1.node_view(x) {
            Some(n) => n.constraint.clone(),
            None => continue,
        };
        set.retain(|v| {
            view.nodes
                .get(v)
                .is_some_and(|p| satisfies_lenient(&p.attrs, &constraint))
        });
    }

    // Refinable negative predicates: a candidate anchoring a realization of
    // the predicate inside the view is discarded. Eliminated negatives are
    // already reflected in the counterpart's match sets. The view is fixed,
    // so one evaluation per predicate suffices.
    let view_graph = view.as_data_graph();
    for (polarity, idx, _, status) in &analysis.report.predicates {
        if *polarity != Polarity::Negative {
            continue;
        }
        let p = &c1.negatives()[*idx];
        match status {
            PredicateStatus::Eliminated => continue,
            PredicateStatus::NotEvaluable { .. } => unreachable!("verdict was checked"),
            _ => {
                let forbidden = qgp_eval(p, &view_graph);
                if let Some(set) = cands.get_mut(&p.focus) {
                    set.retain(|v| !forbidden.contains(v));
                }
            }
        }
    }

    // Structural fixpoint over the active edges.
    let mut adjacency: BTreeMap<&str, Vec<&EdgeKey>> = BTreeMap::new();
    for e in &active_edges {
        adjacency.entry(&e.src).or_default().push(e);
        adjacency.entry(&e.dst).or_default().push(e);
    }
    let mut queue: VecDeque<String> = cands.keys().cloned().collect();
    let mut queued: BTreeSet<String> = queue.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        queued.remove(&x);
        let Some(current) = cands.get(&x).cloned() else {
            continue;
        };
        let mut removed = false;
        for v in &current {
            if node_candidate_ok(c1, &x, v, &cands, &allowed, &adjacency) {
                continue;
            }
            cands.get_mut(&x).expect("present").remove(v);
            removed = true;
        }
        if removed {
            for e in adjacency.get(x.as_str()).into_iter().flatten() {
                for n in [&e.src, &e.dst] {
                    if *n != x && cands.contains_key(n) && queued.insert(n.clone()) {
                        queue.push_back(n.clone());
                    }
                }
            }
            if adjacency
                .get(x.as_str())
                .is_some_and(|es| es.iter().any(|e| e.src == e.dst))
                && queued.insert(x.clone())
            {
                queue.push_back(x.clone());
            }
        }
    }

    for u in c1.core.nodes().keys() {
        if cands.get(u).is_none_or(BTreeSet::is_empty) {
            return Ok(None);
        }
    }

    let mut result = MatchResult::default();
    for u in c1.core.nodes().keys() {
        let mut matches = BTreeMap::new();
        for v in &cands[u] {
            matches.insert(v.clone(), view.nodes[v.as_str()].clone());
        }
        result.node_matches.insert(u.clone(), matches);
    }
    for e1 in c1.core.edges().keys() {
        let pairs: BTreeSet<(String, String)> = allowed[e1]
            .iter()
            .filter(|(v, w)| cands[&e1.src].contains(v) && cands[&e1.dst].contains(w))
            .cloned()
            .collect();
        if pairs.is_empty() {
            return Ok(None);
        }
        result.edge_matches.insert(e1.clone(), pairs);
    }
    Ok(Some(result))
}

fn node_candidate_ok(
    c1: &Cgp,
    x: &str,
    v: &str,
    cands: &BTreeMap<String, BTreeSet<String>>,
    allowed: &BTreeMap<EdgeKey, BTreeSet<(String, String)>>,
    adjacency: &BTreeMap<&str, Vec<&EdgeKey>>,
) -> bool {
    for e in adjacency.get(x).into_iter().flatten() {
        if e.src == x {
            let need = c1.edge_cq(e).unwrap_or(1);
            let targets = cands.get(&e.dst);
            let mut count = 0;
            for (a, b) in &allowed[*e] {
                if a == v && targets.is_some_and(|t| t.contains(b)) {
                    count += 1;
                    if count >= need {
                        break;
                    }
                }
            }
            if count < need {
                return false;
            }
        }
        if e.dst == x {
            let sources = cands.get(&e.src);
            let ok = allowed[*e]
                .iter()
                .any(|(a, b)| b == v && sources.is_some_and(|s| s.contains(a)));
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Recompute the strong-containment analysis and require the caller's inputs
/// to agree with it; also require the match result to be keyed exactly by
/// the containing pattern's core.
fn validate_inputs(
    c1: &Cgp,
    c2: &Cgp,
    mapping: &ContainmentMapping,
    r_plus: &BTreeSet<(EdgeKey, EdgeKey)>,
    r_minus: &BTreeSet<(EdgeKey, EdgeKey)>,
    m2: &MatchResult,
) -> Result<ScAnalysis, ScMatchError> {
    let analysis = sc_analysis(c1, c2).ok_or_else(|| ScMatchError::InconsistentInputs {
        reason: "patterns are not contained".to_string(),
    })?;
    if !analysis.holds() {
        return Err(ScMatchError::InconsistentInputs {
            reason: "patterns are not strongly contained".to_string(),
        });
    }
    if analysis.mapping != *mapping {
        return Err(ScMatchError::InconsistentInputs {
            reason: "mapping does not belong to these patterns".to_string(),
        });
    }
    if analysis.rels.r_plus != *r_plus || analysis.rels.r_minus != *r_minus {
        return Err(ScMatchError::InconsistentInputs {
            reason: "refinement relations do not belong to these patterns".to_string(),
        });
    }
    let node_keys: BTreeSet<&String> = m2.node_matches.keys().collect();
    let expected_nodes: BTreeSet<&String> = c2.core.nodes().keys().collect();
    let edge_keys: BTreeSet<&EdgeKey> = m2.edge_matches.keys().collect();
    let expected_edges: BTreeSet<&EdgeKey> = c2.core.edges().keys().collect();
    if node_keys != expected_nodes || edge_keys != expected_edges {
        return Err(ScMatchError::InconsistentInputs {
            reason: "match result keys do not describe the containing pattern's core".to_string(),
        });
    }
    Ok(analysis)
}
