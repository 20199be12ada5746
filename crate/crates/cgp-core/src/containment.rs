//! Traditional containment between conditional graph patterns: when the
//! verdict is positive, every match of the first pattern over any data graph
//! appears among the second pattern's matches through a mapping from core
//! elements of the first to sets of core elements of the second.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Cgp, EdgeKey, FocusedQgp};
use crate::pom::{pom, pom_seeded};
use crate::relation::Relation;
use crate::simulation::{MatchResult, NodePayload};

/// Mapping from core nodes/edges of the contained pattern to non-empty sets
/// of core nodes/edges of the containing one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContainmentMapping {
    pub nodes: BTreeMap<String, BTreeSet<String>>,
    pub edges: BTreeMap<EdgeKey, BTreeSet<EdgeKey>>,
}

/// The relation over positive-version nodes that realizes a containment
/// mapping; strong containment consumes it.
pub type RealizingRelation = Relation;

/// Check `c1` contained in `c2`. On success returns the mapping and the
/// relation realizing it.
///
/// The relation starts from pattern-only matching of the positive versions.
/// A pair is dropped when the second node carries a negative predicate that
/// no negative predicate of the first node matches (checked by pattern-only
/// matching in the reverse direction, with the focus pair inside its
/// relation), or when it sends a core node to a predicate-only node. The
/// fixpoint is then re-run from the pruned relation and the mapping is read
/// off its core-to-core pairs; any core element of `c1` left without an
/// image makes the verdict negative.
pub fn t_contained(c1: &Cgp, c2: &Cgp) -> Option<(ContainmentMapping, RealizingRelation)> {
    let plus1 = c1.positive_version();
    let plus2 = c2.positive_version();
    let mut s = pom(&plus1, &plus2)?;

    // Negative predicates of c2 must be dominated by negative predicates of
    // c1 on every surviving pair. Pairs whose left node is a predicate node
    // carry no negatives and cannot dominate anything.
    let pairs: Vec<(String, String)> = s.pairs().map(|(a, b)| (a.clone(), b.clone())).collect();
    for (u1, u2) in &pairs {
        let mut ok = true;
        for p2 in c2.negatives_at(u2) {
            let dominated = c1.negatives_at(u1).any(|p1| {
                matches!(
                    pom(&p2.pattern, &p1.pattern),
                    Some(rel) if rel.contains(&p2.focus, &p1.focus)
                )
            });
            if !dominated {
                ok = false;
                break;
            }
        }
        if !ok {
            s.remove(u1, u2);
        }
    }

    // Core nodes of c1 may only map to core nodes of c2: matches of
    // predicate nodes are not part of a match result.
    let pairs: Vec<(String, String)> = s.pairs().map(|(a, b)| (a.clone(), b.clone())).collect();
    for (u1, u2) in &pairs {
        if c1.is_core_node(u1) && !c2.is_core_node(u2) {
            s.remove(u1, u2);
        }
    }

    let s = pom_seeded(&plus1, &plus2, &s).expect("pruned pairs stay compatible")?;

    let mut mapping = ContainmentMapping::default();
    for u1 in c1.core.nodes().keys() {
        let image: BTreeSet<String> = s
            .image(u1)
            .into_iter()
            .filter(|u2| c2.is_core_node(u2))
            .collect();
        if image.is_empty() {
            return None;
        }
        mapping.nodes.insert(u1.clone(), image);
    }
    for e1 in c1.core.edges().keys() {
        let image: BTreeSet<EdgeKey> = c2
            .core
            .edges()
            .keys()
            .filter(|e2| {
                e2.label == e1.label && s.contains(&e1.src, &e2.src) && s.contains(&e1.dst, &e2.dst)
            })
            .cloned()
            .collect();
        if image.is_empty() {
            return None;
        }
        mapping.edges.insert(e1.clone(), image);
    }
    Some((mapping, s))
}

/// Candidate sets read off another pattern's match result through a
/// containment mapping: per core node (edge) the intersection of the match
/// sets of its images. Node payloads are carried through.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Candidates {
    pub nodes: BTreeMap<String, BTreeMap<String, NodePayload>>,
    pub edges: BTreeMap<EdgeKey, BTreeSet<(String, String)>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CandidatesError {
    #[error("mapping/result mismatch: {element} not present in the match result")]
    Mismatch { element: String },
}

pub fn candidates(mapping: &ContainmentMapping, m2: &MatchResult) -> Result<Candidates, CandidatesError> {
    let mut out = Candidates::default();
    for (u, image) in &mapping.nodes {
        let mut iter = image.iter();
        let first = iter.next().expect("mapping images are non-empty");
        let mut acc = m2
            .node_matches
            .get(first)
            .ok_or_else(|| CandidatesError::Mismatch {
                element: first.clone(),
            })?
            .clone();
        for u2 in iter {
            let other = m2
                .node_matches
                .get(u2)
                .ok_or_else(|| CandidatesError::Mismatch { element: u2.clone() })?;
            acc.retain(|v, _| other.contains_key(v));
        }
        out.nodes.insert(u.clone(), acc);
    }
    for (e, image) in &mapping.edges {
        let mut iter = image.iter();
        let first = iter.next().expect("mapping images are non-empty");
        let mut acc = m2
            .edge_matches
            .get(first)
            .ok_or_else(|| CandidatesError::Mismatch {
                element: first.to_string(),
            })?
            .clone();
        for e2 in iter {
            let other = m2
                .edge_matches
                .get(e2)
                .ok_or_else(|| CandidatesError::Mismatch {
                    element: e2.to_string(),
                })?;
            acc.retain(|pair| other.contains(pair));
        }
        out.edges.insert(e.clone(), acc);
    }
    Ok(out)
}

/// Bidirectional containment.
pub fn equivalent_cgp(c1: &Cgp, c2: &Cgp) -> bool {
    t_contained(c1, c2).is_some() && t_contained(c2, c1).is_some()
}

/// Equivalence of two focused QGPs, ignoring the attribute constraints on
/// the two foci: containment must hold in both directions between the
/// stripped patterns with the focus pair inside both maximum relations.
pub fn focus_equivalent(q1: &FocusedQgp, q2: &FocusedQgp) -> bool {
    let strip = |q: &FocusedQgp| {
        let mut pattern = q.pattern.clone();
        if let Some(node) = pattern.node(&q.focus).cloned() {
            pattern.add_node(&q.focus, &node.label, Default::default());
        }
        Cgp::from_qgp(pattern)
    };
    let s1 = strip(q1);
    let s2 = strip(q2);
    let fwd = match t_contained(&s1, &s2) {
        Some((_, rel)) => rel.contains(&q1.focus, &q2.focus),
        None => false,
    };
    if !fwd {
        return false;
    }
    match t_contained(&s2, &s1) {
        Some((_, rel)) => rel.contains(&q2.focus, &q1.focus),
        None => false,
    }
}
