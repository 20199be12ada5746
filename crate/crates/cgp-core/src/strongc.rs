//! Strong containment: traditional containment plus evaluability of every
//! predicate of the contained pattern over the containing pattern's match
//! results.
//!
//! Evaluability is established through four relations extracted from the
//! realizing relation `S`:
//!
//! - refinement `R+` maps positive-predicate edges of the first pattern to
//!   core edges of the second, whose matches the view retains;
//! - elimination `E+` pairs connected sub-predicate fragments with core
//!   nodes of the second pattern carrying an equivalent predicate part, so
//!   the fragment is pre-satisfied by every candidate match;
//! - `R-` and `E-` play the same roles for negative predicates, except that
//!   a negative predicate must be refinable or eliminable as a whole:
//!   handling a conjunction piecewise would change its meaning.

use std::collections::{BTreeSet, VecDeque};

use crate::constraints::equivalent;
use crate::containment::{focus_equivalent, t_contained, ContainmentMapping, RealizingRelation};
use crate::model::{Cgp, EdgeKey, Qgp};
use crate::relation::Relation;

/// A connected fragment of one positive predicate, anchored at a `center`
/// node through which it attaches to the rest of the pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubPredicate {
    /// Index into the owning pattern's positive predicate list.
    pub parent: usize,
    /// The node the fragment is anchored at; the only node a non-fragment
    /// predicate edge may touch.
    pub center: String,
    pub nodes: BTreeSet<String>,
    pub edges: BTreeSet<EdgeKey>,
}

/// The refinement and elimination relations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RefElimRelations {
    pub r_plus: BTreeSet<(EdgeKey, EdgeKey)>,
    pub r_minus: BTreeSet<(EdgeKey, EdgeKey)>,
    pub e_plus: BTreeSet<(SubPredicate, String)>,
    /// Whole negative predicates (by index) eliminated over a core node.
    pub e_minus: BTreeSet<(usize, String)>,
}

impl RefElimRelations {
    /// Positive-predicate edges covered by refinement.
    pub fn refined_positive_edges(&self) -> BTreeSet<EdgeKey> {
        self.r_plus.iter().map(|(e1, _)| e1.clone()).collect()
    }

    /// Positive-predicate edges covered by some eliminated fragment.
    pub fn eliminated_positive_edges(&self) -> BTreeSet<EdgeKey> {
        self.e_plus
            .iter()
            .flat_map(|(frag, _)| frag.edges.iter().cloned())
            .collect()
    }

    pub fn refined_negative_edges(&self) -> BTreeSet<EdgeKey> {
        self.r_minus.iter().map(|(e1, _)| e1.clone()).collect()
    }
}

/// One-directional edge matching: endpoints match by label equality and
/// attribute implication, edge labels are equal, and the first counting
/// quantifier dominates the second.
pub fn edge_matches(c1: &Cgp, e1: &EdgeKey, c2: &Cgp, e2: &EdgeKey) -> bool {
    if e1.label != e2.label {
        return false;
    }
    let (Some(cq1), Some(cq2)) = (c1.edge_cq(e1), c2.edge_cq(e2)) else {
        return false;
    };
    if cq1 < cq2 {
        return false;
    }
    let ends = [(&e1.src, &e2.src), (&e1.dst, &e2.dst)];
    ends.iter().all(|(n1, n2)| {
        match (c1.node_view(n1), c2.node_view(n2)) {
            (Some(a), Some(b)) => {
                a.label == b.label && crate::constraints::implies(&a.constraint, &b.constraint)
            }
            _ => false,
        }
    })
}

/// Edge-level equivalence used by elimination: equal labels and quantifiers,
/// both endpoint pairs in `S`, and mutually implying endpoint constraints.
/// The fragment anchor pair is exempt from the attribute check; anchor
/// constraints are compared with the foci stripped, the way predicate
/// equivalence ignores focus attributes.
#[allow(clippy::too_many_arguments)]
fn edge_equiv(
    p1: &Qgp,
    e1: &EdgeKey,
    cq1: u32,
    p2: &Qgp,
    e2: &EdgeKey,
    cq2: u32,
    s: &Relation,
    anchor: (&str, &str),
) -> bool {
    if e1.label != e2.label || cq1 != cq2 {
        return false;
    }
    for (n1, n2) in [(&e1.src, &e2.src), (&e1.dst, &e2.dst)] {
        if !s.contains(n1, n2) {
            return false;
        }
        if (n1.as_str(), n2.as_str()) == anchor {
            continue;
        }
        match (p1.node(n1), p2.node(n2)) {
            (Some(a), Some(b)) => {
                if a.label != b.label || !equivalent(&a.constraint, &b.constraint) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Lockstep reachability: walk the two predicates in parallel from the
/// anchor pair, collecting every edge of `p1` that has an equivalent `p2`
/// counterpart along the way.
fn lockstep_cover(p1: &Qgp, u: &str, p2: &Qgp, w: &str, s: &Relation) -> BTreeSet<EdgeKey> {
    let mut pee: BTreeSet<EdgeKey> = BTreeSet::new();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    let mut queue: VecDeque<(String, String)> = VecDeque::new();
    seen.insert((u.to_string(), w.to_string()));
    queue.push_back((u.to_string(), w.to_string()));
    while let Some((x1, x2)) = queue.pop_front() {
        for (e2, cq2) in p2.out_edges(&x2) {
            for (e1, cq1) in p1.out_edges(&x1) {
                if edge_equiv(p1, e1, cq1, p2, e2, cq2, s, (u, w)) {
                    pee.insert(e1.clone());
                    let next = (e1.dst.clone(), e2.dst.clone());
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        for (e2, cq2) in p2.in_edges(&x2) {
            for (e1, cq1) in p1.in_edges(&x1) {
                if edge_equiv(p1, e1, cq1, p2, e2, cq2, s, (u, w)) {
                    pee.insert(e1.clone());
                    let next = (e1.src.clone(), e2.src.clone());
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    pee
}

/// Enforce the boundary condition: every predicate edge outside the fragment
/// either touches it only at the anchor or not at all. A non-anchor node
/// with an outside incident edge is removed together with its fragment
/// edges, cascading until stable.
fn boundary_refine(mut pee: BTreeSet<EdgeKey>, center: &str, all_pos: &BTreeSet<EdgeKey>) -> BTreeSet<EdgeKey> {
    loop {
        let mut touched: BTreeSet<&str> = BTreeSet::new();
        for e in &pee {
            if e.src != center {
                touched.insert(&e.src);
            }
            if e.dst != center {
                touched.insert(&e.dst);
            }
        }
        let spoiled: BTreeSet<String> = touched
            .into_iter()
            .filter(|x| all_pos.iter().any(|e| e.touches(x) && !pee.contains(e)))
            .map(str::to_string)
            .collect();
        if spoiled.is_empty() {
            return pee;
        }
        pee.retain(|e| !spoiled.iter().any(|x| e.touches(x)));
    }
}

/// The match sets a view retains for a core node are pruned by that node's
/// whole structural context, so a negative-predicate witness is only
/// guaranteed to be visible in the view when the counterpart node's context
/// is covered too: every core edge incident to it must be matched by a
/// paired predicate edge, and it must carry no predicates of its own (a
/// predicate also prunes the counterpart's matches, and nothing about the
/// witness implies it). The anchor pair is exempt: candidates are drawn
/// from the anchor counterpart's match set, so its context already holds.
/// Pairs violating the condition are removed until stable.
pub(crate) fn context_filter(
    c2: &Cgp,
    anchor: (&str, &str),
    mut pairs: BTreeSet<(EdgeKey, EdgeKey)>,
) -> BTreeSet<(EdgeKey, EdgeKey)> {
    let core2 = &c2.core;
    loop {
        let covered = |y1: &str, y2: &str, r: &BTreeSet<(EdgeKey, EdgeKey)>| -> bool {
            if (y1, y2) == anchor {
                return true;
            }
            if c2.positives_at(y2).next().is_some() || c2.negatives_at(y2).next().is_some() {
                return false;
            }
            let out_ok = core2
                .out_edges(y2)
                .all(|(g2, _)| r.iter().any(|(g1, h2)| h2 == g2 && g1.src == y1));
            let in_ok = core2
                .in_edges(y2)
                .all(|(g2, _)| r.iter().any(|(g1, h2)| h2 == g2 && g1.dst == y1));
            out_ok && in_ok
        };
        let keep: BTreeSet<(EdgeKey, EdgeKey)> = pairs
            .iter()
            .filter(|(e1, e2)| {
                covered(&e1.src, &e2.src, &pairs) && covered(&e1.dst, &e2.dst, &pairs)
            })
            .cloned()
            .collect();
        if keep.len() == pairs.len() {
            return keep;
        }
        pairs = keep;
    }
}

/// Extract the refinement and elimination relations from the realizing
/// relation of a traditional containment.
pub fn extract_rels(c1: &Cgp, c2: &Cgp, s: &RealizingRelation) -> RefElimRelations {
    let mut rels = RefElimRelations::default();

    // R+: positive-predicate edges of c1 whose endpoint pairs relate to the
    // endpoints of a label-equal core edge of c2.
    for e1 in c1.positive_edges() {
        for e2 in c2.core.edges().keys() {
            if e1.label == e2.label && s.contains(&e1.src, &e2.src) && s.contains(&e1.dst, &e2.dst) {
                rels.r_plus.insert((e1.clone(), e2.clone()));
            }
        }
    }

    // E+: per (c1 predicate, anchor node, c2 predicate) triple, the maximal
    // fragment that walks in lockstep with the counterpart predicate and
    // survives the boundary condition.
    let all_pos = c1.positive_edges();
    for (pi1, p1) in c1.positives().iter().enumerate() {
        for u in p1.pattern.nodes().keys() {
            for w in s.image(u) {
                for p2 in c2.positives() {
                    if p2.focus != w {
                        continue;
                    }
                    let pee = lockstep_cover(&p1.pattern, u, &p2.pattern, &w, s);
                    let pee = boundary_refine(pee, u, &all_pos);
                    if pee.is_empty() {
                        continue;
                    }
                    let mut nodes: BTreeSet<String> = BTreeSet::new();
                    nodes.insert(u.clone());
                    for e in &pee {
                        nodes.insert(e.src.clone());
                        nodes.insert(e.dst.clone());
                    }
                    rels.e_plus.insert((
                        SubPredicate {
                            parent: pi1,
                            center: u.clone(),
                            nodes,
                            edges: pee,
                        },
                        w.clone(),
                    ));
                }
            }
        }
    }

    // R-: pair propagation from the predicate focus. A pair (e, e') is
    // reached when e matches e' and the two edges hang off an already
    // reached node pair at the same end; this computes the aligned
    // undirected-path closure, which is then narrowed by the context
    // condition below.
    for p1 in c1.negatives() {
        for w in s.image(&p1.focus) {
            let mut local: BTreeSet<(EdgeKey, EdgeKey)> = BTreeSet::new();
            let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
            let mut queue: VecDeque<(String, String)> = VecDeque::new();
            seen.insert((p1.focus.clone(), w.clone()));
            queue.push_back((p1.focus.clone(), w.clone()));
            while let Some((x1, x2)) = queue.pop_front() {
                for (e, _) in p1.pattern.out_edges(&x1) {
                    for e2 in c2.core.edges().keys() {
                        if e2.src == x2 && edge_matches(c1, e, c2, e2) {
                            local.insert((e.clone(), e2.clone()));
                            let next = (e.dst.clone(), e2.dst.clone());
                            if seen.insert(next.clone()) {
                                queue.push_back(next);
                            }
                        }
                    }
                }
                for (e, _) in p1.pattern.in_edges(&x1) {
                    for e2 in c2.core.edges().keys() {
                        if e2.dst == x2 && edge_matches(c1, e, c2, e2) {
                            local.insert((e.clone(), e2.clone()));
                            let next = (e.src.clone(), e2.src.clone());
                            if seen.insert(next.clone()) {
                                queue.push_back(next);
                            }
                        }
                    }
                }
            }
            let filtered = context_filter(c2, (&p1.focus, &w), local);
            rels.r_minus.extend(filtered);
        }
    }

    // E-: whole-predicate equivalence only.
    for (pi1, p1) in c1.negatives().iter().enumerate() {
        for u2 in s.image(&p1.focus) {
            for p2 in c2.negatives() {
                if p2.focus == u2 && focus_equivalent(p1, p2) {
                    rels.e_minus.insert((pi1, u2.clone()));
                }
            }
        }
    }

    rels
}

/// How one predicate of the contained pattern is evaluable over the
/// containing pattern's match results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateStatus {
    /// Every edge is covered by refinement.
    Refined,
    /// The predicate (or all of its edges) is covered by elimination.
    Eliminated,
    /// Covered by a combination of refinement and elimination.
    Mixed,
    /// Not evaluable; the listed edges are uncovered.
    NotEvaluable { uncovered: Vec<EdgeKey> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Per-predicate evaluability breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluabilityReport {
    pub predicates: Vec<(Polarity, usize, String, PredicateStatus)>,
}

impl EvaluabilityReport {
    pub fn all_evaluable(&self) -> bool {
        self.predicates
            .iter()
            .all(|(_, _, _, st)| !matches!(st, PredicateStatus::NotEvaluable { .. }))
    }

    pub fn first_uncovered(&self) -> Option<(&str, &EdgeKey)> {
        self.predicates.iter().find_map(|(_, _, focus, st)| match st {
            PredicateStatus::NotEvaluable { uncovered } => {
                uncovered.first().map(|e| (focus.as_str(), e))
            }
            _ => None,
        })
    }
}

/// Result of a positive strong-containment check. The elimination relations
/// are used only to decide the verdict and are not part of the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SContainment {
    pub mapping: ContainmentMapping,
    pub r_plus: BTreeSet<(EdgeKey, EdgeKey)>,
    pub r_minus: BTreeSet<(EdgeKey, EdgeKey)>,
}

/// Full analysis: mapping, realizing relation, extracted relations, and the
/// per-predicate evaluability report. `None` when traditional containment
/// already fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScAnalysis {
    pub mapping: ContainmentMapping,
    pub realizing: RealizingRelation,
    pub rels: RefElimRelations,
    pub report: EvaluabilityReport,
}

impl ScAnalysis {
    pub fn holds(&self) -> bool {
        self.report.all_evaluable()
    }
}

pub fn sc_analysis(c1: &Cgp, c2: &Cgp) -> Option<ScAnalysis> {
    let (mapping, realizing) = t_contained(c1, c2)?;
    let rels = extract_rels(c1, c2, &realizing);

    let refined_pos = rels.refined_positive_edges();
    let eliminated_pos = rels.eliminated_positive_edges();
    let refined_neg = rels.refined_negative_edges();

    let mut predicates = Vec::new();
    for (i, p) in c1.positives().iter().enumerate() {
        let edges: Vec<&EdgeKey> = p.pattern.edges().keys().collect();
        let uncovered: Vec<EdgeKey> = edges
            .iter()
            .filter(|e| !refined_pos.contains(**e) && !eliminated_pos.contains(**e))
            .map(|e| (*e).clone())
            .collect();
        let status = if !uncovered.is_empty() {
            PredicateStatus::NotEvaluable { uncovered }
        } else if edges.iter().all(|e| refined_pos.contains(*e)) {
            PredicateStatus::Refined
        } else if edges.iter().all(|e| eliminated_pos.contains(*e)) {
            PredicateStatus::Eliminated
        } else {
            PredicateStatus::Mixed
        };
        predicates.push((Polarity::Positive, i, p.focus.clone(), status));
    }
    // A negative predicate counts as covered only when it is eliminated as a
    // whole over some image of its focus, or every one of its edges is
    // refinable.
    for (i, p) in c1.negatives().iter().enumerate() {
        let eliminated = mapping
            .nodes
            .get(&p.focus)
            .is_some_and(|image| image.iter().any(|u2| rels.e_minus.contains(&(i, u2.clone()))));
        let status = if eliminated {
            PredicateStatus::Eliminated
        } else {
            let uncovered: Vec<EdgeKey> = p
                .pattern
                .edges()
                .keys()
                .filter(|e| !refined_neg.contains(*e))
                .cloned()
                .collect();
            if uncovered.is_empty() {
                PredicateStatus::Refined
            } else {
                PredicateStatus::NotEvaluable { uncovered }
            }
        };
        predicates.push((Polarity::Negative, i, p.focus.clone(), status));
    }

    Some(ScAnalysis {
        mapping,
        realizing,
        rels,
        report: EvaluabilityReport { predicates },
    })
}

/// Strong containment check. On success returns the mapping together with
/// the refinement relations needed later for match extraction.
pub fn s_contained(c1: &Cgp, c2: &Cgp) -> Option<SContainment> {
    let analysis = sc_analysis(c1, c2)?;
    if !analysis.holds() {
        return None;
    }
    Some(SContainment {
        mapping: analysis.mapping,
        r_plus: analysis.rels.r_plus,
        r_minus: analysis.rels.r_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::fixtures;

    #[test]
    fn edge_matches_quantifier_direction() {
        let c1 = fixtures::basic_c1();
        let c2 = fixtures::basic_c2();
        let e1 = EdgeKey::new("b1", "c1", "published"); // CQ 2
        let e2 = EdgeKey::new("b2", "c2", "published"); // CQ 1
        assert!(edge_matches(&c1, &e1, &c1, &e1));
        assert!(edge_matches(&c1, &e1, &c2, &e2));
        assert!(!edge_matches(&c2, &e2, &c1, &e1));
        let sup = EdgeKey::new("a1", "b1", "supervised");
        assert!(!edge_matches(&c1, &sup, &c2, &e2));
    }

    #[test]
    fn identity_extraction_eliminates_whole_predicates() {
        for c in fixtures::all() {
            let (_, s) = t_contained(&c, &c).unwrap();
            let rels = extract_rels(&c, &c, &s);
            for (i, p) in c.positives().iter().enumerate() {
                let whole: BTreeSet<EdgeKey> = p.pattern.edges().keys().cloned().collect();
                assert!(
                    rels.e_plus
                        .iter()
                        .any(|(frag, w)| frag.parent == i && frag.edges == whole && *w == p.focus),
                    "whole positive predicate on {} not self-eliminable",
                    p.focus
                );
            }
            for (i, p) in c.negatives().iter().enumerate() {
                assert!(rels.e_minus.contains(&(i, p.focus.clone())));
            }
            assert!(s_contained(&c, &c).is_some(), "self strong containment");
        }
    }

    #[test]
    fn refinement_and_elimination_combine() {
        // One predicate edge reaches the counterpart's second PhD node, the
        // published branch eliminates against its predicate, everything else
        // refines over core edges.
        let c1 = fixtures::pred_c1();
        let c4 = fixtures::pred_c4();
        let (_, s) = t_contained(&c1, &c4).unwrap();
        let rels = extract_rels(&c1, &c4, &s);

        let expected_r_plus: BTreeSet<(EdgeKey, EdgeKey)> = [
            (
                EdgeKey::new("a1", "b1", "supervised"),
                EdgeKey::new("a4", "b4", "supervised"),
            ),
            (
                EdgeKey::new("a1", "b1", "supervised"),
                EdgeKey::new("a4", "d4", "supervised"),
            ),
            (
                EdgeKey::new("b1", "c1", "member"),
                EdgeKey::new("b4", "c4", "member"),
            ),
        ]
        .into();
        assert_eq!(rels.r_plus, expected_r_plus);

        assert_eq!(rels.e_plus.len(), 1);
        let (frag, w) = rels.e_plus.first().unwrap();
        assert_eq!(w, "d4");
        assert_eq!(frag.center, "b1");
        assert_eq!(frag.nodes, ["b1".to_string(), "d1".to_string()].into());
        assert_eq!(frag.edges, [EdgeKey::new("b1", "d1", "published")].into());

        assert!(rels.r_minus.is_empty());
        assert!(rels.e_minus.is_empty());
    }

    #[test]
    fn negative_refinement_over_core_edge() {
        let c8 = fixtures::pred_c8();
        let c10 = fixtures::pred_c10();
        let (_, s) = t_contained(&c8, &c10).unwrap();
        let rels = extract_rels(&c8, &c10, &s);
        assert_eq!(
            rels.r_minus,
            [(
                EdgeKey::new("b8", "d8", "published"),
                EdgeKey::new("b10", "c10", "published"),
            )]
            .into()
        );
        assert!(rels.e_plus.is_empty());
        assert!(rels.e_minus.is_empty());
    }

    #[test]
    fn split_predicate_fragments_are_rejected() {
        // Eliminating the two halves over separate counterpart predicates
        // would lose the connection between them, so nothing is extracted.
        let c1 = fixtures::pred_c1();
        let c5 = fixtures::pred_c5();
        let (_, s) = t_contained(&c1, &c5).unwrap();
        let rels = extract_rels(&c1, &c5, &s);
        assert!(rels.r_plus.is_empty());
        assert!(rels.r_minus.is_empty());
        assert!(rels.e_plus.is_empty());
        assert!(rels.e_minus.is_empty());
    }

    #[test]
    fn strong_containment_verdicts() {
        let verdicts = [
            (fixtures::pred_c1(), fixtures::pred_c2(), true),
            (fixtures::pred_c1(), fixtures::pred_c3(), true),
            (fixtures::pred_c1(), fixtures::pred_c4(), true),
            (fixtures::pred_c1(), fixtures::pred_c5(), false),
            (fixtures::pred_c7(), fixtures::pred_c6(), false),
            (fixtures::pred_c8(), fixtures::pred_c10(), true),
        ];
        for (c1, c2, expected) in verdicts {
            assert_eq!(
                s_contained(&c1, &c2).is_some(),
                expected,
                "wrong strong-containment verdict"
            );
            // Strong containment implies traditional containment with the
            // same mapping.
            if let Some(sc) = s_contained(&c1, &c2) {
                let (mapping, _) = t_contained(&c1, &c2).unwrap();
                assert_eq!(sc.mapping, mapping);
            }
        }
    }

    #[test]
    fn negative_refinement_requires_context_free_counterparts() {
        use crate::constraints::ConstraintConjunction;
        use crate::model::{FocusedQgp, Qgp};
        let none = ConstraintConjunction::none;

        // Containing pattern: a -r-> b with a second core in-edge c -s-> b.
        let mut core2 = Qgp::new();
        core2.add_node("a", "L1", none());
        core2.add_node("b", "L0", none());
        core2.add_node("c", "L2", none());
        core2.add_edge("a", "b", "r", 1);
        core2.add_edge("c", "b", "s", 1);
        let c2 = Cgp::from_qgp(core2.clone());

        // Contained pattern: same core plus a negative predicate mirroring
        // the a -r-> b edge. The mirror's target pairs with b, but b's
        // second in-edge is not covered, so the view cannot witness the
        // negative: not strongly contained.
        let mut neg = Qgp::new();
        neg.add_node("a", "L1", none());
        neg.add_node("n", "L0", none());
        neg.add_edge("a", "n", "r", 1);
        let c1 = Cgp::new(core2.clone(), vec![], vec![FocusedQgp::new(neg.clone(), "a")]);
        assert!(c1.validate().is_empty());
        assert!(t_contained(&c1, &c2).is_some());
        let analysis = sc_analysis(&c1, &c2).unwrap();
        assert!(analysis.rels.r_minus.is_empty());
        assert!(!analysis.holds());

        // Same shape, but the counterpart's context is the paired edge
        // alone: refinement goes through.
        let mut slim_core = Qgp::new();
        slim_core.add_node("a", "L1", none());
        slim_core.add_node("b", "L0", none());
        slim_core.add_edge("a", "b", "r", 1);
        let c2_slim = Cgp::from_qgp(slim_core.clone());
        let c1_slim = Cgp::new(slim_core.clone(), vec![], vec![FocusedQgp::new(neg.clone(), "a")]);
        assert!(s_contained(&c1_slim, &c2_slim).is_some());

        // A predicate on the counterpart also prunes its matches, which
        // blocks refinement the same way.
        let mut pred = Qgp::new();
        pred.add_node("b", "L0", none());
        pred.add_node("p", "L3", none());
        pred.add_edge("b", "p", "t", 1);
        let c2_pred = Cgp::new(slim_core.clone(), vec![FocusedQgp::new(pred.clone(), "b")], vec![]);
        let c1_pred = Cgp::new(
            slim_core,
            vec![FocusedQgp::new(pred, "b")],
            vec![FocusedQgp::new(neg, "a")],
        );
        assert!(t_contained(&c1_pred, &c2_pred).is_some());
        let analysis = sc_analysis(&c1_pred, &c2_pred).unwrap();
        assert!(analysis.rels.r_minus.is_empty());
        assert!(!analysis.holds());
    }

    #[test]
    fn split_negative_is_traditionally_but_not_strongly_contained() {
        let c7 = fixtures::pred_c7();
        let c6 = fixtures::pred_c6();
        assert!(t_contained(&c7, &c6).is_some());
        let analysis = sc_analysis(&c7, &c6).unwrap();
        assert!(!analysis.holds());
        assert!(analysis.report.first_uncovered().is_some());
    }
}
