//! Exhaustive oracles: maximum match relations found by searching over
//! subsets of the compatibility relation, and the refinement/elimination
//! relations found by literal enumeration (path pairs and edge subsets)
//! rather than fixpoints. Exponential by nature, so instances are bounded.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::constraints::{implies, satisfies_lenient};
use crate::model::{Cgp, DataGraph, EdgeKey, Qgp};
use crate::pom::PatternMatchRelation;
use crate::relation::Relation;
use crate::simulation::MatchRelation;
use crate::strongc::{RefElimRelations, SubPredicate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for oracle: {what} = {size} exceeds {max}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },
}

const MAX_COMPAT_PAIRS: usize = 18;
const MAX_PRED_EDGES: usize = 8;

fn check_compat_bound(pairs: usize) -> Result<(), OracleError> {
    if pairs > MAX_COMPAT_PAIRS {
        return Err(OracleError::TooLarge {
            what: "compatibility pairs",
            size: pairs,
            max: MAX_COMPAT_PAIRS,
        });
    }
    Ok(())
}

/// Union of all subsets of `pairs` on which `valid` holds. Equals the
/// unique maximum relation when one exists.
fn union_of_valid(
    pairs: &[(String, String)],
    valid: impl Fn(&Relation) -> bool,
) -> Option<Relation> {
    let n = pairs.len();
    let mut union: Option<Relation> = None;
    for mask in 0u32..(1u32 << n) {
        let rel: Relation = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| pairs[i].clone())
            .collect();
        if valid(&rel) {
            let u = union.get_or_insert_with(Relation::new);
            for (l, r) in rel.pairs() {
                u.insert(l, r);
            }
        }
    }
    union
}

fn sim_compatible_pairs(q: &Qgp, g: &DataGraph) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (u, pn) in q.nodes() {
        for (v, dn) in g.nodes() {
            if pn.label == dn.label && satisfies_lenient(&dn.attrs, &pn.constraint) {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

fn children_ok(q: &Qgp, g: &DataGraph, rel: &Relation) -> bool {
    rel.pairs().all(|(u, v)| {
        q.out_edges(u).all(|(key, cq)| {
            let count = g
                .out_edges(v)
                .iter()
                .filter(|e| e.label == key.label && rel.contains(&key.dst, &e.dst))
                .count();
            count as u32 >= cq
        })
    })
}

fn parents_ok(q: &Qgp, g: &DataGraph, rel: &Relation) -> bool {
    rel.pairs().all(|(u, v)| {
        q.in_edges(u).all(|(key, _)| {
            g.in_edges(v)
                .iter()
                .any(|e| e.label == key.label && rel.contains(&key.src, &e.src))
        })
    })
}

fn covers_pattern(q: &Qgp, rel: &Relation) -> bool {
    rel.covers(q.nodes().keys())
}

/// Exhaustive graph simulation (children only, CQs all 1).
pub fn brute_graph_sim(q: &Qgp, g: &DataGraph) -> Result<Option<MatchRelation>, OracleError> {
    let pairs = sim_compatible_pairs(q, g);
    check_compat_bound(pairs.len())?;
    Ok(union_of_valid(&pairs, |rel| {
        !rel.is_empty() && children_ok(q, g, rel) && covers_pattern(q, rel)
    }))
}

/// Exhaustive QGP simulation (children with CQs, parents, coverage).
pub fn brute_qgp_sim(q: &Qgp, g: &DataGraph) -> Result<Option<MatchRelation>, OracleError> {
    let pairs = sim_compatible_pairs(q, g);
    check_compat_bound(pairs.len())?;
    Ok(union_of_valid(&pairs, |rel| {
        !rel.is_empty() && children_ok(q, g, rel) && parents_ok(q, g, rel) && covers_pattern(q, rel)
    }))
}

/// Exhaustive conditional simulation. Predicate satisfaction sets are
/// computed with the exhaustive QGP engine, keeping the route independent of
/// the production fixpoint.
pub fn brute_cond_sim(c: &Cgp, g: &DataGraph) -> Result<Option<MatchRelation>, OracleError> {
    let mut pairs = sim_compatible_pairs(&c.core, g);
    for p in c.positives() {
        let rel = brute_qgp_sim(&p.pattern, g)?;
        let allowed = rel.map(|r| r.image(&p.focus)).unwrap_or_default();
        pairs.retain(|(u, v)| u != &p.focus || allowed.contains(v));
    }
    for p in c.negatives() {
        let rel = brute_qgp_sim(&p.pattern, g)?;
        let forbidden = rel.map(|r| r.image(&p.focus)).unwrap_or_default();
        pairs.retain(|(u, v)| u != &p.focus || !forbidden.contains(v));
    }
    check_compat_bound(pairs.len())?;
    Ok(union_of_valid(&pairs, |rel| {
        !rel.is_empty()
            && children_ok(&c.core, g, rel)
            && parents_ok(&c.core, g, rel)
            && covers_pattern(&c.core, rel)
    }))
}

/// Exhaustive pattern-only matching.
pub fn brute_pom(q1: &Qgp, q2: &Qgp) -> Result<Option<PatternMatchRelation>, OracleError> {
    let mut pairs = Vec::new();
    for (u1, n1) in q1.nodes() {
        for (u2, n2) in q2.nodes() {
            if n1.label == n2.label && implies(&n1.constraint, &n2.constraint) {
                pairs.push((u1.clone(), u2.clone()));
            }
        }
    }
    check_compat_bound(pairs.len())?;
    Ok(union_of_valid(&pairs, |rel| {
        if rel.is_empty() {
            return false;
        }
        let conditions = rel.pairs().all(|(u1, u2)| {
            let inc = q2.in_edges(u2).all(|(e2, _)| {
                q1.in_edges(u1)
                    .any(|(e1, _)| e1.label == e2.label && rel.contains(&e1.src, &e2.src))
            });
            let out = q2.out_edges(u2).all(|(e2, cq2)| {
                q1.out_edges(u1)
                    .any(|(e1, cq1)| e1.label == e2.label && cq1 >= cq2 && rel.contains(&e1.dst, &e2.dst))
            });
            inc && out
        });
        conditions && q2.nodes().keys().all(|u2| rel.pairs().any(|(_, r)| r == u2))
    }))
}

/// Literal enumeration of the refinement and elimination relations:
/// refinement pairs by direct scanning, negative refinement by enumerating
/// aligned walk pairs from the focus (no pair repeated on a walk), and
/// positive elimination by checking every boundary-respecting edge subset
/// against the path-coverable set. Bounded by the total predicate edge
/// count.
pub fn brute_rels(c1: &Cgp, c2: &Cgp, s: &Relation) -> Result<RefElimRelations, OracleError> {
    let pred_edges = c1.positive_edges().len() + c1.negative_edges().len();
    if pred_edges > MAX_PRED_EDGES {
        return Err(OracleError::TooLarge {
            what: "predicate edges",
            size: pred_edges,
            max: MAX_PRED_EDGES,
        });
    }
    let mut rels = RefElimRelations::default();

    for e1 in c1.positive_edges() {
        for e2 in c2.core.edges().keys() {
            if e1.label == e2.label && s.contains(&e1.src, &e2.src) && s.contains(&e1.dst, &e2.dst) {
                rels.r_plus.insert((e1.clone(), e2.clone()));
            }
        }
    }

    // R-: depth-first enumeration of aligned walks. A pair found on any walk
    // is found on one that never repeats a pair, so walk-local deduplication
    // is complete. The walk closure is then narrowed to pairs whose
    // counterpart endpoints have all their core context covered, checked
    // here by literal per-pair passes.
    let mut budget: usize = 500_000;
    for p1 in c1.negatives() {
        for w in s.image(&p1.focus) {
            let mut local: BTreeSet<(EdgeKey, EdgeKey)> = BTreeSet::new();
            let mut walk: Vec<(EdgeKey, EdgeKey)> = Vec::new();
            walk_pairs(
                c1,
                &p1.pattern,
                c2,
                &p1.focus,
                &w,
                &mut walk,
                &mut local,
                &mut budget,
            )?;
            loop {
                let mut dropped = false;
                for pair in local.clone() {
                    let (e1, e2) = &pair;
                    let ends = [
                        (e1.src.as_str(), e2.src.as_str()),
                        (e1.dst.as_str(), e2.dst.as_str()),
                    ];
                    let ok = ends.iter().all(|(y1, y2)| {
                        if (*y1, *y2) == (p1.focus.as_str(), w.as_str()) {
                            return true;
                        }
                        if c2.positives_at(y2).next().is_some()
                            || c2.negatives_at(y2).next().is_some()
                        {
                            return false;
                        }
                        c2.core.edges().keys().all(|g2| {
                            let out_side = g2.src == *y2;
                            let in_side = g2.dst == *y2;
                            let covered_out = !out_side
                                || local.iter().any(|(h1, h2)| h2 == g2 && h1.src == *y1);
                            let covered_in = !in_side
                                || local.iter().any(|(h1, h2)| h2 == g2 && h1.dst == *y1);
                            covered_out && covered_in
                        })
                    });
                    if !ok {
                        local.remove(&pair);
                        dropped = true;
                    }
                }
                if !dropped {
                    break;
                }
            }
            rels.r_minus.extend(local);
        }
    }

    // E+: the fragment paired with a counterpart focus is the union of all
    // boundary-respecting subsets of the coverable edge set.
    let all_pos = c1.positive_edges();
    for (pi1, p1) in c1.positives().iter().enumerate() {
        for u in p1.pattern.nodes().keys() {
            for w in s.image(u) {
                for p2 in c2.positives() {
                    if p2.focus != w {
                        continue;
                    }
                    let coverable = path_coverable(&p1.pattern, u, &p2.pattern, &w, s, &mut budget)?;
                    let edges: Vec<EdgeKey> = coverable.into_iter().collect();
                    let mut best: BTreeSet<EdgeKey> = BTreeSet::new();
                    for mask in 1u32..(1u32 << edges.len()) {
                        let subset: BTreeSet<EdgeKey> = (0..edges.len())
                            .filter(|i| mask & (1 << i) != 0)
                            .map(|i| edges[i].clone())
                            .collect();
                        if boundary_ok(&subset, u, &all_pos) && anchored(&subset, u) {
                            best.extend(subset);
                        }
                    }
                    if !best.is_empty() {
                        let mut nodes: BTreeSet<String> = BTreeSet::new();
                        nodes.insert(u.clone());
                        for e in &best {
                            nodes.insert(e.src.clone());
                            nodes.insert(e.dst.clone());
                        }
                        rels.e_plus.insert((
                            SubPredicate {
                                parent: pi1,
                                center: u.clone(),
                                nodes,
                                edges: best,
                            },
                            w.clone(),
                        ));
                    }
                }
            }
        }
    }

    // E-: whole-predicate equivalence decided through the exhaustive
    // pattern-only matcher on the focus-stripped patterns.
    for (pi1, p1) in c1.negatives().iter().enumerate() {
        for u2 in s.image(&p1.focus) {
            for p2 in c2.negatives() {
                if p2.focus != u2 {
                    continue;
                }
                if brute_focus_equivalent(p1, p2)? {
                    rels.e_minus.insert((pi1, u2.clone()));
                }
            }
        }
    }

    Ok(rels)
}

/// Every fragment component must reach the anchor.
fn anchored(subset: &BTreeSet<EdgeKey>, center: &str) -> bool {
    let mut reached: BTreeSet<&str> = BTreeSet::new();
    reached.insert(center);
    loop {
        let mut grew = false;
        for e in subset {
            if reached.contains(e.src.as_str()) && reached.insert(&e.dst) {
                grew = true;
            }
            if reached.contains(e.dst.as_str()) && reached.insert(&e.src) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    subset
        .iter()
        .all(|e| reached.contains(e.src.as_str()) && reached.contains(e.dst.as_str()))
}

/// Boundary condition: a predicate edge outside the subset may touch it only
/// at the anchor.
fn boundary_ok(subset: &BTreeSet<EdgeKey>, center: &str, all_pos: &BTreeSet<EdgeKey>) -> bool {
    let mut touched: BTreeSet<&str> = BTreeSet::new();
    for e in subset {
        if e.src != center {
            touched.insert(&e.src);
        }
        if e.dst != center {
            touched.insert(&e.dst);
        }
    }
    all_pos
        .iter()
        .filter(|e| !subset.contains(*e))
        .all(|e| !touched.contains(e.src.as_str()) && !touched.contains(e.dst.as_str()))
}

/// Edges of `p1` reachable from the anchor pair along aligned paths of
/// equivalent edges, by exhaustive path extension.
fn path_coverable(
    p1: &Qgp,
    u: &str,
    p2: &Qgp,
    w: &str,
    s: &Relation,
    budget: &mut usize,
) -> Result<BTreeSet<EdgeKey>, OracleError> {
    let mut covered = BTreeSet::new();
    let mut walk: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    extend_equiv_walk(p1, p2, u, w, s, (u, w), &mut walk, &mut covered, budget)?;
    Ok(covered)
}

fn spend(budget: &mut usize) -> Result<(), OracleError> {
    if *budget == 0 {
        return Err(OracleError::TooLarge {
            what: "walk enumeration steps",
            size: 0,
            max: 0,
        });
    }
    *budget -= 1;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn extend_equiv_walk(
    p1: &Qgp,
    p2: &Qgp,
    x1: &str,
    x2: &str,
    s: &Relation,
    anchor: (&str, &str),
    walk: &mut Vec<(EdgeKey, EdgeKey)>,
    covered: &mut BTreeSet<EdgeKey>,
    budget: &mut usize,
) -> Result<(), OracleError> {
    let steps: Vec<(EdgeKey, EdgeKey, String, String)> = aligned_steps(p1, p2, x1, x2, |e1, cq1, e2, cq2| {
        equiv_step(p1, e1, cq1, p2, e2, cq2, s, anchor)
    });
    for (e1, e2, n1, n2) in steps {
        spend(budget)?;
        let pair = (e1.clone(), e2.clone());
        if walk.contains(&pair) {
            continue;
        }
        covered.insert(e1.clone());
        walk.push(pair);
        extend_equiv_walk(p1, p2, &n1, &n2, s, anchor, walk, covered, budget)?;
        walk.pop();
    }
    Ok(())
}

/// Aligned extensions from a node pair: both edges leave (or both enter)
/// their node, and the step predicate accepts them.
fn aligned_steps(
    p1: &Qgp,
    p2: &Qgp,
    x1: &str,
    x2: &str,
    accept: impl Fn(&EdgeKey, u32, &EdgeKey, u32) -> bool,
) -> Vec<(EdgeKey, EdgeKey, String, String)> {
    let mut out = Vec::new();
    for (e1, cq1) in p1.out_edges(x1) {
        for (e2, cq2) in p2.out_edges(x2) {
            if accept(e1, cq1, e2, cq2) {
                out.push((e1.clone(), e2.clone(), e1.dst.clone(), e2.dst.clone()));
            }
        }
    }
    for (e1, cq1) in p1.in_edges(x1) {
        for (e2, cq2) in p2.in_edges(x2) {
            if accept(e1, cq1, e2, cq2) {
                out.push((e1.clone(), e2.clone(), e1.src.clone(), e2.src.clone()));
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn equiv_step(
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
                if a.label != b.label
                    || !implies(&a.constraint, &b.constraint)
                    || !implies(&b.constraint, &a.constraint)
                {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Walk enumeration for negative refinement: steps pair a predicate edge
/// with a core edge of the containing pattern under one-directional edge
/// matching.
#[allow(clippy::too_many_arguments)]
fn walk_pairs(
    c1: &Cgp,
    p1: &Qgp,
    c2: &Cgp,
    x1: &str,
    x2: &str,
    walk: &mut Vec<(EdgeKey, EdgeKey)>,
    out: &mut BTreeSet<(EdgeKey, EdgeKey)>,
    budget: &mut usize,
) -> Result<(), OracleError> {
    let steps = aligned_steps(p1, &c2.core, x1, x2, |e1, _, e2, _| {
        crate::strongc::edge_matches(c1, e1, c2, e2)
    });
    for (e1, e2, n1, n2) in steps {
        spend(budget)?;
        let pair = (e1.clone(), e2.clone());
        if walk.contains(&pair) {
            continue;
        }
        out.insert(pair.clone());
        walk.push(pair);
        walk_pairs(c1, p1, c2, &n1, &n2, walk, out, budget)?;
        walk.pop();
    }
    Ok(())
}

/// Focus equivalence via the exhaustive matcher (both directions, focus
/// constraints stripped, focus pair in both relations, coverage of both
/// patterns' core elements).
fn brute_focus_equivalent(
    p1: &crate::model::FocusedQgp,
    p2: &crate::model::FocusedQgp,
) -> Result<bool, OracleError> {
    let strip = |p: &crate::model::FocusedQgp| {
        let mut q = p.pattern.clone();
        if let Some(node) = q.node(&p.focus).cloned() {
            q.add_node(&p.focus, &node.label, Default::default());
        }
        q
    };
    let q1 = strip(p1);
    let q2 = strip(p2);
    let fwd = brute_pom(&q1, &q2)?;
    let ok_fwd = match fwd {
        Some(rel) => {
            rel.contains(&p1.focus, &p2.focus) && q1.nodes().keys().all(|u| !rel.image(u).is_empty())
        }
        None => false,
    };
    if !ok_fwd {
        return Ok(false);
    }
    let bwd = brute_pom(&q2, &q1)?;
    Ok(match bwd {
        Some(rel) => {
            rel.contains(&p2.focus, &p1.focus) && q2.nodes().keys().all(|u| !rel.image(u).is_empty())
        }
        None => false,
    })
}
