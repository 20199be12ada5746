//! Seeded random generation of data graphs and patterns, containment-biased
//! derived variants, pattern materialization into data graphs, consistent
//! relabeling (for order-independence checks), and a scaling family for the
//! complexity smoke tests.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::constraints::{normalize, Atom, AttributeAssignment, CmpOp, ConstraintConjunction, Value};
use crate::model::{Cgp, DataGraph, EdgeKey, FocusedQgp, Qgp};

/// Knobs for the random generators. Ranges are inclusive.
#[derive(Debug, Clone)]
pub struct GenParams {
    pub nodes: (usize, usize),
    pub edge_density: f64,
    pub labels: usize,
    pub attrs: usize,
    pub int_range: (i64, i64),
    pub cq: (u32, u32),
    pub predicates: (usize, usize),
    pub predicate_size: (usize, usize),
    /// Probability that a generated predicate is negative.
    pub negative_share: f64,
    pub seed: u64,
}

impl GenParams {
    /// Defaults sized for the property suites.
    pub fn small(seed: u64) -> Self {
        GenParams {
            nodes: (3, 6),
            edge_density: 0.15,
            labels: 4,
            attrs: 3,
            int_range: (0, 31),
            cq: (1, 2),
            predicates: (0, 3),
            predicate_size: (1, 2),
            negative_share: 0.3,
            seed,
        }
    }

    /// Tiny instances for the exhaustive oracles.
    pub fn tiny(seed: u64) -> Self {
        GenParams {
            nodes: (2, 3),
            edge_density: 0.2,
            labels: 2,
            attrs: 1,
            int_range: (0, 7),
            cq: (1, 2),
            predicates: (0, 1),
            predicate_size: (1, 1),
            negative_share: 0.3,
            seed,
        }
    }
}

fn label(rng: &mut ChaCha8Rng, p: &GenParams) -> String {
    format!("L{}", rng.gen_range(0..p.labels))
}

fn attr_name(rng: &mut ChaCha8Rng, p: &GenParams) -> String {
    format!("t{}", rng.gen_range(0..p.attrs))
}

fn pick_range(rng: &mut ChaCha8Rng, (lo, hi): (usize, usize)) -> usize {
    rng.gen_range(lo..=hi)
}

/// A random satisfiable constraint: every atom is built around a witness
/// value, so the conjunction always has a solution.
fn random_constraint(rng: &mut ChaCha8Rng, p: &GenParams) -> ConstraintConjunction {
    let mut atoms = Vec::new();
    if rng.gen_bool(0.55) {
        let n_atoms = rng.gen_range(1..=2);
        for _ in 0..n_atoms {
            let attr = attr_name(rng, p);
            let w = rng.gen_range(p.int_range.0..=p.int_range.1);
            let slack = rng.gen_range(0..=4);
            let atom = match rng.gen_range(0..6) {
                0 => Atom { attr, op: CmpOp::Ge, value: Value::Int(w - slack) },
                1 => Atom { attr, op: CmpOp::Le, value: Value::Int(w + slack) },
                2 => Atom { attr, op: CmpOp::Eq, value: Value::Int(w) },
                3 => Atom { attr, op: CmpOp::Ne, value: Value::Int(w + slack + 1) },
                4 => Atom { attr, op: CmpOp::Gt, value: Value::Int(w - slack - 1) },
                _ => Atom { attr, op: CmpOp::Lt, value: Value::Int(w + slack + 1) },
            };
            atoms.push(atom);
        }
        // Equality mixed with other ops on the same attribute can contradict;
        // drop later atoms that break satisfiability.
        let mut kept: Vec<Atom> = Vec::new();
        for atom in atoms {
            kept.push(atom);
            if normalize(&ConstraintConjunction(kept.clone())).is_err() {
                kept.pop();
            }
        }
        atoms = kept;
    }
    ConstraintConjunction(atoms)
}

/// Deterministic random data graph.
pub fn gen_graph(p: &GenParams) -> DataGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = pick_range(&mut rng, p.nodes);
    let mut g = DataGraph::new();
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    for id in &ids {
        let mut attrs = AttributeAssignment::new();
        for a in 0..p.attrs {
            if rng.gen_bool(0.6) {
                attrs = attrs.set(
                    &format!("t{a}"),
                    Value::Int(rng.gen_range(p.int_range.0..=p.int_range.1)),
                );
            }
        }
        let l = label(&mut rng, p);
        g.add_node(id, &l, attrs);
    }
    for src in &ids {
        for dst in &ids {
            if src != dst && rng.gen_bool(p.edge_density) {
                let l = label(&mut rng, p);
                g.add_edge(src, dst, &l);
            }
        }
        if rng.gen_bool(p.edge_density * 0.2) {
            let l = label(&mut rng, p);
            g.add_edge(src, src, &l);
        }
    }
    g
}

/// Deterministic random CGP. The core is a random tree plus a few extra
/// edges; predicates hang off random core nodes with fresh node ids, so the
/// structural invariants hold by construction.
pub fn gen_cgp(p: &GenParams) -> Cgp {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = pick_range(&mut rng, p.nodes).max(1);
    let mut core = Qgp::new();
    let ids: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
    for id in &ids {
        let l = label(&mut rng, p);
        let c = random_constraint(&mut rng, p);
        core.add_node(id, &l, c);
    }
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let l = label(&mut rng, p);
        let cq = if rng.gen_bool(0.25) {
            rng.gen_range(p.cq.0..=p.cq.1)
        } else {
            1
        };
        // Mostly downward edges keep in-degrees small, which makes derived
        // predicate mirrors realizable.
        if rng.gen_bool(0.85) {
            core.add_edge(&ids[j], &ids[i], &l, cq);
        } else {
            core.add_edge(&ids[i], &ids[j], &l, cq);
        }
    }
    for src in &ids {
        for dst in &ids {
            if src != dst && rng.gen_bool(p.edge_density * 0.3) {
                let l = label(&mut rng, p);
                core.add_edge(src, dst, &l, 1);
            }
        }
    }

    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    let count = pick_range(&mut rng, p.predicates);
    for k in 0..count {
        let focus = ids[rng.gen_range(0..n)].clone();
        let focus_node = core.node(&focus).unwrap().clone();
        let size = pick_range(&mut rng, p.predicate_size).max(1);
        let mut pat = Qgp::new();
        pat.add_node(&focus, &focus_node.label, focus_node.constraint.clone());
        let mut members = vec![focus.clone()];
        for m in 0..size {
            let id = format!("q{k}_{m}");
            let l = label(&mut rng, p);
            let c = random_constraint(&mut rng, p);
            pat.add_node(&id, &l, c);
            let anchor = members[rng.gen_range(0..members.len())].clone();
            let el = label(&mut rng, p);
            let cq = if rng.gen_bool(0.25) {
                rng.gen_range(p.cq.0..=p.cq.1)
            } else {
                1
            };
            if rng.gen_bool(0.8) {
                pat.add_edge(&anchor, &id, &el, cq);
            } else {
                pat.add_edge(&id, &anchor, &el, cq);
            }
            members.push(id);
        }
        // Occasionally close a cycle inside the predicate.
        if members.len() >= 2 && rng.gen_bool(0.25) {
            let a = members[rng.gen_range(0..members.len())].clone();
            let b = members[rng.gen_range(0..members.len())].clone();
            let el = label(&mut rng, p);
            if a != b && !pat.edges().contains_key(&EdgeKey::new(&a, &b, &el)) {
                pat.add_edge(&a, &b, &el, 1);
            }
        }
        if rng.gen_bool(p.negative_share) {
            negatives.push(FocusedQgp::new(pat, &focus));
        } else {
            positives.push(FocusedQgp::new(pat, &focus));
        }
    }
    let cgp = Cgp::new(core, positives, negatives);
    debug_assert!(cgp.validate().is_empty(), "{:?}", cgp.validate());
    cgp
}

/// Copy a base pattern and tighten it: strengthened constraints, raised
/// quantifiers, and extra predicates. Tightenings preserve containment in
/// the base by construction; a small share of seeds applies a breaking
/// mutation instead, to feed the negative paths.
pub fn derived_variant(base: &Cgp, seed: u64) -> Cgp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51_7c_c1_b7);
    if rng.gen_bool(0.08) {
        return broken_variant(base, &mut rng);
    }
    let mut variant = mutate_tighter(base, &mut rng, true);
    if rng.gen_bool(0.35) {
        variant = add_fresh_predicate(&variant, &mut rng, "x");
    }
    variant
}

/// Like [`derived_variant`] but restricted to mutations that keep every new
/// predicate refinable or eliminable over the base, so strong containment
/// usually survives.
pub fn s_positive_variant(base: &Cgp, seed: u64) -> Cgp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2545_f491);
    mutate_tighter(base, &mut rng, false)
}

fn mutate_tighter(base: &Cgp, rng: &mut ChaCha8Rng, allow_fresh_shapes: bool) -> Cgp {
    let mut core = base.core.clone();

    // Strengthen a few core constraints around a witness of the existing
    // conjunction: adding atoms a witness satisfies keeps satisfiability and
    // implication toward the original. Foci of negative predicates keep
    // their constraints: a strengthened focus would no longer be dominated
    // by the base's negative predicate.
    let node_ids: Vec<String> = core
        .nodes()
        .keys()
        .filter(|id| base.negatives_at(id).next().is_none())
        .cloned()
        .collect();
    for _ in 0..rng.gen_range(0..=2) {
        if node_ids.is_empty() {
            break;
        }
        let id = node_ids[rng.gen_range(0..node_ids.len())].clone();
        let node = core.node(&id).unwrap().clone();
        if let Ok(norm) = normalize(&node.constraint) {
            if let Some(witness) = norm.witness() {
                let mut atoms = node.constraint.0.clone();
                let (attr, value) = match witness.0.iter().next() {
                    Some((a, v)) => (a.clone(), v.clone()),
                    None => (
                        "t0".to_string(),
                        Value::Int(rng.gen_range(0..=31)),
                    ),
                };
                if let Value::Int(w) = value {
                    let atom = match rng.gen_range(0..3) {
                        0 => Atom { attr, op: CmpOp::Ge, value: Value::Int(w - rng.gen_range(0..=2)) },
                        1 => Atom { attr, op: CmpOp::Le, value: Value::Int(w + rng.gen_range(0..=2)) },
                        _ => Atom { attr, op: CmpOp::Ne, value: Value::Int(w + 3) },
                    };
                    atoms.push(atom);
                } else {
                    atoms.push(Atom {
                        attr,
                        op: CmpOp::Eq,
                        value,
                    });
                }
                let tightened = ConstraintConjunction(atoms);
                if normalize(&tightened).is_ok() {
                    core.add_node(&id, &node.label, tightened);
                }
            }
        }
    }

    // Occasionally raise a quantifier.
    if rng.gen_bool(0.3) {
        let edges: Vec<(EdgeKey, u32)> = core.edges().iter().map(|(k, cq)| (k.clone(), *cq)).collect();
        if !edges.is_empty() {
            let (key, cq) = edges[rng.gen_range(0..edges.len())].clone();
            core.add_edge(&key.src, &key.dst, &key.label, cq + 1);
        }
    }

    let mut positives: Vec<FocusedQgp> = base.positives().to_vec();
    let mut negatives: Vec<FocusedQgp> = base.negatives().to_vec();

    let mut used: BTreeSet<String> = core.nodes().keys().cloned().collect();
    for p in positives.iter().chain(negatives.iter()) {
        used.extend(p.pattern.nodes().keys().cloned());
    }

    // Duplicate an existing predicate under fresh ids: the copy stays
    // equivalent to the original, hence eliminable over it.
    if rng.gen_bool(0.4) {
        let total = positives.len() + negatives.len();
        if total > 0 {
            let pick = rng.gen_range(0..total);
            let (pred, positive) = if pick < positives.len() {
                (positives[pick].clone(), true)
            } else {
                (negatives[pick - positives.len()].clone(), false)
            };
            let copy = rename_non_focus(&pred, &fresh_tag("cp", &mut used));
            used.extend(copy.pattern.nodes().keys().cloned());
            if positive {
                positives.push(copy);
            } else {
                negatives.push(copy);
            }
        }
    }

    // Mirror a piece of the core as a new predicate: its edges map onto the
    // core edges they copy, hence it is refinable.
    let all_ids: Vec<String> = core.nodes().keys().cloned().collect();
    if rng.gen_bool(0.5) && !all_ids.is_empty() {
        let focus = all_ids[rng.gen_range(0..all_ids.len())].clone();
        if let Some(mirror) = mirror_core_subtree(base, &focus, &mut used) {
            if rng.gen_bool(0.35) {
                // A negative mirror with a bumped quantifier keeps refinement
                // possible while rarely matching the materialized instances.
                if let Some(bumped) = bump_one_cq(&mirror) {
                    negatives.push(bumped);
                } else {
                    negatives.push(mirror);
                }
            } else {
                positives.push(mirror);
            }
        }
    }

    let positives = sync_predicate_foci(&core, &positives);
    let negatives = sync_predicate_foci(&core, &negatives);

    if allow_fresh_shapes && rng.gen_bool(0.2) {
        let c = Cgp::new(core.clone(), positives.clone(), negatives.clone());
        let with_fresh = add_fresh_predicate(&c, rng, "y");
        return with_fresh;
    }

    let out = Cgp::new(core, positives, negatives);
    debug_assert!(out.validate().is_empty(), "{:?}", out.validate());
    out
}

/// Predicates share their focus node with the core; after a core mutation
/// the copies inside each predicate pattern must be refreshed.
fn sync_predicate_foci(core: &Qgp, preds: &[FocusedQgp]) -> Vec<FocusedQgp> {
    preds
        .iter()
        .map(|p| {
            let mut pat = p.pattern.clone();
            if let Some(node) = core.node(&p.focus) {
                pat.add_node(&p.focus, &node.label, node.constraint.clone());
            }
            FocusedQgp::new(pat, &p.focus)
        })
        .collect()
}

/// Rename every non-focus node of a predicate.
fn rename_non_focus(pred: &FocusedQgp, prefix: &str) -> FocusedQgp {
    let rename = |id: &str| -> String {
        if id == pred.focus {
            id.to_string()
        } else {
            format!("{prefix}_{id}")
        }
    };
    let mut pat = Qgp::new();
    for (id, node) in pred.pattern.nodes() {
        pat.add_node(&rename(id), &node.label, node.constraint.clone());
    }
    for (key, cq) in pred.pattern.edges() {
        pat.add_edge(&rename(&key.src), &rename(&key.dst), &key.label, *cq);
    }
    FocusedQgp::new(pat, &pred.focus)
}

/// A prefix not yet used by any node id. Candidates count up, so repeated
/// variant derivations never collide.
fn fresh_tag(kind: &str, used: &mut BTreeSet<String>) -> String {
    for i in 0.. {
        let tag = format!("{kind}{i}");
        if !used.iter().any(|id| id.starts_with(&tag)) {
            used.insert(tag.clone());
            return tag;
        }
    }
    unreachable!()
}

/// Copy the out-closure of a core node (to a bounded depth, following every
/// outgoing edge of each copied node) into a predicate anchored at it.
fn mirror_core_subtree(base: &Cgp, focus: &str, used: &mut BTreeSet<String>) -> Option<FocusedQgp> {
    let core = &base.core;
    let tag = fresh_tag("m", used);
    let mut pat = Qgp::new();
    let focus_node = core.node(focus)?;
    pat.add_node(focus, &focus_node.label, focus_node.constraint.clone());
    // Out-closure copy: every copied node carries all of its outgoing core
    // edges, so the copies satisfy the same child requirements as their
    // originals. A node with many descendants is skipped.
    let mut mapping: BTreeMap<String, String> = BTreeMap::new();
    mapping.insert(focus.to_string(), focus.to_string());
    let mut stack = vec![focus.to_string()];
    let mut budget = 8usize;
    while let Some(orig) = stack.pop() {
        let copy_src = mapping[&orig].clone();
        let outs: Vec<(EdgeKey, u32)> = core.out_edges(&orig).map(|(k, cq)| (k.clone(), cq)).collect();
        for (key, cq) in outs {
            if budget == 0 {
                return None;
            }
            let copy_dst = match mapping.get(&key.dst) {
                Some(c) => c.clone(),
                None => {
                    budget -= 1;
                    let c = format!("{tag}_{}", key.dst);
                    let node = core.node(&key.dst)?;
                    pat.add_node(&c, &node.label, node.constraint.clone());
                    mapping.insert(key.dst.clone(), c.clone());
                    stack.push(key.dst.clone());
                    c
                }
            };
            pat.add_edge(&copy_src, &copy_dst, &key.label, cq);
        }
    }
    if pat.edges().is_empty() {
        return None;
    }
    Some(FocusedQgp::new(pat, focus))
}

fn bump_one_cq(pred: &FocusedQgp) -> Option<FocusedQgp> {
    let (key, cq) = pred.pattern.edges().iter().next().map(|(k, c)| (k.clone(), *c))?;
    let mut pat = pred.pattern.clone();
    pat.add_edge(&key.src, &key.dst, &key.label, cq + 1);
    Some(FocusedQgp::new(pat, &pred.focus))
}

/// Attach an unrelated random predicate; usually breaks strong containment
/// but keeps the traditional verdict intact.
fn add_fresh_predicate(base: &Cgp, rng: &mut ChaCha8Rng, tag: &str) -> Cgp {
    let ids: Vec<String> = base.core.nodes().keys().cloned().collect();
    let focus = ids[rng.gen_range(0..ids.len())].clone();
    let focus_node = base.core.node(&focus).unwrap().clone();
    let mut pat = Qgp::new();
    pat.add_node(&focus, &focus_node.label, focus_node.constraint);
    let mut used: BTreeSet<String> = base.core.nodes().keys().cloned().collect();
    for p in base.positives().iter().chain(base.negatives()) {
        used.extend(p.pattern.nodes().keys().cloned());
    }
    let fresh = fresh_tag(tag, &mut used);
    pat.add_node(&fresh, &format!("L{}", rng.gen_range(0..4)), ConstraintConjunction::none());
    pat.add_edge(&focus, &fresh, &format!("L{}", rng.gen_range(0..4)), 1);
    let mut positives = base.positives().to_vec();
    let mut negatives = base.negatives().to_vec();
    if rng.gen_bool(0.4) {
        negatives.push(FocusedQgp::new(pat, &focus));
    } else {
        positives.push(FocusedQgp::new(pat, &focus));
    }
    Cgp::new(base.core.clone(), positives, negatives)
}

fn broken_variant(base: &Cgp, rng: &mut ChaCha8Rng) -> Cgp {
    let mut core = base.core.clone();
    let ids: Vec<String> = core.nodes().keys().cloned().collect();
    let id = ids[rng.gen_range(0..ids.len())].clone();
    let node = core.node(&id).unwrap().clone();
    // Dropping all constraints (or relabeling) usually breaks containment in
    // the base.
    if rng.gen_bool(0.5) && !node.constraint.is_empty() {
        core.add_node(&id, &node.label, ConstraintConjunction::none());
    } else {
        core.add_node(&id, "Lbroken", node.constraint);
    }
    let positives = sync_predicate_foci(&core, base.positives());
    let negatives = sync_predicate_foci(&core, base.negatives());
    Cgp::new(core, positives, negatives)
}

/// Materialize a pattern into a data graph that matches it: one base node
/// per pattern node with witness attribute values, plus enough extra copies
/// of child nodes to meet every counting quantifier. Extra copies share the
/// children of their originals, so the construction stays linear in the
/// pattern size and the quantifier sum.
pub fn materialize(q: &Qgp, seed: u64, prefix: &str) -> DataGraph {
    let _ = seed; // attribute witnesses are deterministic; seed kept for call-site symmetry
    let mut g = DataGraph::new();
    let base_id = |u: &str| format!("{prefix}_{u}");
    let mut witnesses: BTreeMap<String, AttributeAssignment> = BTreeMap::new();
    for (u, node) in q.nodes() {
        let attrs = normalize(&node.constraint)
            .ok()
            .and_then(|n| n.witness())
            .unwrap_or_default();
        witnesses.insert(u.clone(), attrs.clone());
        g.add_node(&base_id(u), &node.label, attrs);
    }
    // Extra copies per quantified edge.
    let mut extras: BTreeMap<EdgeKey, Vec<String>> = BTreeMap::new();
    for (key, cq) in q.edges() {
        let mut copies = Vec::new();
        for i in 0..cq.saturating_sub(1) {
            let id = format!("{prefix}_x_{}_{}_{}_{i}", key.src, key.dst, key.label);
            let node = q.node(&key.dst).unwrap();
            g.add_node(&id, &node.label, witnesses[&key.dst].clone());
            copies.push(id);
        }
        extras.insert(key.clone(), copies);
    }
    for key in q.edges().keys() {
        g.add_edge(&base_id(&key.src), &base_id(&key.dst), &key.label);
        for copy in &extras[key] {
            g.add_edge(&base_id(&key.src), copy, &key.label);
        }
    }
    // Wire every copy like its original: the same outgoing families (base
    // children plus their extras) and one incoming edge per incoming label.
    for key in q.edges().keys() {
        for copy in &extras[key] {
            let orig = &key.dst;
            for (out, _) in q.out_edges(orig) {
                g.add_edge(copy, &base_id(&out.dst), &out.label);
                for child_copy in &extras[out] {
                    g.add_edge(copy, child_copy, &out.label);
                }
            }
            for (inc, _) in q.in_edges(orig) {
                g.add_edge(&base_id(&inc.src), copy, &inc.label);
            }
        }
    }
    g
}

/// Union a graph with random noise nodes and edges drawn from the same
/// label and attribute alphabets.
pub fn add_noise(g: &DataGraph, p: &GenParams, seed: u64) -> DataGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd_ef01);
    let mut out = g.clone();
    let extra = rng.gen_range(0..=p.nodes.1);
    let mut ids: Vec<String> = g.nodes().keys().cloned().collect();
    for i in 0..extra {
        let id = format!("noise{i}");
        let mut attrs = AttributeAssignment::new();
        for a in 0..p.attrs {
            if rng.gen_bool(0.5) {
                attrs = attrs.set(
                    &format!("t{a}"),
                    Value::Int(rng.gen_range(p.int_range.0..=p.int_range.1)),
                );
            }
        }
        let l = label(&mut rng, p);
        out.add_node(&id, &l, attrs);
        ids.push(id);
    }
    if ids.len() >= 2 {
        let n_edges = rng.gen_range(0..=ids.len());
        for _ in 0..n_edges {
            let a = ids[rng.gen_range(0..ids.len())].clone();
            let b = ids[rng.gen_range(0..ids.len())].clone();
            if a != b {
                let l = label(&mut rng, p);
                out.add_edge(&a, &b, &l);
            }
        }
    }
    out
}

/// Apply a consistent random bijection to all node ids.
pub fn relabel_graph(g: &DataGraph, seed: u64) -> (DataGraph, BTreeMap<String, String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7777_1234);
    let mut ids: Vec<String> = g.nodes().keys().cloned().collect();
    ids.shuffle(&mut rng);
    let mapping: BTreeMap<String, String> = g
        .nodes()
        .keys()
        .zip(ids.iter())
        .map(|(old, pos)| (old.clone(), format!("n_{pos}")))
        .collect();
    let mut out = DataGraph::new();
    for (id, node) in g.nodes() {
        out.add_node(&mapping[id], &node.label, node.attrs.clone());
    }
    for e in g.edges() {
        out.add_edge(&mapping[&e.src], &mapping[&e.dst], &e.label);
    }
    (out, mapping)
}

/// Apply a consistent random bijection to all pattern node ids (core and
/// predicates together).
pub fn relabel_cgp(c: &Cgp, seed: u64) -> (Cgp, BTreeMap<String, String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3333_9876);
    let mut all_ids: Vec<String> = c.core.nodes().keys().cloned().collect();
    for p in c.positives().iter().chain(c.negatives()) {
        for id in p.pattern.nodes().keys() {
            if !all_ids.contains(id) {
                all_ids.push(id.clone());
            }
        }
    }
    let mut shuffled = all_ids.clone();
    shuffled.shuffle(&mut rng);
    let mapping: BTreeMap<String, String> = all_ids
        .iter()
        .zip(shuffled.iter())
        .map(|(old, pos)| (old.clone(), format!("p_{pos}")))
        .collect();
    let rename_qgp = |q: &Qgp| {
        let mut out = Qgp::new();
        for (id, node) in q.nodes() {
            out.add_node(&mapping[id], &node.label, node.constraint.clone());
        }
        for (key, cq) in q.edges() {
            out.add_edge(&mapping[&key.src], &mapping[&key.dst], &key.label, *cq);
        }
        out
    };
    let core = rename_qgp(&c.core);
    let positives = c
        .positives()
        .iter()
        .map(|p| FocusedQgp::new(rename_qgp(&p.pattern), &mapping[&p.focus]))
        .collect();
    let negatives = c
        .negatives()
        .iter()
        .map(|p| FocusedQgp::new(rename_qgp(&p.pattern), &mapping[&p.focus]))
        .collect();
    (Cgp::new(core, positives, negatives), mapping)
}

/// A pattern pair of controlled size for timing trends: the containing
/// pattern is a labeled chain with small predicates, the contained one a
/// tightened copy. Both verdicts (traditional and strong) are positive.
pub fn scaling_pair(chain_len: usize) -> (Cgp, Cgp) {
    let mut core = Qgp::new();
    for i in 0..chain_len {
        let c = ConstraintConjunction(vec![Atom {
            attr: "t0".to_string(),
            op: CmpOp::Ge,
            value: Value::Int((i % 16) as i64),
        }]);
        core.add_node(&format!("u{i}"), &format!("L{}", i % 4), c);
    }
    for i in 1..chain_len {
        core.add_edge(&format!("u{}", i - 1), &format!("u{i}"), "r", 1);
    }
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for i in (0..chain_len).step_by(8) {
        let focus = format!("u{i}");
        let mut pat = Qgp::new();
        let node = core.node(&focus).unwrap().clone();
        pat.add_node(&focus, &node.label, node.constraint);
        pat.add_node(&format!("q{i}"), "LP", ConstraintConjunction::none());
        pat.add_edge(&focus, &format!("q{i}"), "has", 1);
        if i % 16 == 0 {
            positives.push(FocusedQgp::new(pat, &focus));
        } else {
            negatives.push(FocusedQgp::new(pat, &focus));
        }
    }
    let base = Cgp::new(core, positives, negatives);

    // Tightened copy: same shape, stronger node constraints. Predicate foci
    // keep their constraints so the predicates stay dominated and
    // eliminable.
    let mut tight_core = base.core.clone();
    for i in 0..chain_len {
        if i % 8 == 0 {
            continue;
        }
        let id = format!("u{i}");
        let node = tight_core.node(&id).unwrap().clone();
        let mut atoms = node.constraint.0.clone();
        atoms.push(Atom {
            attr: "t0".to_string(),
            op: CmpOp::Le,
            value: Value::Int(1000),
        });
        tight_core.add_node(&id, &node.label, ConstraintConjunction(atoms));
    }
    let positives = sync_predicate_foci(&tight_core, base.positives());
    let negatives = sync_predicate_foci(&tight_core, base.negatives());
    let tight = Cgp::new(tight_core, positives, negatives);
    (tight, base)
}
