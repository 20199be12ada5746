//! Domain types: data graphs, quantified graph patterns (QGPs), patterns
//! with a query focus, and conditional graph patterns (CGPs) with positive
//! and negative predicate sets. Also structural validation, the positive
//! version of a CGP, and size metrics.
//!
//! Edges are keyed by `(src, dst, label)`, so parallel edges are allowed
//! exactly when their labels differ. Node ids are opaque strings; labels are
//! case-sensitive.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::constraints::{self, AttributeAssignment, ConstraintConjunction};

/// Identity of an edge within a graph or pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub src: String,
    pub dst: String,
    pub label: String,
}

impl EdgeKey {
    pub fn new(src: &str, dst: &str, label: &str) -> Self {
        EdgeKey {
            src: src.to_string(),
            dst: dst.to_string(),
            label: label.to_string(),
        }
    }

    pub fn touches(&self, node: &str) -> bool {
        self.src == node || self.dst == node
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {}", self.src, self.dst, self.label)
    }
}

/// A data node: label plus attribute values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DataNode {
    pub label: String,
    pub attrs: AttributeAssignment,
}

/// A labeled directed data graph with per-node attribute assignments.
#[derive(Debug, Clone, Default)]
pub struct DataGraph {
    nodes: BTreeMap<String, DataNode>,
    edges: BTreeSet<EdgeKey>,
    out: BTreeMap<String, Vec<EdgeKey>>,
    inc: BTreeMap<String, Vec<EdgeKey>>,
}

impl PartialEq for DataGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Eq for DataGraph {}

impl DataGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: &str, label: &str, attrs: AttributeAssignment) {
        self.nodes.insert(
            id.to_string(),
            DataNode {
                label: label.to_string(),
                attrs,
            },
        );
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, label: &str) {
        let key = EdgeKey::new(src, dst, label);
        if self.edges.insert(key.clone()) {
            self.out.entry(key.src.clone()).or_default().push(key.clone());
            self.inc.entry(key.dst.clone()).or_default().push(key);
        }
    }

    pub fn nodes(&self) -> &BTreeMap<String, DataNode> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<EdgeKey> {
        &self.edges
    }

    pub fn node(&self, id: &str) -> Option<&DataNode> {
        self.nodes.get(id)
    }

    pub fn out_edges(&self, id: &str) -> &[EdgeKey] {
        self.out.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn in_edges(&self, id: &str) -> &[EdgeKey] {
        self.inc.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_edge(&self, src: &str, dst: &str, label: &str) -> bool {
        self.edges.contains(&EdgeKey::new(src, dst, label))
    }

    /// Dangling edge endpoints, if any. Builders are lenient; this is the
    /// check CLI parsing and generators rely on.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in &self.edges {
            if !self.nodes.contains_key(&e.src) || !self.nodes.contains_key(&e.dst) {
                out.push(Violation::DanglingEdge { edge: e.clone() });
            }
        }
        out
    }
}

/// A pattern node: label plus a constraint conjunction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PatternNode {
    pub label: String,
    pub constraint: ConstraintConjunction,
}

/// A quantified graph pattern: connected directed pattern with attribute
/// constraints on nodes and a counting quantifier (>= 1) on every edge.
#[derive(Debug, Clone, Default)]
pub struct Qgp {
    nodes: BTreeMap<String, PatternNode>,
    edges: BTreeMap<EdgeKey, u32>,
    out: BTreeMap<String, Vec<EdgeKey>>,
    inc: BTreeMap<String, Vec<EdgeKey>>,
}

impl PartialEq for Qgp {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Eq for Qgp {}

impl PartialOrd for Qgp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Qgp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.nodes, &self.edges).cmp(&(&other.nodes, &other.edges))
    }
}

impl Qgp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: &str, label: &str, constraint: ConstraintConjunction) {
        self.nodes.insert(
            id.to_string(),
            PatternNode {
                label: label.to_string(),
                constraint,
            },
        );
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, label: &str, cq: u32) {
        let key = EdgeKey::new(src, dst, label);
        if self.edges.insert(key.clone(), cq).is_none() {
            self.out.entry(key.src.clone()).or_default().push(key.clone());
            self.inc.entry(key.dst.clone()).or_default().push(key);
        }
    }

    pub fn nodes(&self) -> &BTreeMap<String, PatternNode> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeMap<EdgeKey, u32> {
        &self.edges
    }

    pub fn node(&self, id: &str) -> Option<&PatternNode> {
        self.nodes.get(id)
    }

    pub fn cq(&self, key: &EdgeKey) -> Option<u32> {
        self.edges.get(key).copied()
    }

    pub fn contains_node(&self, id: &str) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn out_edges<'a>(&'a self, id: &'a str) -> impl Iterator<Item = (&'a EdgeKey, u32)> {
        self.out
            .get(id)
            .into_iter()
            .flat_map(|v| v.iter())
            .map(|k| (k, self.edges[k]))
    }

    pub fn in_edges<'a>(&'a self, id: &'a str) -> impl Iterator<Item = (&'a EdgeKey, u32)> {
        self.inc
            .get(id)
            .into_iter()
            .flat_map(|v| v.iter())
            .map(|k| (k, self.edges[k]))
    }

    pub fn size(&self) -> usize {
        self.nodes.len() + self.edges.len()
    }

    /// Connectivity when edges are read as undirected.
    pub fn is_connected(&self) -> bool {
        let mut ids = self.nodes.keys();
        let start = match ids.next() {
            Some(s) => s.clone(),
            None => return false,
        };
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for key in self.edges.keys() {
            adj.entry(&key.src).or_default().push(&key.dst);
            adj.entry(&key.dst).or_default().push(&key.src);
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.as_str());
        queue.push_back(start.as_str());
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(x).into_iter().flatten() {
                if self.nodes.contains_key(y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == self.nodes.len()
    }

    fn structural_violations(&self, ctx: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        for (key, cq) in &self.edges {
            if *cq < 1 {
                out.push(Violation::CqBelowOne {
                    context: ctx.to_string(),
                    edge: key.clone(),
                });
            }
            if !self.nodes.contains_key(&key.src) || !self.nodes.contains_key(&key.dst) {
                out.push(Violation::DanglingEdge { edge: key.clone() });
            }
        }
        for (id, node) in &self.nodes {
            if let Err(e) = constraints::normalize(&node.constraint) {
                out.push(Violation::BadConstraint {
                    context: ctx.to_string(),
                    node: id.clone(),
                    reason: e.to_string(),
                });
            }
        }
        out
    }
}

/// A QGP with a designated query focus whose matches form the result.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FocusedQgp {
    pub pattern: Qgp,
    pub focus: String,
}

impl FocusedQgp {
    pub fn new(pattern: Qgp, focus: &str) -> Self {
        FocusedQgp {
            pattern,
            focus: focus.to_string(),
        }
    }
}

/// A conditional graph pattern: a core QGP plus positive and negative
/// predicates, each a focused QGP sharing exactly its focus node with the
/// core. The core is what a match returns; predicates only filter.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cgp {
    pub core: Qgp,
    positives: Vec<FocusedQgp>,
    negatives: Vec<FocusedQgp>,
}

impl Cgp {
    /// Wrap a bare QGP (no predicates).
    pub fn from_qgp(core: Qgp) -> Self {
        Cgp {
            core,
            positives: Vec::new(),
            negatives: Vec::new(),
        }
    }

    /// Predicate lists are stored in a canonical order so that equality is
    /// independent of insertion order.
    pub fn new(core: Qgp, mut positives: Vec<FocusedQgp>, mut negatives: Vec<FocusedQgp>) -> Self {
        positives.sort();
        negatives.sort();
        Cgp {
            core,
            positives,
            negatives,
        }
    }

    pub fn positives(&self) -> &[FocusedQgp] {
        &self.positives
    }

    pub fn negatives(&self) -> &[FocusedQgp] {
        &self.negatives
    }

    pub fn positives_at<'a>(&'a self, focus: &'a str) -> impl Iterator<Item = &'a FocusedQgp> {
        self.positives.iter().filter(move |p| p.focus == focus)
    }

    pub fn negatives_at<'a>(&'a self, focus: &'a str) -> impl Iterator<Item = &'a FocusedQgp> {
        self.negatives.iter().filter(move |p| p.focus == focus)
    }

    /// All edges of positive predicates. Edge keys are globally unique across
    /// the core and all predicates, so plain key sets are unambiguous.
    pub fn positive_edges(&self) -> BTreeSet<EdgeKey> {
        self.positives
            .iter()
            .flat_map(|p| p.pattern.edges().keys().cloned())
            .collect()
    }

    pub fn negative_edges(&self) -> BTreeSet<EdgeKey> {
        self.negatives
            .iter()
            .flat_map(|p| p.pattern.edges().keys().cloned())
            .collect()
    }

    /// Nodes composing positive predicates, foci included.
    pub fn positive_nodes(&self) -> BTreeSet<String> {
        self.positives
            .iter()
            .flat_map(|p| p.pattern.nodes().keys().cloned())
            .collect()
    }

    pub fn is_core_node(&self, id: &str) -> bool {
        self.core.contains_node(id)
    }

    /// Look up a node's label and constraint anywhere in the pattern
    /// (core first, then predicates; foci agree by validation).
    pub fn node_view(&self, id: &str) -> Option<&PatternNode> {
        if let Some(n) = self.core.node(id) {
            return Some(n);
        }
        self.positives
            .iter()
            .chain(self.negatives.iter())
            .find_map(|p| p.pattern.node(id))
    }

    /// The positive predicate (by index) owning the given non-focus node or
    /// edge key.
    pub fn positive_owner_of_edge(&self, key: &EdgeKey) -> Option<usize> {
        self.positives
            .iter()
            .position(|p| p.pattern.edges().contains_key(key))
    }

    /// Counting quantifier of an edge anywhere in the pattern (core or any
    /// predicate; keys are globally unique).
    pub fn edge_cq(&self, key: &EdgeKey) -> Option<u32> {
        if let Some(cq) = self.core.cq(key) {
            return Some(cq);
        }
        self.positives
            .iter()
            .chain(self.negatives.iter())
            .find_map(|p| p.pattern.cq(key))
    }

    /// The positive version: core plus positive predicates as one QGP, with
    /// labels, constraints and counting quantifiers carried over. Negative
    /// predicates are excluded.
    pub fn positive_version(&self) -> Qgp {
        let mut q = self.core.clone();
        for p in &self.positives {
            for (id, node) in p.pattern.nodes() {
                if !q.contains_node(id) {
                    q.add_node(id, &node.label, node.constraint.clone());
                }
            }
            for (key, cq) in p.pattern.edges() {
                q.add_edge(&key.src, &key.dst, &key.label, *cq);
            }
        }
        q
    }

    /// Size metrics. Predicate sizes count each predicate's edges plus its
    /// non-focus nodes, so `total == positive_version().size() + neg` holds
    /// exactly.
    pub fn size(&self) -> SizeBreakdown {
        let part = |preds: &[FocusedQgp]| -> usize {
            preds
                .iter()
                .map(|p| p.pattern.edges().len() + p.pattern.nodes().len().saturating_sub(1))
                .sum()
        };
        let core = self.core.size();
        let pos = part(&self.positives);
        let neg = part(&self.negatives);
        SizeBreakdown {
            core,
            pos,
            neg,
            total: core + pos + neg,
        }
    }

    /// Structural validation. Returns every violated invariant; an empty
    /// list means the pattern is well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.core.nodes().is_empty() {
            out.push(Violation::EmptyCore);
        } else if !self.core.is_connected() {
            out.push(Violation::CoreNotConnected);
        }
        out.extend(self.core.structural_violations("core"));

        let core_ids: BTreeSet<&str> = self.core.nodes().keys().map(String::as_str).collect();
        let tagged: Vec<(&str, &FocusedQgp)> = self
            .positives
            .iter()
            .map(|p| ("positive", p))
            .chain(self.negatives.iter().map(|p| ("negative", p)))
            .collect();
        for (polarity, pred) in &tagged {
            let ctx = format!("{polarity} predicate on {}", pred.focus);
            if !core_ids.contains(pred.focus.as_str()) {
                out.push(Violation::FocusNotInCore {
                    focus: pred.focus.clone(),
                });
                continue;
            }
            if !pred.pattern.contains_node(&pred.focus) {
                out.push(Violation::FocusNotInPredicate {
                    focus: pred.focus.clone(),
                });
                continue;
            }
            if !pred.pattern.is_connected() {
                out.push(Violation::PredicateNotConnected {
                    focus: pred.focus.clone(),
                });
            }
            out.extend(pred.pattern.structural_violations(&ctx));
            // The focus is the only node shared with the core, and its label
            // and constraint must agree with the core's.
            for id in pred.pattern.nodes().keys() {
                if id != &pred.focus && core_ids.contains(id.as_str()) {
                    out.push(Violation::PredicateIntersectsCore {
                        focus: pred.focus.clone(),
                        node: id.clone(),
                    });
                }
            }
            if let (Some(core_node), Some(pred_node)) =
                (self.core.node(&pred.focus), pred.pattern.node(&pred.focus))
            {
                if core_node != pred_node {
                    out.push(Violation::FocusMismatch {
                        focus: pred.focus.clone(),
                    });
                }
            }
        }
        // Distinct predicates share no node ids except core focus ids.
        for i in 0..tagged.len() {
            for j in i + 1..tagged.len() {
                let (_, p) = tagged[i];
                let (_, q) = tagged[j];
                for id in p.pattern.nodes().keys() {
                    if q.pattern.contains_node(id) && !core_ids.contains(id.as_str()) {
                        out.push(Violation::PredicatesShareNode {
                            node: id.clone(),
                            focus_a: p.focus.clone(),
                            focus_b: q.focus.clone(),
                        });
                    }
                }
            }
        }
        out
    }
}

/// Node and edge counts of a CGP, split by core and predicate polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBreakdown {
    pub core: usize,
    pub pos: usize,
    pub neg: usize,
    pub total: usize,
}

/// A named structural invariant violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyCore,
    CoreNotConnected,
    CqBelowOne { context: String, edge: EdgeKey },
    DanglingEdge { edge: EdgeKey },
    BadConstraint { context: String, node: String, reason: String },
    FocusNotInCore { focus: String },
    FocusNotInPredicate { focus: String },
    PredicateNotConnected { focus: String },
    PredicateIntersectsCore { focus: String, node: String },
    FocusMismatch { focus: String },
    PredicatesShareNode { node: String, focus_a: String, focus_b: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyCore => write!(f, "core has no nodes"),
            Violation::CoreNotConnected => write!(f, "core not connected"),
            Violation::CqBelowOne { context, edge } => {
                write!(f, "CQ below 1 on {edge} ({context})")
            }
            Violation::DanglingEdge { edge } => write!(f, "edge endpoint missing: {edge}"),
            Violation::BadConstraint { context, node, reason } => {
                write!(f, "bad constraint on node {node} ({context}): {reason}")
            }
            Violation::FocusNotInCore { focus } => {
                write!(f, "predicate focus {focus} is not a core node")
            }
            Violation::FocusNotInPredicate { focus } => {
                write!(f, "predicate does not contain its focus {focus}")
            }
            Violation::PredicateNotConnected { focus } => {
                write!(f, "predicate on {focus} not connected")
            }
            Violation::PredicateIntersectsCore { focus, node } => {
                write!(f, "predicate intersects core beyond focus: {node} (focus {focus})")
            }
            Violation::FocusMismatch { focus } => {
                write!(f, "predicate focus {focus} disagrees with the core node")
            }
            Violation::PredicatesShareNode { node, focus_a, focus_b } => {
                write!(f, "predicates on {focus_a} and {focus_b} share node {node}")
            }
        }
    }
}
