//! Canonical serializers. Output is deterministic (sorted keys throughout),
//! so semantically equal values always serialize byte-identically, and
//! `parse(serialize(x)) == x`.

use std::fmt::Write as _;

use cgp_core::{
    AttributeAssignment, Cgp, ConstraintConjunction, DataGraph, EdgeKey, FocusedQgp, MatchResult,
    Qgp,
};

fn write_assignments(out: &mut String, attrs: &AttributeAssignment) {
    if attrs.0.is_empty() {
        return;
    }
    let parts: Vec<String> = attrs.0.iter().map(|(a, v)| format!("{a} = {v}")).collect();
    let _ = write!(out, " {{{}}}", parts.join(", "));
}

fn write_constraint(out: &mut String, c: &ConstraintConjunction) {
    if c.is_empty() {
        return;
    }
    let parts: Vec<String> = c
        .atoms()
        .iter()
        .map(|a| format!("{} {} {}", a.attr, a.op.symbol(), a.value))
        .collect();
    let _ = write!(out, " {{{}}}", parts.join(", "));
}

fn write_pattern_edge(out: &mut String, key: &EdgeKey, cq: u32) {
    let _ = write!(out, "edge {} -> {} : {}", key.src, key.dst, key.label);
    if cq != 1 {
        let _ = write!(out, " [{cq}]");
    }
    out.push('\n');
}

pub fn serialize_graph(name: &str, g: &DataGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {name}");
    for (id, node) in g.nodes() {
        let _ = write!(out, "node {id} : {}", node.label);
        write_assignments(&mut out, &node.attrs);
        out.push('\n');
    }
    for e in g.edges() {
        let _ = writeln!(out, "edge {} -> {} : {}", e.src, e.dst, e.label);
    }
    out
}

fn serialize_qgp_body(out: &mut String, q: &Qgp, skip_node: Option<&str>) {
    for (id, node) in q.nodes() {
        if Some(id.as_str()) == skip_node {
            continue;
        }
        let _ = write!(out, "node {id} : {}", node.label);
        write_constraint(out, &node.constraint);
        out.push('\n');
    }
    for (key, cq) in q.edges() {
        write_pattern_edge(out, key, *cq);
    }
}

pub fn serialize_pattern(name: &str, c: &Cgp) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pattern {name}");
    serialize_qgp_body(&mut out, &c.core, None);
    let mut block = |polarity: char, p: &FocusedQgp| {
        let _ = writeln!(out, "predicate {polarity} on {}", p.focus);
        serialize_qgp_body(&mut out, &p.pattern, Some(&p.focus));
        let _ = writeln!(out, "end");
    };
    for p in c.positives() {
        block('+', p);
    }
    for p in c.negatives() {
        block('-', p);
    }
    out
}

/// Canonical, sorted rendering of a match result. Carries node labels and
/// attribute values so a view graph is reconstructible from the text alone.
pub fn serialize_match_result(m: &MatchResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "result");
    for (core_node, matches) in &m.node_matches {
        let _ = writeln!(out, "matches node {core_node}");
        for (id, payload) in matches {
            let _ = write!(out, "node {id} : {}", payload.label);
            write_assignments(&mut out, &payload.attrs);
            out.push('\n');
        }
    }
    for (core_edge, pairs) in &m.edge_matches {
        let _ = writeln!(
            out,
            "matches edge {} -> {} : {}",
            core_edge.src, core_edge.dst, core_edge.label
        );
        for (src, dst) in pairs {
            let _ = writeln!(out, "edge {src} -> {dst} : {}", core_edge.label);
        }
    }
    out
}
