//! Hand-built pattern families over an academic-supervision vocabulary
//! (professors, PhD students, articles, projects). The `basic_*` family
//! exercises traditional containment verdicts; the `pred_*` family exercises
//! refinement and elimination of predicates. The verdicts these families
//! must produce are frozen in the unit and acceptance suites.

use crate::constraints::{Atom, AttributeAssignment, CmpOp, ConstraintConjunction, Value};
use crate::model::{Cgp, DataGraph, FocusedQgp, Qgp};

fn none() -> ConstraintConjunction {
    ConstraintConjunction::none()
}

fn ge(attr: &str, v: i64) -> ConstraintConjunction {
    ConstraintConjunction(vec![Atom {
        attr: attr.into(),
        op: CmpOp::Ge,
        value: Value::Int(v),
    }])
}

fn gt(attr: &str, v: i64) -> ConstraintConjunction {
    ConstraintConjunction(vec![Atom {
        attr: attr.into(),
        op: CmpOp::Gt,
        value: Value::Int(v),
    }])
}

fn ge_and_eq(attr: &str, v: i64, sattr: &str, s: &str) -> ConstraintConjunction {
    ConstraintConjunction(vec![
        Atom {
            attr: attr.into(),
            op: CmpOp::Ge,
            value: Value::Int(v),
        },
        Atom {
            attr: sattr.into(),
            op: CmpOp::Eq,
            value: Value::Str(s.into()),
        },
    ])
}

/// Professors (age >= 45) supervising at least two PhD students, each having
/// published at least two articles (as a positive predicate).
pub fn basic_c1() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a1", "Pr", ge("age", 45));
    core.add_node("b1", "PhD", none());
    core.add_edge("a1", "b1", "supervised", 2);
    let mut p = Qgp::new();
    p.add_node("b1", "PhD", none());
    p.add_node("c1", "Article", none());
    p.add_edge("b1", "c1", "published", 2);
    Cgp::new(core, vec![FocusedQgp::new(p, "b1")], vec![])
}

/// Like `basic_c1` but the students only need one published article.
pub fn basic_c2() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a2", "Pr", ge("age", 45));
    core.add_node("b2", "PhD", none());
    core.add_edge("a2", "b2", "supervised", 2);
    let mut p = Qgp::new();
    p.add_node("b2", "PhD", none());
    p.add_node("c2", "Article", none());
    p.add_edge("b2", "c2", "published", 1);
    Cgp::new(core, vec![FocusedQgp::new(p, "b2")], vec![])
}

/// Students must be member of a project, required as a predicate: the
/// projects themselves are not returned.
pub fn basic_c3() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a3", "Pr", ge("age", 45));
    core.add_node("b3", "PhD", none());
    core.add_edge("a3", "b3", "supervised", 2);
    let mut p = Qgp::new();
    p.add_node("b3", "PhD", none());
    p.add_node("c3", "Project", none());
    p.add_edge("b3", "c3", "member", 1);
    Cgp::new(core, vec![FocusedQgp::new(p, "b3")], vec![])
}

/// Predicate-free: professors with students and their projects, all
/// returned as part of the result.
pub fn basic_c4() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a4", "Pr", none());
    core.add_node("b4", "PhD", none());
    core.add_node("c4", "Project", none());
    core.add_edge("a4", "b4", "supervised", 2);
    core.add_edge("b4", "c4", "member", 1);
    Cgp::from_qgp(core)
}

/// Female professors whose students both published twice and joined at
/// least three projects; two predicates over the same student node.
pub fn basic_c5() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a5", "Pr", ge_and_eq("age", 45, "gender", "female"));
    core.add_node("b5", "PhD", none());
    core.add_edge("a5", "b5", "supervised", 2);
    let mut p1 = Qgp::new();
    p1.add_node("b5", "PhD", none());
    p1.add_node("art5", "Article", none());
    p1.add_edge("b5", "art5", "published", 2);
    let mut p2 = Qgp::new();
    p2.add_node("b5", "PhD", none());
    p2.add_node("p5", "Project", none());
    p2.add_edge("b5", "p5", "member", 3);
    Cgp::new(
        core,
        vec![FocusedQgp::new(p1, "b5"), FocusedQgp::new(p2, "b5")],
        vec![],
    )
}

/// Single-node core with one three-branch positive predicate: professors
/// (age > 45) supervising two students that are project members and have
/// published twice.
pub fn pred_c1() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a1", "Pr", gt("age", 45));
    let mut p = Qgp::new();
    p.add_node("a1", "Pr", gt("age", 45));
    p.add_node("b1", "PhD", none());
    p.add_node("c1", "Project", none());
    p.add_node("d1", "Article", none());
    p.add_edge("a1", "b1", "supervised", 2);
    p.add_edge("b1", "c1", "member", 1);
    p.add_edge("b1", "d1", "published", 2);
    Cgp::new(core, vec![FocusedQgp::new(p, "a1")], vec![])
}

/// Everything in the core: refinement covers all of `pred_c1`'s predicate.
pub fn pred_c2() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a2", "Pr", ge("age", 45));
    core.add_node("b2", "PhD", none());
    core.add_node("c2", "Project", none());
    core.add_node("d2", "Article", none());
    core.add_edge("a2", "b2", "supervised", 2);
    core.add_edge("b2", "c2", "member", 1);
    core.add_edge("b2", "d2", "published", 1);
    Cgp::from_qgp(core)
}

/// Same predicate as `pred_c1` over a weaker focus constraint: the whole
/// predicate eliminates and only the age refinement remains.
pub fn pred_c3() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a3", "Pr", ge("age", 45));
    let mut p = Qgp::new();
    p.add_node("a3", "Pr", ge("age", 45));
    p.add_node("b3", "PhD", none());
    p.add_node("c3", "Project", none());
    p.add_node("d3", "Article", none());
    p.add_edge("a3", "b3", "supervised", 2);
    p.add_edge("b3", "c3", "member", 1);
    p.add_edge("b3", "d3", "published", 2);
    Cgp::new(core, vec![FocusedQgp::new(p, "a3")], vec![])
}

/// Two student roles in the core: one with its projects returned, a second
/// one constrained by a publication predicate. Extraction combines
/// refinement over the first with elimination over the second.
pub fn pred_c4() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a4", "Pr", ge("age", 45));
    core.add_node("b4", "PhD", none());
    core.add_node("d4", "PhD", none());
    core.add_node("c4", "Project", none());
    core.add_edge("a4", "b4", "supervised", 2);
    core.add_edge("a4", "d4", "supervised", 2);
    core.add_edge("b4", "c4", "member", 1);
    let mut p = Qgp::new();
    p.add_node("d4", "PhD", none());
    p.add_node("e4", "Article", none());
    p.add_edge("d4", "e4", "published", 2);
    Cgp::new(core, vec![FocusedQgp::new(p, "d4")], vec![])
}

/// The `pred_c1` predicate split into two predicates sharing only the
/// focus; eliminating the parts separately would lose the connection
/// between them.
pub fn pred_c5() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a5", "Pr", ge("age", 45));
    let mut p1 = Qgp::new();
    p1.add_node("a5", "Pr", ge("age", 45));
    p1.add_node("b5a", "PhD", none());
    p1.add_node("c5a", "Project", none());
    p1.add_edge("a5", "b5a", "supervised", 2);
    p1.add_edge("b5a", "c5a", "member", 1);
    let mut p2 = Qgp::new();
    p2.add_node("a5", "Pr", ge("age", 45));
    p2.add_node("b5b", "PhD", none());
    p2.add_node("d5b", "Article", none());
    p2.add_edge("a5", "b5b", "supervised", 2);
    p2.add_edge("b5b", "d5b", "published", 2);
    Cgp::new(
        core,
        vec![FocusedQgp::new(p1, "a5"), FocusedQgp::new(p2, "a5")],
        vec![],
    )
}

/// One negative predicate forbidding students that are in a project AND
/// have published.
pub fn pred_c6() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a6", "Pr", ge("age", 45));
    core.add_node("b6", "PhD", none());
    core.add_edge("a6", "b6", "supervised", 2);
    let mut p = Qgp::new();
    p.add_node("b6", "PhD", none());
    p.add_node("f6", "Project", none());
    p.add_node("g6", "Article", none());
    p.add_edge("b6", "f6", "member", 1);
    p.add_edge("b6", "g6", "published", 1);
    Cgp::new(core, vec![], vec![FocusedQgp::new(p, "b6")])
}

/// The same condition split into two negative predicates, which forbids
/// each part separately; a conjunction of negated parts means something
/// else than negating the conjunction.
pub fn pred_c7() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a7", "Pr", ge("age", 45));
    core.add_node("b7", "PhD", none());
    core.add_edge("a7", "b7", "supervised", 2);
    let mut p1 = Qgp::new();
    p1.add_node("b7", "PhD", none());
    p1.add_node("f7", "Project", none());
    p1.add_edge("b7", "f7", "member", 1);
    let mut p2 = Qgp::new();
    p2.add_node("b7", "PhD", none());
    p2.add_node("g7", "Article", none());
    p2.add_edge("b7", "g7", "published", 1);
    Cgp::new(
        core,
        vec![],
        vec![FocusedQgp::new(p1, "b7"), FocusedQgp::new(p2, "b7")],
    )
}

/// Students with at least one but fewer than three published articles:
/// a positive and a negative predicate over the same focus.
pub fn pred_c8() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a8", "Pr", ge("age", 45));
    core.add_node("b8", "PhD", none());
    core.add_edge("a8", "b8", "supervised", 2);
    let mut pos = Qgp::new();
    pos.add_node("b8", "PhD", none());
    pos.add_node("c8", "Article", none());
    pos.add_edge("b8", "c8", "published", 1);
    let mut neg = Qgp::new();
    neg.add_node("b8", "PhD", none());
    neg.add_node("d8", "Article", none());
    neg.add_edge("b8", "d8", "published", 3);
    Cgp::new(
        core,
        vec![FocusedQgp::new(pos, "b8")],
        vec![FocusedQgp::new(neg, "b8")],
    )
}

/// Publication chain looking for older professors (age > 50).
pub fn pred_c9() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a9", "Pr", gt("age", 50));
    core.add_node("b9", "PhD", none());
    core.add_node("c9", "Article", none());
    core.add_edge("a9", "b9", "supervised", 2);
    core.add_edge("b9", "c9", "published", 1);
    Cgp::from_qgp(core)
}

/// The same chain with the broader age bound.
pub fn pred_c10() -> Cgp {
    let mut core = Qgp::new();
    core.add_node("a10", "Pr", ge("age", 45));
    core.add_node("b10", "PhD", none());
    core.add_node("c10", "Article", none());
    core.add_edge("a10", "b10", "supervised", 2);
    core.add_edge("b10", "c10", "published", 1);
    Cgp::from_qgp(core)
}

/// Every fixture pattern.
pub fn all() -> Vec<Cgp> {
    vec![
        basic_c1(),
        basic_c2(),
        basic_c3(),
        basic_c4(),
        basic_c5(),
        pred_c1(),
        pred_c2(),
        pred_c3(),
        pred_c4(),
        pred_c5(),
        pred_c6(),
        pred_c7(),
        pred_c8(),
        pred_c9(),
        pred_c10(),
    ]
}

/// Three professors with different ages and student rosters; distinguishes
/// every pattern of the `pred_*` family. Students keep their articles and
/// projects; one student has three articles to trip the publication cap of
/// `pred_c8`.
pub fn pred_family_graph() -> DataGraph {
    let mut g = DataGraph::new();
    let prof = |g: &mut DataGraph, id: &str, age: i64| {
        g.add_node(id, "Pr", AttributeAssignment::new().set("age", Value::Int(age)));
    };
    prof(&mut g, "P1", 50);
    prof(&mut g, "P2", 45);
    prof(&mut g, "P3", 45);
    for s in ["S1", "S2", "S3", "S4", "S5", "S6"] {
        g.add_node(s, "PhD", AttributeAssignment::new());
    }
    for (i, s) in ["S1", "S2", "S3", "S4", "S5", "S6"].iter().enumerate() {
        let pj = format!("PJ{}", i + 1);
        g.add_node(&pj, "Project", AttributeAssignment::new());
        g.add_edge(s, &pj, "member");
    }
    for (p, students) in [("P1", ["S1", "S2"]), ("P2", ["S3", "S4"]), ("P3", ["S5", "S6"])] {
        for s in students {
            g.add_edge(p, s, "supervised");
        }
    }
    let publications = [
        ("S1", 2),
        ("S2", 3), // three articles: outside pred_c8's cap
        ("S3", 1),
        ("S4", 2),
        ("S5", 2),
        ("S6", 2),
    ];
    for (s, count) in publications {
        for i in 0..count {
            let a = format!("A_{s}_{i}");
            g.add_node(&a, "Article", AttributeAssignment::new());
            g.add_edge(s, &a, "published");
        }
    }
    g
}
