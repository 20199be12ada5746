//! Pattern-only matching: does one QGP satisfy all constraints of another,
//! with no data graph involved? A pair `(u1, u2)` survives when `u1`'s label
//! equals `u2`'s, `u1`'s attribute constraints imply `u2`'s, every incoming
//! edge of `u2` has a label-equal incoming edge of `u1` with related sources,
//! and every outgoing edge of `u2` has an outgoing edge of `u1` with related
//! targets and at least as large a counting quantifier. The verdict is
//! positive when every node of the second pattern keeps a match.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::constraints::implies;
use crate::model::Qgp;
use crate::relation::Relation;

/// Maximum match relation from nodes of the first pattern to nodes of the
/// second.
pub type PatternMatchRelation = Relation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PomError {
    #[error("invalid seed pair: ({left}, {right})")]
    InvalidSeedPair { left: String, right: String },
}

/// Label equality plus attribute implication.
fn node_compatible(q1: &Qgp, q2: &Qgp, u1: &str, u2: &str) -> bool {
    match (q1.node(u1), q2.node(u2)) {
        (Some(n1), Some(n2)) => n1.label == n2.label && implies(&n1.constraint, &n2.constraint),
        _ => false,
    }
}

fn compatibility_relation(q1: &Qgp, q2: &Qgp) -> Relation {
    let mut rel = Relation::new();
    for u1 in q1.nodes().keys() {
        for u2 in q2.nodes().keys() {
            if node_compatible(q1, q2, u1, u2) {
                rel.insert(u1, u2);
            }
        }
    }
    rel
}

/// Fixpoint removal over a worklist of pairs: a removed pair re-queues the
/// pairs over its neighbors, whose conditions may have relied on it. Ends
/// with the coverage check: every node of `q2` must retain a match.
fn run_fixpoint(q1: &Qgp, q2: &Qgp, mut rel: Relation) -> Option<Relation> {
    let pair_ok = |rel: &Relation, u1: &str, u2: &str| -> bool {
        for (e2, _) in q2.in_edges(u2) {
            let found = q1
                .in_edges(u1)
                .any(|(e1, _)| e1.label == e2.label && rel.contains(&e1.src, &e2.src));
            if !found {
                return false;
            }
        }
        for (e2, cq2) in q2.out_edges(u2) {
            let found = q1
                .out_edges(u1)
                .any(|(e1, cq1)| e1.label == e2.label && cq1 >= cq2 && rel.contains(&e1.dst, &e2.dst));
            if !found {
                return false;
            }
        }
        true
    };

    let mut queue: VecDeque<(String, String)> = rel
        .pairs()
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    let mut queued: BTreeSet<(String, String)> = queue.iter().cloned().collect();
    while let Some((u1, u2)) = queue.pop_front() {
        queued.remove(&(u1.clone(), u2.clone()));
        if !rel.contains(&u1, &u2) || pair_ok(&rel, &u1, &u2) {
            continue;
        }
        rel.remove(&u1, &u2);
        // Pairs whose witness may have been (u1, u2): both components
        // adjacent to the removed ones.
        let n2: BTreeSet<&String> = q2
            .in_edges(&u2)
            .map(|(e, _)| &e.src)
            .chain(q2.out_edges(&u2).map(|(e, _)| &e.dst))
            .collect();
        let n1: BTreeSet<&String> = q1
            .in_edges(&u1)
            .map(|(e, _)| &e.src)
            .chain(q1.out_edges(&u1).map(|(e, _)| &e.dst))
            .collect();
        for w1 in &n1 {
            for w2 in &n2 {
                if rel.contains(w1, w2) {
                    let key = ((*w1).clone(), (*w2).clone());
                    if queued.insert(key.clone()) {
                        queue.push_back(key);
                    }
                }
            }
        }
    }
    if q2.nodes().keys().all(|u2| rel.pairs().any(|(_, r)| r == u2)) {
        Some(rel)
    } else {
        None
    }
}

/// Maximum relation witnessing that `q1` matches all constraints of `q2`,
/// or `None` when no such relation exists.
pub fn pom(q1: &Qgp, q2: &Qgp) -> Option<PatternMatchRelation> {
    run_fixpoint(q1, q2, compatibility_relation(q1, q2))
}

/// Same fixpoint as [`pom`] but started from `seed` instead of the full
/// compatibility relation. Every seed pair must be label/attribute
/// compatible.
pub fn pom_seeded(
    q1: &Qgp,
    q2: &Qgp,
    seed: &PatternMatchRelation,
) -> Result<Option<PatternMatchRelation>, PomError> {
    for (u1, u2) in seed.pairs() {
        if !node_compatible(q1, q2, u1, u2) {
            return Err(PomError::InvalidSeedPair {
                left: u1.clone(),
                right: u2.clone(),
            });
        }
    }
    Ok(run_fixpoint(q1, q2, seed.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::ConstraintConjunction;
    use crate::testkit::fixtures;

    fn chain(labels: &[&str], edge_label: &str, cq: u32) -> Qgp {
        let mut q = Qgp::new();
        for (i, l) in labels.iter().enumerate() {
            q.add_node(&format!("n{i}"), l, ConstraintConjunction::none());
        }
        for i in 1..labels.len() {
            q.add_edge(&format!("n{}", i - 1), &format!("n{i}"), edge_label, cq);
        }
        q
    }

    #[test]
    fn pom_is_reflexive() {
        let q = chain(&["A", "B", "C"], "r", 2);
        let rel = pom(&q, &q).unwrap();
        for u in q.nodes().keys() {
            assert!(rel.contains(u, u));
        }
    }

    #[test]
    fn pom_supervision_example_both_directions() {
        // The five-pattern supervision family: the specialized pattern
        // matches the general one's constraints but not vice versa.
        let c1 = fixtures::basic_c1();
        let c5 = fixtures::basic_c5();
        let rel = pom(&c5.positive_version(), &c1.positive_version()).unwrap();
        assert!(rel.contains("a5", "a1"));
        assert!(rel.contains("b5", "b1"));
        assert!(rel.contains("art5", "c1"));
        assert_eq!(pom(&c1.positive_version(), &c5.positive_version()), None);
    }

    #[test]
    fn pom_seeded_is_stable_on_fixpoints() {
        let q1 = fixtures::basic_c5().positive_version();
        let q2 = fixtures::basic_c1().positive_version();
        let rel = pom(&q1, &q2).unwrap();
        assert_eq!(pom_seeded(&q1, &q2, &rel).unwrap().unwrap(), rel);
    }

    #[test]
    fn pom_seeded_from_full_compatibility_equals_pom() {
        let q1 = fixtures::basic_c3().positive_version();
        let q2 = fixtures::basic_c4().positive_version();
        let full = compatibility_relation(&q1, &q2);
        assert_eq!(pom_seeded(&q1, &q2, &full).unwrap(), pom(&q1, &q2));
    }

    #[test]
    fn pom_seeded_missing_matches_empties() {
        let q = chain(&["A", "B"], "r", 1);
        let mut seed = Relation::new();
        seed.insert("n0", "n0"); // n1 left without any seed match
        assert_eq!(pom_seeded(&q, &q, &seed).unwrap(), None);
    }

    #[test]
    fn pom_seeded_rejects_incompatible_pair() {
        let q = chain(&["A", "B"], "r", 1);
        let mut seed = Relation::new();
        seed.insert("n0", "n1");
        assert!(pom_seeded(&q, &q, &seed).is_err());
    }

    #[test]
    fn seeded_result_is_subset_of_seed() {
        let q1 = fixtures::basic_c5().positive_version();
        let q2 = fixtures::basic_c4().positive_version();
        let full = compatibility_relation(&q1, &q2);
        if let Some(rel) = pom_seeded(&q1, &q2, &full).unwrap() {
            assert!(rel.is_subset_of(&full));
        }
    }
}
