//! Acceptance suite: every criterion the library must meet, one test per
//! criterion, each printing a PASS line with its measured evidence. Run with
//! `cargo test -p cgp-core --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cgp_core::constraints::{normalize, satisfies, Atom, AttributeAssignment, CmpOp, ConstraintConjunction, Value};
use cgp_core::testkit::{
    brute_cond_sim, brute_pom, brute_qgp_sim, brute_rels, derived_variant, gen_cgp, gen_graph,
    materialize, relabel_cgp, relabel_graph, s_positive_variant, scaling_pair, GenParams,
};
use cgp_core::testkit::fixtures;
use cgp_core::{
    cond_sim, focus_equivalent, pom, qgp_sim, sc_match, t_contained, Cgp, DataGraph, EdgeKey,
    FocusedQgp, Relation,
};
use cgp_core::strongc::{extract_rels, s_contained};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn union_graphs(a: &DataGraph, b: &DataGraph) -> DataGraph {
    let mut out = a.clone();
    for (id, node) in b.nodes() {
        out.add_node(id, &node.label, node.attrs.clone());
    }
    for e in b.edges() {
        out.add_edge(&e.src, &e.dst, &e.label);
    }
    out
}

/// Instance generator shared by the random-pair criteria: a base pattern, a
/// variant, and a data graph seeded with a materialization of the variant.
fn instance(seed: u64, strong: bool) -> (Cgp, Cgp, DataGraph) {
    let params = GenParams::small(seed);
    let c2 = gen_cgp(&params);
    let c1 = if strong {
        s_positive_variant(&c2, seed.wrapping_mul(31).wrapping_add(7))
    } else {
        derived_variant(&c2, seed.wrapping_mul(31).wrapping_add(7))
    };
    let mut g = materialize(&c1.positive_version(), seed, "m");
    if seed % 3 == 0 {
        g = union_graphs(&g, &materialize(&c2.positive_version(), seed, "w"));
    }
    let g = cgp_core::testkit::add_noise(&g, &params, seed.wrapping_add(99));
    (c1, c2, g)
}

#[test]
fn criterion_1_traditional_containment_fixtures() {
    let started = Instant::now();
    let c1 = fixtures::basic_c1();
    let c2 = fixtures::basic_c2();
    let c3 = fixtures::basic_c3();
    let c4 = fixtures::basic_c4();
    let c5 = fixtures::basic_c5();

    let (mapping, _) = t_contained(&c1, &c2).expect("C1 contained in C2");
    assert_eq!(mapping.nodes["a1"], BTreeSet::from(["a2".to_string()]));
    assert_eq!(mapping.nodes["b1"], BTreeSet::from(["b2".to_string()]));
    assert_eq!(
        mapping.edges[&EdgeKey::new("a1", "b1", "supervised")],
        BTreeSet::from([EdgeKey::new("a2", "b2", "supervised")])
    );
    assert!(t_contained(&c3, &c4).is_some(), "C3 contained in C4");
    assert!(t_contained(&c5, &c1).is_some(), "C5 contained in C1");
    assert!(t_contained(&c5, &c3).is_some(), "C5 contained in C3");
    assert!(t_contained(&c5, &c4).is_some(), "C5 contained in C4");
    assert!(t_contained(&c4, &c3).is_none(), "C4 not contained in C3");

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("PASS criterion 1: six traditional-containment verdicts with the exact mapping, in {elapsed:?}");
}

#[test]
fn criterion_2_strong_containment_fixtures() {
    let c1 = fixtures::pred_c1();
    assert!(s_contained(&c1, &fixtures::pred_c2()).is_some());
    assert!(s_contained(&c1, &fixtures::pred_c3()).is_some());
    assert!(s_contained(&c1, &fixtures::pred_c4()).is_some());
    assert!(s_contained(&c1, &fixtures::pred_c5()).is_none());
    assert!(s_contained(&fixtures::pred_c7(), &fixtures::pred_c6()).is_none());
    assert!(s_contained(&fixtures::pred_c8(), &fixtures::pred_c10()).is_some());

    // Element-for-element refinement and elimination for the combined case.
    let c4 = fixtures::pred_c4();
    let (_, s) = t_contained(&c1, &c4).unwrap();
    let rels = extract_rels(&c1, &c4, &s);
    let expected_r_plus: BTreeSet<(EdgeKey, EdgeKey)> = BTreeSet::from([
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
    ]);
    assert_eq!(rels.r_plus, expected_r_plus);
    let fragments: Vec<_> = rels.e_plus.iter().collect();
    assert_eq!(fragments.len(), 1);
    let (frag, target) = fragments[0];
    assert_eq!(target, "d4");
    assert_eq!(frag.center, "b1");
    assert_eq!(frag.edges, BTreeSet::from([EdgeKey::new("b1", "d1", "published")]));
    assert!(rels.r_minus.is_empty() && rels.e_minus.is_empty());

    // Query-focus equivalence: equal up to the focus constraint at the
    // professor end, inequivalent at the article end.
    let c9 = fixtures::pred_c9();
    let c10 = fixtures::pred_c10();
    assert!(focus_equivalent(
        &FocusedQgp::new(c9.core.clone(), "a9"),
        &FocusedQgp::new(c10.core.clone(), "a10"),
    ));
    assert!(!focus_equivalent(
        &FocusedQgp::new(c9.core.clone(), "c9"),
        &FocusedQgp::new(c10.core.clone(), "c10"),
    ));
    assert!(!cgp_core::equivalent_cgp(&c9, &c10));

    println!("PASS criterion 2: strong-containment verdicts, exact refinement/elimination sets, focus-equivalence verdicts");
}

#[test]
fn criterion_3_extraction_equals_direct_matching() {
    let started = Instant::now();
    let mut checked = 0u32;
    let mut nonempty = 0u32;
    let mut seed = 0u64;
    while checked < 500 {
        seed += 1;
        assert!(seed < 200_000, "generator starved at {checked} instances");
        let (c1, c2, g) = instance(seed, true);
        if g.nodes().len() > 60 {
            continue;
        }
        let Some(sc) = s_contained(&c1, &c2) else { continue };
        let direct = cond_sim(&c1, &g).map(|(_, m)| m);
        match cond_sim(&c2, &g) {
            None => {
                // Containment: no matches of the containing pattern means no
                // matches of the contained one either.
                assert_eq!(direct, None, "seed {seed}");
                continue;
            }
            Some((_, m2)) => {
                let extracted = sc_match(&c1, &c2, &sc.mapping, &sc.r_plus, &sc.r_minus, &m2)
                    .expect("consistent inputs");
                assert_eq!(extracted, direct, "seed {seed}: extraction diverged");
                if extracted.is_some() {
                    nonempty += 1;
                }
                checked += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!("PASS criterion 3: {checked} extractions equal direct matching ({nonempty} with non-empty results) in {elapsed:?}");
}

#[test]
fn criterion_4_containment_soundness() {
    let mut checked = 0u32;
    let mut seed = 1_000_000u64;
    while checked < 500 {
        seed += 1;
        assert!(seed < 1_200_000, "generator starved at {checked} instances");
        let (c1, c2, g) = instance(seed, seed % 2 == 0);
        let Some((mapping, _)) = t_contained(&c1, &c2) else { continue };
        let m1 = cond_sim(&c1, &g).map(|(_, m)| m);
        let m2 = cond_sim(&c2, &g).map(|(_, m)| m);
        match (m1, m2) {
            (Some(m1), Some(m2)) => {
                for (u, image) in &mapping.nodes {
                    let mine = m1.node_ids(u);
                    let union: BTreeSet<String> =
                        image.iter().flat_map(|u2| m2.node_ids(u2)).collect();
                    let inter = image
                        .iter()
                        .map(|u2| m2.node_ids(u2))
                        .reduce(|a, b| a.intersection(&b).cloned().collect())
                        .unwrap_or_default();
                    assert!(mine.is_subset(&union), "seed {seed}: node {u} not in union");
                    assert!(mine.is_subset(&inter), "seed {seed}: node {u} not in intersection");
                }
                for (e, image) in &mapping.edges {
                    let mine = m1.edge_pairs(e);
                    let union: BTreeSet<(String, String)> =
                        image.iter().flat_map(|e2| m2.edge_pairs(e2)).collect();
                    let inter = image
                        .iter()
                        .map(|e2| m2.edge_pairs(e2))
                        .reduce(|a, b| a.intersection(&b).cloned().collect())
                        .unwrap_or_default();
                    assert!(mine.is_subset(&union), "seed {seed}: edge {e} not in union");
                    assert!(mine.is_subset(&inter), "seed {seed}: edge {e} not in intersection");
                }
                checked += 1;
            }
            (Some(_), None) => panic!("seed {seed}: contained pattern matched where the containing one did not"),
            _ => continue,
        }
    }
    println!("PASS criterion 4: {checked} instances with every match set inside both the union and the intersection of its images");
}

#[test]
fn criterion_5_determinism_and_uniqueness() {
    // Relabeled runs: a consistent renaming of all node ids must yield the
    // renamed relation, for each engine.
    for seed in 0..200u64 {
        let params = GenParams::small(seed);
        let c = gen_cgp(&params);
        let q = c.positive_version();
        let g = cgp_core::testkit::add_noise(&materialize(&q, seed, "m"), &params, seed);

        let (g2, gmap) = relabel_graph(&g, seed);
        let (c2, pmap) = relabel_cgp(&c, seed);

        let expect = |rel: &Relation| -> Relation {
            rel.pairs()
                .map(|(u, v)| (pmap[u].clone(), gmap[v].clone()))
                .collect()
        };
        let r1 = qgp_sim(&c.positive_version(), &g);
        let r2 = qgp_sim(&c2.positive_version(), &g2);
        assert_eq!(r1.as_ref().map(expect), r2, "qgp_sim seed {seed}");

        let s1 = cond_sim(&c, &g).map(|(rel, _)| rel);
        let s2 = cond_sim(&c2, &g2).map(|(rel, _)| rel);
        assert_eq!(s1.as_ref().map(expect), s2, "cond_sim seed {seed}");

        let other = gen_cgp(&GenParams::small(seed.wrapping_add(555))).positive_version();
        let (other2, omap) = relabel_cgp(&Cgp::from_qgp(other.clone()), seed);
        let p1 = pom(&q, &other);
        let p2 = pom(&c2.positive_version(), &other2.core);
        let expect_pom = |rel: &Relation| -> Relation {
            rel.pairs()
                .map(|(u, v)| (pmap[u].clone(), omap[v].clone()))
                .collect()
        };
        assert_eq!(p1.as_ref().map(expect_pom), p2, "pom seed {seed}");
    }

    // Exhaustive-scale instances: the fixpoint relation equals the union of
    // all valid relations found by subset search.
    let mut qgp_checked = 0u32;
    let mut cond_checked = 0u32;
    let mut pom_checked = 0u32;
    let mut seed = 5_000u64;
    while qgp_checked < 200 || cond_checked < 200 || pom_checked < 200 {
        seed += 1;
        assert!(seed < 200_000, "oracle generator starved");
        let c = gen_cgp(&GenParams::tiny(seed));
        let mut gp = GenParams::tiny(seed.wrapping_add(1));
        gp.nodes = (2, 5);
        gp.edge_density = 0.3;
        let g = gen_graph(&gp);
        if qgp_checked < 200 {
            if let Ok(oracle) = brute_qgp_sim(&c.core, &g) {
                assert_eq!(qgp_sim(&c.core, &g), oracle, "qgp_sim oracle seed {seed}");
                qgp_checked += 1;
            }
        }
        if cond_checked < 200 {
            if let Ok(oracle) = brute_cond_sim(&c, &g) {
                assert_eq!(
                    cond_sim(&c, &g).map(|(rel, _)| rel),
                    oracle,
                    "cond_sim oracle seed {seed}"
                );
                cond_checked += 1;
            }
        }
        if pom_checked < 200 {
            let q2 = gen_cgp(&GenParams::tiny(seed.wrapping_add(77))).positive_version();
            if let Ok(oracle) = brute_pom(&c.positive_version(), &q2) {
                assert_eq!(pom(&c.positive_version(), &q2), oracle, "pom oracle seed {seed}");
                pom_checked += 1;
            }
        }
    }
    println!("PASS criterion 5: 200 relabeled runs per engine identical; {qgp_checked}/{cond_checked}/{pom_checked} exhaustive oracle agreements");
}

#[test]
fn criterion_6_extraction_oracle() {
    let mut checked = 0u32;
    let mut seed = 40_000u64;
    while checked < 200 {
        seed += 1;
        assert!(seed < 400_000, "generator starved at {checked} instances");
        let mut params = GenParams::small(seed);
        params.predicates = (1, 3);
        params.predicate_size = (1, 2);
        let c2 = gen_cgp(&params);
        let c1 = if seed % 2 == 0 {
            s_positive_variant(&c2, seed)
        } else {
            derived_variant(&c2, seed)
        };
        if c1.positive_edges().len() + c1.negative_edges().len() > 8 {
            continue;
        }
        let Some((_, s)) = t_contained(&c1, &c2) else { continue };
        let Ok(oracle) = brute_rels(&c1, &c2, &s) else { continue };
        assert_eq!(extract_rels(&c1, &c2, &s), oracle, "seed {seed}");
        checked += 1;
    }
    println!("PASS criterion 6: {checked} extraction instances equal the literal enumeration (paths and edge subsets)");
}

#[test]
fn criterion_7_implication_oracle() {
    const PAD: i64 = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let random_conj = |rng: &mut ChaCha8Rng| -> ConstraintConjunction {
        let n = rng.gen_range(1..=4);
        let atoms = (0..n)
            .map(|_| {
                let attr = format!("t{}", rng.gen_range(0..2));
                let value = Value::Int(rng.gen_range(0..=31));
                let op = match rng.gen_range(0..6) {
                    0 => CmpOp::Ge,
                    1 => CmpOp::Le,
                    2 => CmpOp::Eq,
                    3 => CmpOp::Ne,
                    4 => CmpOp::Gt,
                    _ => CmpOp::Lt,
                };
                Atom { attr, op, value }
            })
            .collect();
        ConstraintConjunction(atoms)
    };
    // Exhaustive semantic implication over the integer grid spanning every
    // constant plus a margin, so no atom is an accidental tautology.
    let semantic_implies = |a: &ConstraintConjunction, b: &ConstraintConjunction| -> bool {
        let attrs: BTreeSet<&str> = a.attrs().union(&b.attrs()).cloned().collect();
        let attrs: Vec<&str> = attrs.into_iter().collect();
        let lo = -PAD;
        let hi = 31 + PAD;
        let width = (hi - lo + 1) as usize;
        let total = width.pow(attrs.len() as u32);
        for idx in 0..total {
            let mut assignment = AttributeAssignment::new();
            let mut rest = idx;
            for attr in &attrs {
                let v = lo + (rest % width) as i64;
                rest /= width;
                assignment = assignment.set(attr, Value::Int(v));
            }
            if satisfies(&assignment, a).unwrap() && !satisfies(&assignment, b).unwrap() {
                return false;
            }
        }
        true
    };

    let mut checked = 0u32;
    let mut positive = 0u32;
    while checked < 1000 {
        let a = random_conj(&mut rng);
        let b = random_conj(&mut rng);
        if normalize(&a).is_err() || normalize(&b).is_err() {
            continue;
        }
        let symbolic = cgp_core::constraints::implies(&a, &b);
        let semantic = semantic_implies(&a, &b);
        assert_eq!(symbolic, semantic, "implies({a:?}, {b:?})");
        if symbolic {
            positive += 1;
        }
        checked += 1;
    }
    assert!(positive > 0, "degenerate sample: no positive implications seen");
    println!("PASS criterion 7: {checked} conjunction pairs agree with the exhaustive check ({positive} positive verdicts)");
}

#[test]
fn criterion_8_complexity_smoke() {
    // Median of five samples; each sample repeats the call enough times to
    // dwarf timer noise.
    fn median_time(mut f: impl FnMut()) -> Duration {
        let mut samples = Vec::new();
        for _ in 0..5 {
            let reps = 3;
            let start = Instant::now();
            for _ in 0..reps {
                f();
            }
            samples.push(start.elapsed() / reps);
        }
        samples.sort();
        samples[2]
    }

    let sizes = [64usize, 128, 256];
    let pairs: Vec<(Cgp, Cgp)> = sizes.iter().map(|n| scaling_pair(*n)).collect();
    for (c1, c2) in &pairs {
        assert!(s_contained(c1, c2).is_some(), "scaling family must stay strongly contained");
    }
    let t_times: Vec<Duration> = pairs
        .iter()
        .map(|(c1, c2)| median_time(|| assert!(t_contained(c1, c2).is_some())))
        .collect();
    let s_times: Vec<Duration> = pairs
        .iter()
        .map(|(c1, c2)| median_time(|| assert!(s_contained(c1, c2).is_some())))
        .collect();
    for w in t_times.windows(2) {
        let ratio = w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9);
        assert!(ratio <= 4.5, "t_contained doubling ratio {ratio:.2} exceeds 4.5 ({t_times:?})");
    }
    for w in s_times.windows(2) {
        let ratio = w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9);
        assert!(ratio <= 9.0, "s_contained doubling ratio {ratio:.2} exceeds 9.0 ({s_times:?})");
    }
    println!(
        "PASS criterion 8: doubling trends within bounds (t_contained {:?}, s_contained {:?})",
        t_times, s_times
    );
}

/// Long-running confidence sweep beyond criterion 3's quota; run on demand
/// with `cargo test -p cgp-core --test acceptance soak -- --ignored`.
#[test]
#[ignore = "long soak; criterion 3 covers the required quota"]
fn soak_extraction_exactness() {
    let mut checked = 0u32;
    let mut seed = 10_000_000u64;
    while checked < 3000 {
        seed += 1;
        let (c1, c2, g) = instance(seed, true);
        let Some(sc) = s_contained(&c1, &c2) else { continue };
        let direct = cond_sim(&c1, &g).map(|(_, m)| m);
        match cond_sim(&c2, &g) {
            None => assert_eq!(direct, None, "seed {seed}"),
            Some((_, m2)) => {
                let extracted = sc_match(&c1, &c2, &sc.mapping, &sc.r_plus, &sc.r_minus, &m2)
                    .expect("consistent inputs");
                assert_eq!(extracted, direct, "seed {seed}: extraction diverged");
                checked += 1;
            }
        }
    }
    println!("PASS soak: {checked} extractions equal direct matching");
}

#[test]
fn criterion_9_reflexivity_sweep() {
    for seed in 0..500u64 {
        let c = gen_cgp(&GenParams::small(seed));
        assert!(t_contained(&c, &c).is_some(), "seed {seed}: self containment");
        assert!(s_contained(&c, &c).is_some(), "seed {seed}: self strong containment");
    }
    println!("PASS criterion 9: 500 generated patterns contained and strongly contained in themselves");
}
