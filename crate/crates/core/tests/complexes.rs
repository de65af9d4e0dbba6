use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use lensphere::complexes::analysis::triangles;
use lensphere::complexes::build::neighborhood;
use lensphere::complexes::export::{from_json, to_dot, to_json};
use lensphere::complexes::graph::{EdgeClause, Payload};
use lensphere::complexes::{
    build_disk_complex, build_dual_tree, build_pprime_complex, build_primitive_complex, build_sphere_complex,
    find_cycles, is_forest, phi_v, verify, Census, ComplexGraph, Suite, Verdict,
};
use lensphere::splitting::{build_diagram, HandleSide};
use lensphere::surface::{intersection_number, CurveKey};
use lensphere::words::{is_primitive, FreeWord};

fn census(p: i64, q: i64, n: u32) -> Arc<Census> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64, u32), Arc<Census>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(p, q, n)) {
        return c.clone();
    }
    let c = Arc::new(Census::build(&build_diagram(p, q).unwrap(), n));
    cache.lock().unwrap().entry((p, q, n)).or_insert(c).clone()
}

fn keys(g: &ComplexGraph) -> BTreeSet<String> {
    g.vertices().iter().map(|v| v.key.clone()).collect()
}

fn edge_keys(g: &ComplexGraph) -> BTreeSet<(String, String)> {
    g.edges().map(|(&(a, b), _)| (g.vertex(a).key.clone(), g.vertex(b).key.clone())).collect()
}

/// Whether `small` is the subgraph of `big` induced on its vertex set.
fn is_induced(small: &ComplexGraph, big: &ComplexGraph) -> bool {
    let vs = keys(small);
    if !vs.is_subset(&keys(big)) {
        return false;
    }
    let restricted: BTreeSet<_> = edge_keys(big).into_iter().filter(|(a, b)| vs.contains(a) && vs.contains(b)).collect();
    restricted == edge_keys(small)
}

#[test]
fn seed_meridians_span_an_edge() {
    let c = census(3, 1, 6);
    let g = build_disk_complex(&c, HandleSide::V);
    let a1 = g.index_of(&c.diagram.alpha1().key().to_string()).unwrap();
    let a2 = g.index_of(&c.diagram.alpha2().key().to_string()).unwrap();
    assert!(g.has_edge(a1, a2));
    for t in g.two_simplices() {
        assert!(t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);
    }
    assert!(g.two_simplex_count() > 0);
}

#[test]
fn disk_complex_matches_intersection_numbers() {
    let c = census(2, 1, 4);
    let g = build_disk_complex(&c, HandleSide::V);
    let disks = c.all_set(HandleSide::V).disks();
    assert_eq!(g.vertex_count(), disks.len());
    for (i, a) in disks.iter().enumerate() {
        for b in &disks[i + 1..] {
            let (x, y) = (g.index_of(&a.key().to_string()).unwrap(), g.index_of(&b.key().to_string()).unwrap());
            assert_eq!(g.has_edge(x, y), intersection_number(&a.curve, &b.curve) == 0, "{} {}", a.key(), b.key());
        }
    }
    assert_eq!(g.two_simplex_count(), triangles(&g).len());
}

#[test]
fn interior_edges_gain_two_simplices() {
    let (small, big) = (census(2, 1, 6), census(2, 1, 8));
    let (g, h) = (build_disk_complex(&small, HandleSide::V), build_disk_complex(&big, HandleSide::V));
    let count = |g: &ComplexGraph| {
        let mut m: BTreeMap<(String, String), usize> = BTreeMap::new();
        for t in g.two_simplices() {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                *m.entry((g.vertex(a).key.clone(), g.vertex(b).key.clone())).or_default() += 1;
            }
        }
        m
    };
    let (before, after) = (count(&g), count(&h));
    let core = small.core_level();
    let mut sampled = 0;
    for (a, b) in edge_keys(&g) {
        if level(&g, g.index_of(&a).unwrap()) > core || level(&g, g.index_of(&b).unwrap()) > core {
            continue;
        }
        let n0 = before.get(&(a.clone(), b.clone())).copied().unwrap_or(0);
        let n1 = after.get(&(a.clone(), b.clone())).copied().unwrap_or(0);
        assert!(n1 > n0, "edge {a} {b}: {n0} -> {n1} two-simplices");
        sampled += 1;
    }
    assert!(sampled >= 5);
}

#[test]
fn primitive_complex_is_full() {
    for (p, q) in [(3, 1), (4, 1)] {
        let c = census(p, q, 6);
        let d = build_disk_complex(&c, HandleSide::V);
        let g = build_primitive_complex(&c, HandleSide::V);
        assert_eq!(keys(&g), c.primitive_set(HandleSide::V).disks().iter().map(|k| k.key().to_string()).collect());
        assert!(is_induced(&g, &d));
        assert_eq!(g.two_simplex_count(), triangles(&g).len());
    }
}

#[test]
fn primitive_triples_follow_the_lens() {
    assert!(build_primitive_complex(&census(3, 1, 8), HandleSide::V).two_simplex_count() > 0);
    for n in [4, 6, 8] {
        assert_eq!(build_primitive_complex(&census(4, 1, n), HandleSide::V).two_simplex_count(), 0);
    }
}

fn level(g: &ComplexGraph, i: usize) -> u32 {
    match &g.vertex(i).payload {
        Payload::Disk(d) => d.level.expect("enumerated disk"),
        Payload::DualPair { .. } => panic!("disk vertex expected"),
    }
}

#[test]
fn pprime_equals_primitive_complex_for_l_p_1() {
    for p in 2..=5 {
        let c = census(p, 1, 8);
        let pp = build_pprime_complex(&c, HandleSide::V);
        let pv = build_primitive_complex(&c, HandleSide::V);
        assert_eq!(keys(&pp), keys(&pv));
        assert!(edge_keys(&pp).is_subset(&edge_keys(&pv)));
        // common duals of pairs at the budget boundary can lie beyond it
        let core = c.core_level();
        let mut checked = 0;
        for (&(a, b), _) in pv.edges() {
            if level(&pv, a) <= core && level(&pv, b) <= core {
                let (x, y) = (pp.index_of(&pv.vertex(a).key).unwrap(), pp.index_of(&pv.vertex(b).key).unwrap());
                assert!(pp.has_edge(x, y), "L({p},1): {} {}", pv.vertex(a).key, pv.vertex(b).key);
                checked += 1;
            }
        }
        assert!(checked >= 3, "L({p},1): {checked} interior edges");
    }
}

#[test]
fn pprime_edges_carry_common_duals() {
    for (p, q) in [(5, 2), (7, 2)] {
        let c = census(p, q, 8);
        let pp = build_pprime_complex(&c, HandleSide::V);
        let pv = build_primitive_complex(&c, HandleSide::V);
        let w = c.primitive_set(HandleSide::W);
        for (&(a, b), info) in pp.edges() {
            assert!(!info.witnesses.is_empty());
            let da = c.primitive_set(HandleSide::V).get(&CurveKey::parse(&pp.vertex(a).key).unwrap()).unwrap();
            let db = c.primitive_set(HandleSide::V).get(&CurveKey::parse(&pp.vertex(b).key).unwrap()).unwrap();
            for k in &info.witnesses {
                let e = w.get(&CurveKey::parse(k).unwrap()).unwrap();
                assert_eq!(intersection_number(&da.curve, &e.curve), 1);
                assert_eq!(intersection_number(&db.curve, &e.curve), 1);
            }
        }
        assert!(edge_keys(&pp).is_subset(&edge_keys(&pv)));
    }
}

#[test]
fn l52_has_a_primitive_pair_without_common_dual() {
    let c = census(5, 2, 8);
    let pp = build_pprime_complex(&c, HandleSide::V);
    let pv = build_primitive_complex(&c, HandleSide::V);
    assert!(edge_keys(&pv).difference(&edge_keys(&pp)).next().is_some());
}

#[test]
fn pprime_of_l72_is_a_forest() {
    let g = build_pprime_complex(&census(7, 2, 8), HandleSide::V);
    assert!(g.edge_count() > 0);
    assert!(is_forest(&g));
}

#[test]
fn dual_tree_of_alpha2() {
    let big = census(2, 1, 8);
    let key = big.diagram.alpha2().key().to_string();
    let mut last: Option<ComplexGraph> = None;
    let mut sample: Vec<String> = Vec::new();
    let mut mins = Vec::new();
    for n in [4, 6, 8] {
        let c = big.restrict(n);
        let g = build_dual_tree(&c, HandleSide::V, &key).unwrap();
        assert!(g.index_of(&c.diagram.beta2().key().to_string()).is_some());
        assert!(is_forest(&g));
        assert!(find_cycles(&g, 12).unwrap().is_empty());
        if let Some(prev) = &last {
            assert!(is_induced(prev, &g));
        } else {
            sample = keys(&g).into_iter().collect();
        }
        mins.push(sample.iter().map(|k| g.degree(g.index_of(k).unwrap())).min().unwrap());
        last = Some(g);
    }
    // boundary duals may wait more than one step for a new neighbour, so the
    // minimum is monotone along the chain and grows across it
    assert!(mins.windows(2).all(|w| w[0] <= w[1]), "{:?}", mins);
    assert!(mins.last() > mins.first(), "{:?}", mins);
    let c = census(2, 1, 6);
    assert!(build_dual_tree(&c, HandleSide::V, &c.diagram.alpha1().key().to_string()).is_err());
}

#[test]
fn sphere_edges_are_exactly_the_clauses() {
    for (p, q) in [(2, 1), (3, 1), (5, 2)] {
        let c = census(p, q, 6);
        let (g, violations) = build_sphere_complex(&c);
        assert!(violations.is_empty());
        let seed = format!("{}|{}", c.diagram.alpha2().key(), c.diagram.beta2().key());
        assert!(g.index_of(&seed).is_some());
        let pv = c.primitive_set(HandleSide::V);
        let pw = c.primitive_set(HandleSide::W);
        let curve = |side, k: &str| match side {
            HandleSide::V => pv.get(&CurveKey::parse(k).unwrap()).unwrap().curve.clone(),
            HandleSide::W => pw.get(&CurveKey::parse(k).unwrap()).unwrap().curve.clone(),
        };
        let n = g.vertex_count();
        for a in 0..n {
            let (v1, w1) = g.vertex(a).pair_keys().unwrap();
            assert_eq!(intersection_number(&curve(HandleSide::V, v1), &curve(HandleSide::W, w1)), 1);
            for b in a + 1..n {
                let (v2, w2) = g.vertex(b).pair_keys().unwrap();
                // from scratch: a shared disk on one side, disjoint distinct disks on the other,
                // the shared disk dual to both
                let shared_w = w1 == w2
                    && v1 != v2
                    && intersection_number(&curve(HandleSide::V, v1), &curve(HandleSide::V, v2)) == 0
                    && intersection_number(&curve(HandleSide::V, v2), &curve(HandleSide::W, w1)) == 1;
                let shared_v = v1 == v2
                    && w1 != w2
                    && intersection_number(&curve(HandleSide::W, w1), &curve(HandleSide::W, w2)) == 0
                    && intersection_number(&curve(HandleSide::V, v1), &curve(HandleSide::W, w2)) == 1;
                assert!(!(shared_v && shared_w));
                assert_eq!(g.has_edge(a, b), shared_v || shared_w, "{} {}", g.vertex(a).key, g.vertex(b).key);
                if let Some(info) = g.edge_info(a, b) {
                    let clause = if shared_w { EdgeClause::SharedW } else { EdgeClause::SharedV };
                    assert_eq!(info.clause, Some(clause));
                }
            }
        }
    }
}

#[test]
fn phi_v_lands_in_pprime() {
    for (p, q) in [(2, 1), (3, 1), (5, 2), (7, 2)] {
        let c = census(p, q, 8);
        let (s, _) = build_sphere_complex(&c);
        let (img, map) = phi_v(&s).unwrap();
        let pp = build_pprime_complex(&c, HandleSide::V);
        let seed = format!("{}|{}", c.diagram.alpha2().key(), c.diagram.beta2().key());
        assert_eq!(map[&seed], c.diagram.alpha2().key().to_string());
        assert!(keys(&img).is_subset(&keys(&pp)));
        assert!(edge_keys(&img).is_subset(&edge_keys(&pp)));
        for (&(a, b), info) in s.edges() {
            let (x, y) = (&map[&s.vertex(a).key], &map[&s.vertex(b).key]);
            match info.clause {
                Some(EdgeClause::SharedV) => assert_eq!(x, y),
                _ => {
                    let (i, j) = (img.index_of(x).unwrap(), img.index_of(y).unwrap());
                    let witnesses = &img.edge_info(i, j).unwrap().witnesses;
                    assert!(witnesses.contains(&s.vertex(a).pair_keys().unwrap().1.to_string()));
                }
            }
        }
        assert!(phi_v(&pp).is_err());
    }
}

#[test]
fn disk_complex_remark() {
    // no 2-simplex has all three edges on one cycle of length at least four
    let c = census(3, 1, 4);
    let g = build_primitive_complex(&c, HandleSide::V);
    let d = build_disk_complex(&c, HandleSide::V);
    for g in [g, d] {
        let cycles = find_cycles(&g, 6).unwrap();
        let simplices: Vec<[usize; 3]> = g.two_simplices().copied().collect();
        for cyc in cycles.iter().filter(|c| c.len() >= 4) {
            let on: BTreeSet<(usize, usize)> =
                (0..cyc.len()).map(|i| (cyc[i].min(cyc[(i + 1) % cyc.len()]), cyc[i].max(cyc[(i + 1) % cyc.len()]))).collect();
            for t in &simplices {
                let all = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])].iter().all(|e| on.contains(e));
                assert!(!all, "two-simplex {:?} inside cycle {:?}", t, cyc);
            }
        }
    }
}

#[test]
fn graphs_grow_monotonically() {
    let (small, big) = (census(3, 1, 6), census(3, 1, 8));
    assert!(is_induced(&build_disk_complex(&small, HandleSide::V), &build_disk_complex(&big, HandleSide::V)));
    assert!(is_induced(&build_primitive_complex(&small, HandleSide::V), &build_primitive_complex(&big, HandleSide::V)));
    assert!(is_induced(&build_sphere_complex(&small).0, &build_sphere_complex(&big).0));
    let (pp0, pp1) = (build_pprime_complex(&small, HandleSide::V), build_pprime_complex(&big, HandleSide::V));
    assert!(keys(&pp0).is_subset(&keys(&pp1)));
    assert!(edge_keys(&pp0).is_subset(&edge_keys(&pp1)));
}

#[test]
fn restriction_matches_a_fresh_census() {
    let (small, big) = (census(5, 2, 6), census(5, 2, 8));
    let r = big.restrict(6);
    assert_eq!(to_json(&build_sphere_complex(&r).0), to_json(&build_sphere_complex(&small).0));
    assert_eq!(to_json(&build_pprime_complex(&r, HandleSide::V)), to_json(&build_pprime_complex(&small, HandleSide::V)));
}

#[test]
fn json_round_trip_and_dot() {
    let c = census(2, 1, 6);
    for g in [build_sphere_complex(&c).0, build_disk_complex(&c, HandleSide::V), build_pprime_complex(&c, HandleSide::V)] {
        let text = to_json(&g);
        let back = from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(to_json(&back), text);
        let dot = to_dot(&g);
        assert!(dot.starts_with("graph "));
        assert_eq!(dot.matches(" -- ").count(), g.edge_count());
    }
    let empty = build_sphere_complex(&c).0.induced(|_| false);
    assert_eq!(from_json(&to_json(&empty)).unwrap(), empty);
    assert!(to_dot(&empty).trim_end().ends_with('}'));
    assert!(from_json("{\"kind\": 3}").is_err());
}

#[test]
fn neighborhoods() {
    let c = census(2, 1, 8);
    let (g, _) = build_sphere_complex(&c);
    let seed = format!("{}|{}", c.diagram.alpha2().key(), c.diagram.beta2().key());
    let b0 = neighborhood(&g, &seed, 0).unwrap();
    assert_eq!(b0.vertex_count(), 1);
    let b2 = neighborhood(&g, &seed, 2).unwrap();
    assert!(is_induced(&b2, &g));
    assert!(b2.vertex_count() > 1);
    assert!(neighborhood(&g, "nope", 1).is_err());
}

#[test]
fn primitivity_of_payload_words() {
    let c = census(5, 2, 6);
    for v in build_primitive_complex(&c, HandleSide::V).vertices() {
        let Payload::Disk(d) = &v.payload else { panic!("disk vertex") };
        assert!(d.word_self.is_empty());
        assert!(is_primitive(&d.word_other));
        assert_ne!(d.word_other, FreeWord::empty());
    }
}

#[test]
fn verifier_preconditions_and_verdicts() {
    let c = census(4, 1, 6);
    assert!(verify(Suite::L21FourCycles, &c, 6).is_err());
    assert!(verify(Suite::L31SixCycles, &c, 6).is_err());
    let r = verify(Suite::Forest, &c, 6).unwrap();
    assert_eq!(r.verdict, Verdict::EvidencePass);
    assert!(r.failure_certificate().is_none());
    assert!(verify(Suite::Forest, &census(3, 1, 6), 6).is_err());
    let r = verify(Suite::Lemma3Triples, &census(3, 1, 8), 8).unwrap();
    assert!(r.verdict.is_pass(), "{:?}", r);
    assert!("lemma9".parse::<Suite>().is_err());
    assert_eq!("forest-p>=4".parse::<Suite>().unwrap(), Suite::Forest);
}
