//! Verification suites over explored complexes. Each property gets a verdict
//! and, when it fails, a certificate naming the offending objects.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::analysis::{component_count, components, edge_cycle_census, find_cycles, is_forest};
use super::build::{ball, build_dual_tree, build_sphere_complex};
use super::census::Census;
use super::graph::{Budget, ComplexGraph};
use crate::error::{Error, Result};
use crate::splitting::disks::dual_surgery_step;
use crate::splitting::HandleSide;
use crate::surface::intersection_number;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "no-3-cycles")]
    NoThreeCycles,
    #[serde(rename = "L21-4-cycles")]
    L21FourCycles,
    #[serde(rename = "L31-6-cycles")]
    L31SixCycles,
    #[serde(rename = "forest-p≥4")]
    Forest,
    #[serde(rename = "disconnection-q≥2")]
    Disconnection,
    #[serde(rename = "lemma2-counts")]
    Lemma2Counts,
    #[serde(rename = "lemma3-triples")]
    Lemma3Triples,
    #[serde(rename = "lemma5-tree")]
    Lemma5Tree,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::NoThreeCycles,
        Suite::L21FourCycles,
        Suite::L31SixCycles,
        Suite::Forest,
        Suite::Disconnection,
        Suite::Lemma2Counts,
        Suite::Lemma3Triples,
        Suite::Lemma5Tree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::NoThreeCycles => "no-3-cycles",
            Suite::L21FourCycles => "L21-4-cycles",
            Suite::L31SixCycles => "L31-6-cycles",
            Suite::Forest => "forest-p≥4",
            Suite::Disconnection => "disconnection-q≥2",
            Suite::Lemma2Counts => "lemma2-counts",
            Suite::Lemma3Triples => "lemma3-triples",
            Suite::Lemma5Tree => "lemma5-tree",
        }
    }

    /// Enumeration budget needed to verify at `max_weight`.
    pub fn census_budget(self, max_weight: u32) -> u32 {
        match self {
            // valency growth compares against two more units of budget
            Suite::NoThreeCycles => max_weight + 2,
            _ => max_weight,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        let ascii = s.replace(">=", "≥");
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(&ascii))
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Established by a finite witness; more budget cannot overturn it.
    ConclusivePass,
    /// Holds on everything explored at the budget.
    EvidencePass,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self != Verdict::Fail
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::ConclusivePass => "conclusive-pass",
            Verdict::EvidencePass => "evidence-pass",
            Verdict::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Property {
    pub name: String,
    pub verdict: Verdict,
    pub budget: Budget,
    pub detail: String,
    /// Offending objects for a failure; supporting witnesses otherwise.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub suite: Suite,
    pub verdict: Verdict,
    pub budgets: Vec<Budget>,
    pub properties: Vec<Property>,
}

impl VerifierReport {
    fn new(suite: Suite, properties: Vec<Property>) -> VerifierReport {
        let verdict = if properties.iter().any(|p| p.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if properties.iter().all(|p| p.verdict == Verdict::ConclusivePass) {
            Verdict::ConclusivePass
        } else {
            Verdict::EvidencePass
        };
        let mut budgets: Vec<Budget> = Vec::new();
        for p in &properties {
            if !budgets.contains(&p.budget) {
                budgets.push(p.budget.clone());
            }
        }
        VerifierReport { suite, verdict, budgets, properties }
    }

    /// Certificates of the failed properties, keyed by property name.
    pub fn failure_certificate(&self) -> Option<Value> {
        let failed: Vec<Value> = self
            .properties
            .iter()
            .filter(|p| p.verdict == Verdict::Fail)
            .map(|p| json!({ "property": p.name, "budget": p.budget, "detail": p.detail, "certificate": p.certificate }))
            .collect();
        (!failed.is_empty()).then(|| json!({ "suite": self.suite, "failures": failed }))
    }
}

fn property(name: &str, ok: bool, conclusive: bool, budget: Budget, detail: String, certificate: Option<Value>) -> Property {
    let verdict = match (ok, conclusive) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::ConclusivePass,
        (true, false) => Verdict::EvidencePass,
    };
    Property { name: name.to_string(), verdict, budget, detail, certificate }
}

fn mod_inverse(q: u32, p: u32) -> u32 {
    (1..p).find(|&x| (x as u64 * q as u64) % p as u64 == 1).unwrap_or(1)
}

/// Least `q'` in `1..=p/2` with `L(p, q') ≅ L(p, q)`.
pub fn canonical_q(p: u32, q: u32) -> u32 {
    let inv = mod_inverse(q % p, p);
    [q % p, p - q % p, inv, p - inv].into_iter().filter(|&x| x >= 1 && 2 * x <= p).min().unwrap_or(q)
}

/// Whether primitive triples occur: `q = 2` or `p = 2q + 1` up to homeomorphism.
pub fn expects_triples(p: u32, q: u32) -> bool {
    let inv = mod_inverse(q % p, p);
    [q % p, p - q % p, inv, p - inv].into_iter().any(|x| x == 2 || p == 2 * x + 1)
}

/// Runs `suite` at `max_weight` on a census of budget `suite.census_budget(max_weight)` or more.
pub fn verify(suite: Suite, census: &Census, max_weight: u32) -> Result<VerifierReport> {
    let need = suite.census_budget(max_weight);
    if census.max_weight < need {
        return Err(Error::Precondition(format!(
            "suite {} at max_weight {} needs a census at {} (have {})",
            suite, max_weight, need, census.max_weight
        )));
    }
    let at = if census.max_weight == max_weight { census.clone() } else { census.restrict(max_weight) };
    let (p, q) = (at.diagram.p(), at.diagram.q());
    let properties = match suite {
        Suite::NoThreeCycles => no_three_cycles(&at, &census.restrict(need))?,
        Suite::L21FourCycles => {
            require(canonical_q(p, q) == 1 && p == 2, suite, p, q)?;
            vec![cycle_pattern(&at, 8, 4)?]
        }
        Suite::L31SixCycles => {
            require(canonical_q(p, q) == 1 && p == 3, suite, p, q)?;
            vec![cycle_pattern(&at, 10, 6)?]
        }
        Suite::Forest => {
            require(p >= 4, suite, p, q)?;
            forest(&at)?
        }
        Suite::Disconnection => disconnection(&at),
        Suite::Lemma2Counts => vec![lemma2(&at)],
        Suite::Lemma3Triples => lemma3(&at),
        Suite::Lemma5Tree => lemma5(&at)?,
    };
    Ok(VerifierReport::new(suite, properties))
}

fn require(ok: bool, suite: Suite, p: u32, q: u32) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!("suite {} does not apply to L({},{})", suite, p, q)))
    }
}

fn pair_names(g: &ComplexGraph, i: usize) -> (String, String) {
    let (v, w) = g.vertex(i).pair_keys().expect("sphere vertices are dual pairs");
    (v.to_string(), w.to_string())
}

/// Dual pairs whose disks both lie in the explored interior, by graph index.
fn core_vertices(c: &Census, g: &ComplexGraph) -> Vec<bool> {
    let core = c.core_level();
    g.vertices()
        .iter()
        .map(|v| match &v.payload {
            super::graph::Payload::DualPair { v, w } => v.level.is_some_and(|l| l <= core) && w.level.is_some_and(|l| l <= core),
            super::graph::Payload::Disk(d) => d.level.is_some_and(|l| l <= core),
        })
        .collect()
}

fn no_three_cycles(at: &Census, above: &Census) -> Result<Vec<Property>> {
    let (g, violations) = build_sphere_complex(at);
    let mut out = vec![property(
        "no-pairwise-adjacent-triples",
        violations.is_empty(),
        false,
        at.budget(),
        format!("{} vertices, {} edges, {} pairwise adjacent triples", g.vertex_count(), g.edge_count(), violations.len()),
        (!violations.is_empty()).then(|| json!({ "triples": violations })),
    )];
    // sample: every vertex explored at the budget; report the growth curve
    let (h, _) = build_sphere_complex(above);
    let sample: Vec<usize> = (0..g.vertex_count()).collect();
    let mut stalled = Vec::new();
    let mut growth = Vec::new();
    for &i in &sample {
        let key = &g.vertex(i).key;
        let after = h.index_of(key).map_or(0, |j| h.degree(j));
        growth.push(json!([key, g.degree(i), after]));
        if after <= g.degree(i) {
            stalled.push(key.clone());
        }
    }
    let grown = sample.len() - stalled.len();
    out.push(property(
        "valency-growth",
        grown >= VALENCY_GROWTH_MIN,
        false,
        above.budget(),
        format!(
            "{} of {} explored vertices gain neighbors from budget {} to {}",
            grown,
            sample.len(),
            at.max_weight,
            above.max_weight
        ),
        Some(json!({ "degrees": growth, "stalled": stalled })),
    ));
    Ok(out)
}

/// Sampled vertices that must show strict valency growth.
pub const VALENCY_GROWTH_MIN: usize = 10;

/// Every explored edge lies on exactly one cycle of length at most
/// `max_len`, and that cycle has length `expect` and the product shape: its
/// V-disks and W-disks are each pairwise disjoint and it alternates clauses.
fn cycle_pattern(at: &Census, max_len: usize, expect: usize) -> Result<Property> {
    let (g, _) = build_sphere_complex(at);
    let cycles = find_cycles(&g, max_len)?;
    let census = edge_cycle_census(&g, &cycles);
    let core = core_vertices(at, &g);
    let mut bad = Vec::new();
    let mut explored = 0;
    for (&(a, b), through) in &census {
        if !(core[a] && core[b]) {
            continue;
        }
        explored += 1;
        let ok = through.len() == 1 && cycles[through[0]].len() == expect && product_shape(at, &g, &cycles[through[0]]);
        if !ok {
            let found: Vec<Vec<&str>> = through.iter().map(|&k| cycles[k].iter().map(|&i| g.vertex(i).key.as_str()).collect()).collect();
            bad.push(json!({ "edge": [g.vertex(a).key, g.vertex(b).key], "cycles": found }));
        }
    }
    Ok(property(
        &format!("edges-on-one-{}-cycle", expect),
        bad.is_empty() && explored > 0,
        false,
        at.budget(),
        format!(
            "{} explored edges (disks at level <= {}), {} cycles of length <= {} in the full graph, {} exceptions",
            explored,
            at.core_level(),
            cycles.len(),
            max_len,
            bad.len()
        ),
        (!bad.is_empty()).then(|| json!({ "exceptions": bad })),
    ))
}

fn product_shape(at: &Census, g: &ComplexGraph, cycle: &[usize]) -> bool {
    let n = cycle.len();
    let mut vs = BTreeSet::new();
    let mut ws = BTreeSet::new();
    for &i in cycle {
        let (v, w) = pair_names(g, i);
        vs.insert(v);
        ws.insert(w);
    }
    if vs.len() * 2 != n || ws.len() * 2 != n {
        return false;
    }
    let clauses: Vec<_> = (0..n).map(|k| g.edge_info(cycle[k], cycle[(k + 1) % n]).and_then(|e| e.clause)).collect();
    if (0..n).any(|k| clauses[k] == clauses[(k + 1) % n]) {
        return false;
    }
    let pairwise = |side: HandleSide, keys: &BTreeSet<String>| {
        let set = at.primitive_set(side);
        let idx: Vec<usize> = keys
            .iter()
            .filter_map(|k| set.disks().iter().position(|d| d.key().to_string() == *k))
            .collect();
        idx.len() == keys.len() && (0..idx.len()).all(|a| (a + 1..idx.len()).all(|b| at.disjoint(side, idx[a], idx[b])))
    };
    pairwise(HandleSide::V, &vs) && pairwise(HandleSide::W, &ws)
}

fn forest(at: &Census) -> Result<Vec<Property>> {
    let (g, _) = build_sphere_complex(at);
    let cycles = find_cycles(&g, 12)?;
    Ok(vec![property(
        "forest",
        cycles.is_empty() && is_forest(&g),
        false,
        at.budget(),
        format!("{} vertices, {} edges, {} components, {} cycles of length <= 12", g.vertex_count(), g.edge_count(), component_count(&g), cycles.len()),
        cycles.first().map(|c| json!({ "cycle": c.iter().map(|&i| g.vertex(i).key.clone()).collect::<Vec<_>>() })),
    )])
}

/// For `L(p, 1)`: everything near the standard dual pair is one component.
/// Otherwise: some primitive pair has no common dual, and the sphere complex
/// neighborhoods of dual pairs on its two disks share no vertex.
fn disconnection(at: &Census) -> Vec<Property> {
    let (g, _) = build_sphere_complex(at);
    let (p, q) = (at.diagram.p(), at.diagram.q());
    let labels = components(&g);
    if canonical_q(p, q) == 1 {
        let seed = seed_vertex(at, &g);
        let Some(s) = seed else {
            return vec![property("connected-near-seed", false, false, at.budget(), "standard dual pair not explored".into(), None)];
        };
        let near = ball(&g, s, SEED_RADIUS);
        let apart: Vec<&str> = near.iter().filter(|&&i| labels[i] != labels[s]).map(|&i| g.vertex(i).key.as_str()).collect();
        return vec![property(
            "connected-near-seed",
            apart.is_empty() && near.len() > 1,
            false,
            at.budget(),
            format!("{} vertices within radius {} of {}, {} components overall", near.len(), SEED_RADIUS, g.vertex(s).key, component_count(&g)),
            (!apart.is_empty()).then(|| json!({ "disconnected": apart })),
        )];
    }
    let side = HandleSide::V;
    let set = at.primitive_set(side);
    let mut found = None;
    let mut pairs = at.primitive_pairs(side);
    // pairs in the explored interior first: their common duals are all in budget
    pairs.sort_by_key(|&(i, j)| !(at.in_core(side, i) && at.in_core(side, j)));
    for (i, j) in pairs {
        if !at.common_duals(side, i, j).is_empty() || at.duals(side, i).is_empty() || at.duals(side, j).is_empty() {
            continue;
        }
        let vi = vertex_of(at, &g, i, at.duals(side, i)[0]);
        let vj = vertex_of(at, &g, j, at.duals(side, j)[0]);
        let (bi, bj) = (ball(&g, vi, DISCONNECTION_RADIUS), ball(&g, vj, DISCONNECTION_RADIUS));
        let shared: Vec<usize> = bi.iter().copied().filter(|x| bj.binary_search(x).is_ok()).collect();
        if shared.is_empty() {
            found = Some((i, j, vi, vj, bi.len(), bj.len()));
            break;
        }
    }
    let pair = property(
        "pair-without-common-dual",
        found.is_some(),
        false,
        at.budget(),
        match found {
            Some((i, j, ..)) => format!("{{{}, {}}} has no common dual at the budget", set.disks()[i].key(), set.disks()[j].key()),
            None => "every primitive pair with duals on both disks has a common dual or overlapping neighborhoods".into(),
        },
        found.map(|(i, j, ..)| json!({ "pair": [set.disks()[i].key(), set.disks()[j].key()] })),
    );
    let mut out = vec![pair];
    if let Some((_, _, vi, vj, ni, nj)) = found {
        out.push(property(
            "disjoint-neighborhoods",
            true,
            false,
            at.budget(),
            format!(
                "radius-{} balls of {} ({} vertices) and {} ({} vertices) share no key; {} components overall",
                DISCONNECTION_RADIUS,
                g.vertex(vi).key,
                ni,
                g.vertex(vj).key,
                nj,
                component_count(&g)
            ),
            Some(json!({ "seeds": [g.vertex(vi).key, g.vertex(vj).key] })),
        ));
    }
    out
}

pub const DISCONNECTION_RADIUS: usize = 3;
pub const SEED_RADIUS: usize = 4;

fn vertex_of(at: &Census, g: &ComplexGraph, i: usize, j: usize) -> usize {
    let key = super::graph::pair_key(
        &at.primitive_disk(HandleSide::V, i).key().to_string(),
        &at.primitive_disk(HandleSide::W, j).key().to_string(),
    );
    g.index_of(&key).expect("dual pair is a vertex")
}

/// The dual pair `(alpha2, beta2)` of the seed diagram.
pub fn seed_vertex(at: &Census, g: &ComplexGraph) -> Option<usize> {
    let key = super::graph::pair_key(&at.diagram.alpha2().key().to_string(), &at.diagram.beta2().key().to_string());
    g.index_of(&key)
}

/// Common-dual counts: exactly 2 (and disjoint) in `L(2,1)`, exactly 1 in
/// other `L(p,1)`, at most 1 otherwise. Exact counts are only asserted for
/// pairs in the explored interior, where every common dual is within budget.
fn lemma2(at: &Census) -> Property {
    let (p, q) = (at.diagram.p(), at.diagram.q());
    let side = HandleSide::V;
    let exact = match (p, canonical_q(p, q)) {
        (2, _) => Some(2),
        (_, 1) => Some(1),
        _ => None,
    };
    let key = |s: HandleSide, i: usize| at.primitive_disk(s, i).key().to_string();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (i, j) in at.primitive_pairs(side) {
        let common = at.common_duals(side, i, j);
        let ok = match exact {
            None => common.len() <= 1,
            Some(_) if common.is_empty() || !(at.in_core(side, i) && at.in_core(side, j)) => continue,
            Some(n) => common.len() == n && (n != 2 || at.disjoint(side.other(), common[0], common[1])),
        };
        checked += 1;
        if !ok {
            bad.push(json!({ "pair": [key(side, i), key(side, j)], "common_duals": common.iter().map(|&k| key(side.other(), k)).collect::<Vec<_>>() }));
        }
    }
    let scope = match exact {
        Some(n) => format!("{} primitive pairs with a common dual at level <= {}, expected exactly {}{}", checked, at.core_level(), n, if n == 2 { " disjoint ones" } else { "" }),
        None => format!("{} primitive pairs, expected at most 1 common dual", checked),
    };
    property(
        "common-dual-counts",
        bad.is_empty() && checked > 0,
        false,
        at.budget(),
        format!("{}, {} exceptions", scope, bad.len()),
        (!bad.is_empty()).then(|| json!({ "exceptions": bad })),
    )
}

/// Triples occur exactly when expected; pairs of a triple with common duals
/// number 3 when `p = 3` and 1 when `p >= 5`.
fn lemma3(at: &Census) -> Vec<Property> {
    let (p, q) = (at.diagram.p(), at.diagram.q());
    let side = HandleSide::V;
    let triples = at.primitive_triples(side);
    let expected = expects_triples(p, q);
    let key = |i: usize| at.primitive_disk(side, i).key().to_string();
    let mut out = vec![property(
        "triples-iff-q2-or-p2q1",
        !triples.is_empty() == expected,
        // a found triple settles presence; absence is only evidence
        !triples.is_empty(),
        at.budget(),
        format!("{} primitive triples found, {}expected", triples.len(), if expected { "" } else { "none " }),
        triples.first().map(|t| json!({ "triple": t.map(key) })),
    )];
    if triples.is_empty() {
        return out;
    }
    out.push(pair_triple_counts(at, &triples));
    let exact = if p == 3 { 3 } else { 1 };
    let mut core_checked = 0;
    let mut bad = Vec::new();
    for t in &triples {
        let with = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])].iter().filter(|&&(a, b)| !at.common_duals(side, a, b).is_empty()).count();
        let in_core = t.iter().all(|&i| at.in_core(side, i));
        core_checked += in_core as usize;
        // outside the interior some common duals may lie beyond the budget
        let mut ok = if in_core { with == exact } else { (1..=exact).contains(&with) };
        if p == 3 && with == 3 {
            // the three common duals form a primitive triple in W
            let duals: Vec<usize> = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])].iter().map(|&(a, b)| at.common_duals(side, a, b)[0]).collect();
            let w = side.other();
            ok &= duals[0] != duals[1] && at.disjoint(w, duals[0], duals[1]) && at.disjoint(w, duals[0], duals[2]) && at.disjoint(w, duals[1], duals[2]);
        }
        if !ok {
            bad.push(json!({ "triple": t.map(key), "pairs_with_common_dual": with }));
        }
    }
    out.push(property(
        "triple-common-duals",
        bad.is_empty(),
        false,
        at.budget(),
        format!(
            "{} triples ({} at level <= {}), expected {} pair(s) with common duals, {} exceptions",
            triples.len(),
            core_checked,
            at.core_level(),
            exact,
            bad.len()
        ),
        (!bad.is_empty()).then(|| json!({ "exceptions": bad })),
    ));
    out
}

/// How many triples contain each primitive pair of the explored interior:
/// one when `p = 3`; for `p = 5` one with a common dual and two without;
/// for `p >= 7` at most one with a common dual and exactly one without.
fn pair_triple_counts(at: &Census, triples: &[[usize; 3]]) -> Property {
    let p = at.diagram.p();
    let side = HandleSide::V;
    let mut count: std::collections::BTreeMap<(usize, usize), usize> = std::collections::BTreeMap::new();
    for t in triples {
        for e in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *count.entry(e).or_default() += 1;
        }
    }
    let allowed = |with_dual: bool, n: usize| match (p, with_dual) {
        (3, _) => n == 1,
        (5, true) => n == 1,
        (5, false) => n == 2,
        (_, true) => n <= 1,
        (_, false) => n == 1,
    };
    let mut split = std::collections::BTreeMap::new();
    let mut bad = Vec::new();
    let mut checked = 0;
    for (i, j) in at.primitive_pairs(side) {
        if !(at.in_core(side, i) && at.in_core(side, j)) {
            continue;
        }
        checked += 1;
        let with_dual = !at.common_duals(side, i, j).is_empty();
        let n = count.get(&(i, j)).copied().unwrap_or(0);
        *split.entry(format!("{}:{}", if with_dual { "with_common_dual" } else { "without_common_dual" }, n)).or_insert(0usize) += 1;
        if !allowed(with_dual, n) {
            bad.push(json!({ "pair": [at.primitive_disk(side, i).key(), at.primitive_disk(side, j).key()], "common_dual": with_dual, "triples": n }));
        }
    }
    property(
        "pair-triple-counts",
        bad.is_empty(),
        false,
        at.budget(),
        format!("{} primitive pairs at level <= {}, split {:?}, {} exceptions", checked, at.core_level(), split, bad.len()),
        Some(json!({ "split": split, "exceptions": bad })),
    )
}

pub const LEMMA5_SAMPLE: usize = 6;
const SURGERY_PAIRS_PER_DISK: usize = 12;

/// Lowest-level primitive disks of `side`, by (level, key).
pub fn sample_primitive(c: &Census, side: HandleSide, k: usize) -> Vec<usize> {
    let set = c.primitive_set(side);
    let mut v: Vec<(u32, usize)> = (0..set.len()).map(|i| (set.disks()[i].level.unwrap_or(u32::MAX), i)).collect();
    v.sort();
    v.into_iter().take(k).map(|(_, i)| i).collect()
}

/// Duals of sampled primitive disks form trees at every budget, and surgery
/// of intersecting duals produces duals meeting the target in fewer points.
fn lemma5(at: &Census) -> Result<Vec<Property>> {
    let side = HandleSide::V;
    let sample = sample_primitive(at, side, LEMMA5_SAMPLE);
    let keys: Vec<String> = sample.iter().map(|&i| at.primitive_disk(side, i).key().to_string()).collect();
    let mut cyclic = Vec::new();
    let mut trees = 0;
    for b in 1..=at.max_weight {
        let c = at.restrict(b);
        for k in &keys {
            if c.primitive_set(side).disks().iter().any(|d| d.key().to_string() == *k) {
                let t = build_dual_tree(&c, side, k)?;
                trees += 1;
                if !is_forest(&t) {
                    cyclic.push(json!({ "disk": k, "max_weight": b }));
                }
            }
        }
    }
    let tree = property(
        "dual-complex-acyclic",
        cyclic.is_empty() && sample.len() >= 5,
        false,
        at.budget(),
        format!("{} sampled disks, {} dual complexes over budgets 1..={}, {} with cycles", sample.len(), trees, at.max_weight, cyclic.len()),
        (!cyclic.is_empty()).then(|| json!({ "cyclic": cyclic })),
    );
    let other = at.primitive_set(side.other());
    let mut steps = 0;
    let mut bad = Vec::new();
    for &e in &sample {
        let base = at.primitive_disk(side, e);
        let duals = at.duals(side, e);
        let mut done = 0;
        'pairs: for (a, &x) in duals.iter().enumerate() {
            for &y in &duals[a + 1..] {
                if done == SURGERY_PAIRS_PER_DISK {
                    break 'pairs;
                }
                let (from, toward) = (&other.disks()[x], &other.disks()[y]);
                let before = intersection_number(&from.curve, &toward.curve);
                if before == 0 {
                    continue;
                }
                done += 1;
                steps += 1;
                let results = dual_surgery_step(&at.diagram, base, from, toward, Some(at.all_set(side.other())))?;
                let worse: Vec<String> = results
                    .iter()
                    .filter(|r| intersection_number(&r.curve, &toward.curve) >= before)
                    .map(|r| r.key().to_string())
                    .collect();
                if results.is_empty() || !worse.is_empty() {
                    bad.push(json!({ "base": base.key(), "from": from.key(), "toward": toward.key(), "before": before, "not_decreased": worse, "results": results.len() }));
                }
            }
        }
    }
    let surgery = property(
        "dual-surgery-decreases",
        bad.is_empty(),
        false,
        at.budget(),
        format!("{} surgery steps on intersecting duals, {} exceptions", steps, bad.len()),
        (!bad.is_empty()).then(|| json!({ "exceptions": bad })),
    );
    Ok(vec![tree, surgery])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert_eq!("forest-p>=4".parse::<Suite>().unwrap(), Suite::Forest);
        assert!(matches!("bogus".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn lens_normal_forms() {
        assert_eq!(canonical_q(7, 3), 2);
        assert_eq!(canonical_q(8, 3), 3);
        assert_eq!(canonical_q(5, 1), 1);
        for (p, q, t) in [(2, 1, false), (3, 1, true), (4, 1, false), (5, 1, false), (5, 2, true), (7, 2, true), (7, 3, true), (8, 3, false)] {
            assert_eq!(expects_triples(p, q), t, "L({},{})", p, q);
        }
    }

    #[test]
    fn verdict_order() {
        assert!(Verdict::ConclusivePass < Verdict::EvidencePass && Verdict::EvidencePass < Verdict::Fail);
        assert_eq!(serde_json::to_string(&Verdict::EvidencePass).unwrap(), "\"evidence-pass\"");
    }
}
