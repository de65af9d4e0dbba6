//! Builders for the explored complexes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;

use super::census::Census;
use super::graph::{pair_key, ComplexGraph, ComplexKind, EdgeClause, EdgeInfo, Payload, Vertex};
use crate::error::{Error, Result};
use crate::splitting::disks::is_disjoint;
use crate::splitting::HandleSide;

fn plain() -> EdgeInfo {
    EdgeInfo { witnesses: Vec::new(), clause: None }
}

/// Graph index of each disk of `keys` order (graph vertices are sorted by key string).
fn positions(g: &ComplexGraph, keys: impl Iterator<Item = String>) -> Vec<usize> {
    keys.map(|k| g.index_of(&k).expect("vertex present")).collect()
}

fn add_triangles(g: &mut ComplexGraph, accept: impl Fn(usize, usize, usize) -> bool) {
    for t in super::analysis::triangles(g) {
        if accept(t[0], t[1], t[2]) {
            g.add_two_simplex(t).expect("triangle edges are present");
        }
    }
}

/// Non-separating disk complex of one side: all disks, disjointness edges,
/// pairwise disjoint triples.
pub fn build_disk_complex(c: &Census, side: HandleSide) -> ComplexGraph {
    let set = c.all_set(side);
    let mut g = ComplexGraph::new(ComplexKind::Disk, c.budget(), set.disks().iter().map(Vertex::disk).collect());
    let disks = set.disks();
    let pairs: Vec<(usize, usize)> = (0..disks.len())
        .into_par_iter()
        .flat_map_iter(|i| (i + 1..disks.len()).filter(move |&j| is_disjoint(&disks[i], &disks[j])).map(move |j| (i, j)))
        .collect();
    let at = positions(&g, disks.iter().map(|d| d.key().to_string()));
    for (i, j) in pairs {
        g.add_edge(at[i], at[j], plain());
    }
    add_triangles(&mut g, |_, _, _| true);
    g
}

/// Full subcomplex of the disk complex on primitive disks.
pub fn build_primitive_complex(c: &Census, side: HandleSide) -> ComplexGraph {
    let set = c.primitive_set(side);
    let mut g = ComplexGraph::new(ComplexKind::Primitive, c.budget(), set.disks().iter().map(Vertex::disk).collect());
    let at = positions(&g, set.disks().iter().map(|d| d.key().to_string()));
    for (i, j) in c.primitive_pairs(side) {
        g.add_edge(at[i], at[j], plain());
    }
    add_triangles(&mut g, |_, _, _| true);
    g
}

/// Primitive pairs that admit a common dual at the budget, with their witnesses.
pub fn build_pprime_complex(c: &Census, side: HandleSide) -> ComplexGraph {
    let set = c.primitive_set(side);
    let other = c.primitive_set(side.other());
    let mut g = ComplexGraph::new(ComplexKind::PPrime, c.budget(), set.disks().iter().map(Vertex::disk).collect());
    let at = positions(&g, set.disks().iter().map(|d| d.key().to_string()));
    for (i, j) in c.primitive_pairs(side) {
        let common = c.common_duals(side, i, j);
        if !common.is_empty() {
            let witnesses = common.iter().map(|&k| other.disks()[k].key().to_string()).collect();
            g.add_edge(at[i], at[j], EdgeInfo { witnesses, clause: None });
        }
    }
    add_triangles(&mut g, |_, _, _| true);
    g
}

/// Duals of a primitive disk, joined when disjoint.
pub fn build_dual_tree(c: &Census, base_side: HandleSide, base_key: &str) -> Result<ComplexGraph> {
    let set = c.primitive_set(base_side);
    let base = set
        .disks()
        .iter()
        .position(|d| d.key().to_string() == base_key)
        .ok_or_else(|| Error::Precondition(format!("{} is not a primitive {}-disk at {}", base_key, base_side, c.budget())))?;
    let other_side = base_side.other();
    let other = c.primitive_set(other_side);
    let duals = c.duals(base_side, base);
    let mut g = ComplexGraph::new(ComplexKind::DualTree, c.budget(), duals.iter().map(|&k| Vertex::disk(&other.disks()[k])).collect());
    let at = positions(&g, duals.iter().map(|&k| other.disks()[k].key().to_string()));
    for (a, &x) in duals.iter().enumerate() {
        for (b, &y) in duals.iter().enumerate().skip(a + 1) {
            if c.disjoint(other_side, x, y) {
                g.add_edge(at[a], at[b], plain());
            }
        }
    }
    add_triangles(&mut g, |_, _, _| true);
    Ok(g)
}

/// The sphere complex at the census budget, together with every pairwise
/// adjacent vertex triple found (each one a counterexample certificate).
pub fn build_sphere_complex(c: &Census) -> (ComplexGraph, Vec<[String; 3]>) {
    let pv = c.primitive_set(HandleSide::V);
    let pw = c.primitive_set(HandleSide::W);
    let mut vertices = Vec::new();
    for i in 0..pv.len() {
        for &j in c.duals(HandleSide::V, i) {
            vertices.push(Vertex::pair(&pv.disks()[i], &pw.disks()[j]));
        }
    }
    let mut g = ComplexGraph::new(ComplexKind::Sphere, c.budget(), vertices);
    let vkey = |i: usize| pv.disks()[i].key().to_string();
    let wkey = |j: usize| pw.disks()[j].key().to_string();
    let node = |g: &ComplexGraph, i: usize, j: usize| g.index_of(&pair_key(&vkey(i), &wkey(j))).expect("pair vertex");
    // shared W-disk, disjoint V-disks
    for j in 0..pw.len() {
        let ds = c.duals(HandleSide::W, j);
        for (a, &x) in ds.iter().enumerate() {
            for &y in &ds[a + 1..] {
                if c.disjoint(HandleSide::V, x, y) {
                    let (u, v) = (node(&g, x, j), node(&g, y, j));
                    g.add_edge(u, v, EdgeInfo { witnesses: vec![wkey(j)], clause: Some(EdgeClause::SharedW) });
                }
            }
        }
    }
    // shared V-disk, disjoint W-disks
    for i in 0..pv.len() {
        let ds = c.duals(HandleSide::V, i);
        for (a, &x) in ds.iter().enumerate() {
            for &y in &ds[a + 1..] {
                if c.disjoint(HandleSide::W, x, y) {
                    let (u, v) = (node(&g, i, x), node(&g, i, y));
                    g.add_edge(u, v, EdgeInfo { witnesses: vec![vkey(i)], clause: Some(EdgeClause::SharedV) });
                }
            }
        }
    }
    let violations = super::analysis::triangles(&g)
        .into_iter()
        .map(|t| t.map(|k| g.vertex(k).key.clone()))
        .collect();
    (g, violations)
}

/// Projection of a sphere complex to the V side: each dual pair goes to its
/// V-disk; shared-W edges become P'(V) edges witnessed by the shared disk and
/// shared-V edges collapse. Returns the image graph and the vertex map.
pub fn phi_v(sphere: &ComplexGraph) -> Result<(ComplexGraph, BTreeMap<String, String>)> {
    if sphere.kind != ComplexKind::Sphere {
        return Err(Error::Precondition(format!("expected a sphere complex, got {}", sphere.kind)));
    }
    let mut map = BTreeMap::new();
    let mut images: BTreeMap<String, Vertex> = BTreeMap::new();
    for v in sphere.vertices() {
        let Payload::DualPair { v: dv, .. } = &v.payload else {
            return Err(Error::Precondition(format!("vertex {} is not a dual pair", v.key)));
        };
        map.insert(v.key.clone(), dv.key.clone());
        images.entry(dv.key.clone()).or_insert_with(|| Vertex { key: dv.key.clone(), payload: Payload::Disk(dv.clone()) });
    }
    let mut g = ComplexGraph::new(ComplexKind::PPrime, sphere.budget.clone(), images.into_values().collect());
    let mut witnesses: BTreeMap<(usize, usize), BTreeSet<String>> = BTreeMap::new();
    for (&(a, b), info) in sphere.edges() {
        let (x, y) = (g.index_of(&map[&sphere.vertex(a).key]).unwrap(), g.index_of(&map[&sphere.vertex(b).key]).unwrap());
        if x == y {
            continue;
        }
        let w = sphere.vertex(a).pair_keys().unwrap().1.to_string();
        debug_assert_eq!(info.clause, Some(EdgeClause::SharedW));
        witnesses.entry((x.min(y), x.max(y))).or_default().insert(w);
    }
    for ((x, y), ws) in witnesses {
        g.add_edge(x, y, EdgeInfo { witnesses: ws.into_iter().collect(), clause: None });
    }
    Ok((g, map))
}

/// Vertices within `radius` of `seed`, by breadth-first search.
pub fn ball(g: &ComplexGraph, seed: usize, radius: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[seed] = 0;
    let mut queue = VecDeque::from([seed]);
    let mut out = vec![seed];
    while let Some(u) = queue.pop_front() {
        if dist[u] == radius {
            continue;
        }
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                out.push(v);
                queue.push_back(v);
            }
        }
    }
    out.sort();
    out
}

/// Induced subgraph on the radius ball around the vertex with key `seed`.
pub fn neighborhood(g: &ComplexGraph, seed: &str, radius: usize) -> Result<ComplexGraph> {
    let s = g.index_of(seed).ok_or_else(|| Error::Precondition(format!("{} is not an explored vertex", seed)))?;
    let keep: BTreeSet<&str> = ball(g, s, radius).into_iter().map(|i| g.vertex(i).key.as_str()).collect();
    Ok(g.induced(|v| keep.contains(v.key.as_str())))
}
