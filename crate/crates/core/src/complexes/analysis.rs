//! Cycles, forests and components of explored graphs.

use std::collections::{BTreeMap, VecDeque};

use super::graph::ComplexGraph;
use crate::error::{Error, Result};

/// Pairwise adjacent vertex triples `a < b < c`.
pub fn triangles(g: &ComplexGraph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        let na = g.neighbors(a);
        for &b in na.iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if na.binary_search(&c).is_ok() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn component_count(g: &ComplexGraph) -> usize {
    components(g).iter().max().map_or(0, |&m| m + 1)
}

/// Component label of every vertex, numbered in order of least vertex.
pub fn components(g: &ComplexGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn is_forest(g: &ComplexGraph) -> bool {
    g.edge_count() + component_count(g) == g.vertex_count()
}

/// Breadth-first distances from `s` (`usize::MAX` when unreachable).
pub fn distances(g: &ComplexGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Every simple cycle of length `3..=max_len`, each once. A cycle is listed
/// from its least vertex, in the direction whose second vertex is smaller
/// than its last.
pub fn find_cycles(g: &ComplexGraph, max_len: usize) -> Result<Vec<Vec<usize>>> {
    if max_len < 3 {
        return Err(Error::Precondition(format!("cycle length bound {} is below 3", max_len)));
    }
    let mut out = Vec::new();
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let dist = distances(g, s);
        let mut path = vec![s];
        on_path[s] = true;
        extend(g, s, max_len, &dist, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    Ok(out)
}

fn extend(
    g: &ComplexGraph,
    s: usize,
    max_len: usize,
    dist: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let u = *path.last().unwrap();
    for &v in g.neighbors(u) {
        if v == s && path.len() >= 3 && path[1] < u {
            out.push(path.clone());
            continue;
        }
        if v <= s || on_path[v] {
            continue;
        }
        // the way back to s needs at least dist[v] more edges
        if path.len() + dist[v] > max_len {
            continue;
        }
        path.push(v);
        on_path[v] = true;
        extend(g, s, max_len, dist, path, on_path, out);
        on_path[v] = false;
        path.pop();
    }
}

/// For every edge, the indices (into `cycles`) of the cycles through it.
pub fn edge_cycle_census(g: &ComplexGraph, cycles: &[Vec<usize>]) -> BTreeMap<(usize, usize), Vec<usize>> {
    let mut census: BTreeMap<(usize, usize), Vec<usize>> = g.edges().map(|(&e, _)| (e, Vec::new())).collect();
    for (k, c) in cycles.iter().enumerate() {
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            census.get_mut(&(a.min(b), a.max(b))).expect("cycle edges are graph edges").push(k);
        }
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::graph::{Budget, ComplexKind, EdgeInfo, Payload, Vertex};
    use crate::splitting::HandleSide;
    use crate::words::FreeWord;

    fn graph(n: usize, edges: &[(usize, usize)]) -> ComplexGraph {
        let vs = (0..n)
            .map(|i| Vertex {
                key: format!("v{:02}", i),
                payload: Payload::Disk(crate::complexes::graph::DiskPayload {
                    side: HandleSide::V,
                    key: format!("v{:02}", i),
                    weights: None,
                    word_self: FreeWord::empty(),
                    word_other: FreeWord::empty(),
                    level: None,
                }),
            })
            .collect();
        let mut g = ComplexGraph::new(ComplexKind::Sphere, Budget::new(2, 1, 1), vs);
        for &(a, b) in edges {
            g.add_edge(a, b, EdgeInfo { witnesses: vec![], clause: None });
        }
        g
    }

    #[test]
    fn path_is_a_forest() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(is_forest(&g));
        assert!(find_cycles(&g, 8).unwrap().is_empty());
        assert!(find_cycles(&g, 2).is_err());
    }

    #[test]
    fn quadrilateral_and_hexagon() {
        let sq = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = find_cycles(&sq, 8).unwrap();
        assert_eq!(c, vec![vec![0, 1, 2, 3]]);
        let hex = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let c = find_cycles(&hex, 10).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), 6);
        assert!(find_cycles(&hex, 5).unwrap().is_empty());
    }

    #[test]
    fn complete_graph_counts() {
        let mut e = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((a, b));
            }
        }
        let g = graph(5, &e);
        // K5: 10 triangles, 15 four-cycles, 12 five-cycles
        let c = find_cycles(&g, 5).unwrap();
        assert_eq!(c.iter().filter(|c| c.len() == 3).count(), 10);
        assert_eq!(c.iter().filter(|c| c.len() == 4).count(), 15);
        assert_eq!(c.iter().filter(|c| c.len() == 5).count(), 12);
        assert_eq!(triangles(&g).len(), 10);
        assert_eq!(component_count(&g), 1);
        let census = edge_cycle_census(&g, &c);
        assert_eq!(census.len(), 10);
    }
}
