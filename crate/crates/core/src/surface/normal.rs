//! Normal coordinates on the fixed triangulation.
//!
//! A normal multicurve is recorded by its 9 edge weights. Within a triangle
//! with side weights `(w0, w1, w2)` the number of arcs cutting the corner
//! between sides `i` and `i + 1` is `(w_i + w_{i+1} - w_{i-1}) / 2`.
//!
//! Points on an edge are indexed `0..w` along the edge direction.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::triangulation::{is_side_edge, Triangulation, EDGE_COUNT, TRIANGLE_COUNT};
use super::word::Letter;
use crate::error::{Error, Result};

/// Letter read when a curve crosses boundary edge `e` from its forward
/// triangle into its reversed triangle.
const CROSSING_LETTER: [Letter; 4] = [0, 3, 4, 7];

pub fn crossing_letter(edge: usize, forward_to_reversed: bool) -> Letter {
    let l = CROSSING_LETTER[edge];
    if forward_to_reversed {
        l
    } else {
        l ^ 1
    }
}

/// Inverse of [`crossing_letter`]: the boundary edge a letter crosses and the
/// direction of crossing.
pub fn letter_edge(l: Letter) -> (usize, bool) {
    for (e, &base) in CROSSING_LETTER.iter().enumerate() {
        if base == l {
            return (e, true);
        }
        if base ^ 1 == l {
            return (e, false);
        }
    }
    unreachable!("letter out of range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleViolation {
    pub triangle: usize,
    pub weights: [u32; 3],
    pub reason: &'static str,
}

impl fmt::Display for TriangleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "triangle {} with side weights {:?}: {}", self.triangle, self.weights, self.reason)
    }
}

fn side_weights(weights: &[u32; EDGE_COUNT], t: usize) -> [u32; 3] {
    let sides = Triangulation::standard().triangle(t);
    [weights[sides[0].edge], weights[sides[1].edge], weights[sides[2].edge]]
}

/// Checks parity and triangle inequalities; reports the first violation.
pub fn validate_normal(weights: &[u32; EDGE_COUNT]) -> std::result::Result<(), TriangleViolation> {
    for t in 0..TRIANGLE_COUNT {
        let w = side_weights(weights, t);
        if !(w[0] + w[1] + w[2]).is_multiple_of(2) {
            return Err(TriangleViolation { triangle: t, weights: w, reason: "odd side-weight sum" });
        }
        for i in 0..3 {
            if w[i] > w[(i + 1) % 3] + w[(i + 2) % 3] {
                return Err(TriangleViolation { triangle: t, weights: w, reason: "triangle inequality fails" });
            }
        }
    }
    Ok(())
}

/// One crossing of a traced curve with an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeCrossing {
    pub edge: usize,
    pub index: u32,
    /// True when the curve passes from the edge's forward triangle to its reversed triangle.
    pub forward_to_reversed: bool,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalCurve {
    weights: [u32; EDGE_COUNT],
}

impl fmt::Debug for NormalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalCurve{:?}", self.weights)
    }
}

impl NormalCurve {
    pub fn new(weights: [u32; EDGE_COUNT]) -> Result<Self> {
        validate_normal(&weights).map_err(|v| Error::InvalidNormal(v.to_string()))?;
        Ok(NormalCurve { weights })
    }

    /// For vectors already known to be valid (e.g. from [`for_each_normal`]).
    pub(crate) fn new_unchecked(weights: [u32; EDGE_COUNT]) -> Self {
        debug_assert!(validate_normal(&weights).is_ok());
        NormalCurve { weights }
    }

    pub fn empty() -> Self {
        NormalCurve { weights: [0; EDGE_COUNT] }
    }

    pub fn weights(&self) -> &[u32; EDGE_COUNT] {
        &self.weights
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_weight() == 0
    }

    /// Weight-wise sum; the sum of two valid vectors is valid.
    pub fn add(&self, other: &NormalCurve) -> NormalCurve {
        let mut w = self.weights;
        for (a, b) in w.iter_mut().zip(other.weights.iter()) {
            *a += b;
        }
        NormalCurve { weights: w }
    }

    /// The curve around the vertex: weight 2 on every edge.
    pub fn vertex_link() -> NormalCurve {
        NormalCurve { weights: [2; EDGE_COUNT] }
    }

    fn corner_counts(&self, t: usize) -> [u32; 3] {
        let w = side_weights(&self.weights, t);
        [0, 1, 2].map(|i| (w[i] + w[(i + 1) % 3] - w[(i + 2) % 3]) / 2)
    }

    fn all_corner_counts(&self) -> [[u32; 3]; TRIANGLE_COUNT] {
        std::array::from_fn(|t| self.corner_counts(t))
    }

    /// Follows the normal arc leaving `(edge, index)` into the triangle on the
    /// given side and returns the crossing where it exits.
    fn step(&self, corners: &[[u32; 3]; TRIANGLE_COUNT], edge: usize, index: u32, into_forward: bool) -> EdgeCrossing {
        let tri = Triangulation::standard();
        let (t, slot) = tri.incidence(edge, into_forward);
        let sides = tri.triangle(t);
        let n = &corners[t];
        let w_here = self.weights[edge];
        let pos = if sides[slot].forward { index } else { w_here - 1 - index };
        let prev = (slot + 2) % 3;
        let next = (slot + 1) % 3;
        // the arc nearest the start vertex of this side cuts the previous corner
        let (out_slot, out_pos) = if pos < n[prev] {
            (prev, self.weights[sides[prev].edge] - 1 - pos)
        } else {
            (next, self.weights[edge] - 1 - pos)
        };
        let out = sides[out_slot];
        let out_index = if out.forward { out_pos } else { self.weights[out.edge] - 1 - out_pos };
        // leaving triangle t through `out`: we are in its forward triangle iff out.forward
        EdgeCrossing { edge: out.edge, index: out_index, forward_to_reversed: out.forward }
    }

    /// Traces the component through `(edge, index)`; the returned cycle starts
    /// with the crossing of that point from its forward to reversed triangle.
    pub fn trace_from(&self, edge: usize, index: u32) -> Vec<EdgeCrossing> {
        let corners = self.all_corner_counts();
        let start = EdgeCrossing { edge, index, forward_to_reversed: true };
        let mut out = vec![start];
        let mut cur = start;
        loop {
            let into_forward = !cur.forward_to_reversed;
            let nxt = self.step(&corners, cur.edge, cur.index, into_forward);
            if nxt.edge == start.edge && nxt.index == start.index {
                debug_assert!(nxt.forward_to_reversed);
                return out;
            }
            out.push(nxt);
            cur = nxt;
        }
    }

    /// Connected components, each as its own normal curve. Empty for the empty curve.
    pub fn components(&self) -> Vec<NormalCurve> {
        let mut visited: Vec<Vec<bool>> = self.weights.iter().map(|&w| vec![false; w as usize]).collect();
        let mut comps = Vec::new();
        for e in 0..EDGE_COUNT {
            for k in 0..self.weights[e] {
                if visited[e][k as usize] {
                    continue;
                }
                let mut w = [0u32; EDGE_COUNT];
                for c in self.trace_from(e, k) {
                    visited[c.edge][c.index as usize] = true;
                    w[c.edge] += 1;
                }
                comps.push(NormalCurve { weights: w });
            }
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        let Some(e) = (0..EDGE_COUNT).find(|&e| self.weights[e] > 0) else { return false };
        self.trace_from(e, 0).len() as u32 == self.total_weight()
    }

    /// Boundary-edge crossings of a connected curve, in traversal order.
    pub fn side_crossings(&self) -> Result<Vec<EdgeCrossing>> {
        let Some(e) = (0..EDGE_COUNT).find(|&e| self.weights[e] > 0) else {
            return Ok(Vec::new());
        };
        let trace = self.trace_from(e, 0);
        if trace.len() as u32 != self.total_weight() {
            return Err(Error::Disconnected(self.component_count()));
        }
        Ok(trace.into_iter().filter(|c| is_side_edge(c.edge)).collect())
    }

    /// Word of the curve through the first crossing of the lowest weighted edge,
    /// or `None` when that component is not the whole curve.
    pub fn connected_word_into(&self, out: &mut Vec<Letter>) -> bool {
        out.clear();
        let Some(e) = (0..EDGE_COUNT).find(|&e| self.weights[e] > 0) else { return false };
        let corners = self.all_corner_counts();
        let total = self.total_weight();
        let mut cur = EdgeCrossing { edge: e, index: 0, forward_to_reversed: true };
        let mut len = 0;
        loop {
            len += 1;
            if is_side_edge(cur.edge) {
                out.push(crossing_letter(cur.edge, cur.forward_to_reversed));
            }
            let nxt = self.step(&corners, cur.edge, cur.index, !cur.forward_to_reversed);
            if nxt.edge == e && nxt.index == 0 {
                return len == total;
            }
            cur = nxt;
        }
    }

    /// Cyclic word of a connected curve in the surface group.
    pub fn word(&self) -> Result<Vec<Letter>> {
        Ok(self
            .side_crossings()?
            .iter()
            .map(|c| crossing_letter(c.edge, c.forward_to_reversed))
            .collect())
    }
}

/// Walks the weight lattice `[0, max]^9` and calls `visit` on every valid
/// non-empty vector. Edges are assigned so that each triangle is checked as
/// soon as its three sides are known.
pub fn for_each_normal(max: u32, first_edge_values: Option<u32>, visit: &mut dyn FnMut(&[u32; EDGE_COUNT])) {
    // edge order a1, b1, d2, d3, d4, a2, d5, b2, d6; triangle checks after positions
    const ORDER: [usize; EDGE_COUNT] = [0, 1, 4, 5, 6, 2, 7, 3, 8];
    const CHECKS: [&[usize]; EDGE_COUNT] = [&[], &[], &[0], &[1], &[2], &[], &[3], &[], &[4, 5]];

    fn ok(w: &[u32; EDGE_COUNT], t: usize) -> bool {
        let s = side_weights(w, t);
        (s[0] + s[1] + s[2]).is_multiple_of(2) && s[0] <= s[1] + s[2] && s[1] <= s[0] + s[2] && s[2] <= s[0] + s[1]
    }

    fn rec(depth: usize, w: &mut [u32; EDGE_COUNT], max: u32, visit: &mut dyn FnMut(&[u32; EDGE_COUNT])) {
        if depth == EDGE_COUNT {
            if w.iter().any(|&x| x > 0) {
                visit(w);
            }
            return;
        }
        let e = ORDER[depth];
        for v in 0..=max {
            w[e] = v;
            if CHECKS[depth].iter().all(|&t| ok(w, t)) {
                rec(depth + 1, w, max, visit);
            }
        }
        w[e] = 0;
    }

    let mut w = [0u32; EDGE_COUNT];
    match first_edge_values {
        Some(v) => {
            w[ORDER[0]] = v;
            rec(1, &mut w, max, visit);
        }
        None => rec(0, &mut w, max, visit),
    }
}
