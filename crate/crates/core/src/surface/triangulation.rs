//! The fixed one-vertex triangulation of the closed genus-2 surface.
//!
//! The surface is the octagon with side word `a1 b1 a1⁻¹ b1⁻¹ a2 b2 a2⁻¹ b2⁻¹`,
//! fanned from its vertex `v0`. All eight octagon corners are identified to a
//! single vertex, so the triangulation has 1 vertex, 9 edges and 6 triangles.
//!
//! Edges `0..4` are the octagon sides (`a1`, `b1`, `a2`, `b2`), edges `4..9`
//! the diagonals `[v0, v2]` .. `[v0, v6]`. Every edge has a canonical
//! direction; each triangle lists its sides counterclockwise together with
//! whether the side runs along the edge direction.

use std::sync::OnceLock;

/// Version tag of the surface model. Every exported curve refers to it.
pub const MODEL_VERSION: &str = "octagon-fan-v1";

pub const EDGE_COUNT: usize = 9;
pub const TRIANGLE_COUNT: usize = 6;
/// Number of octagon sides carried by the four boundary edges.
pub const SIDE_EDGE_COUNT: usize = 4;

pub const EDGE_NAMES: [&str; EDGE_COUNT] = ["a1", "b1", "a2", "b2", "d2", "d3", "d4", "d5", "d6"];

/// A side of a triangle: the edge it lies on and whether the
/// counterclockwise traversal agrees with the edge direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

const fn side(edge: usize, forward: bool) -> Side {
    Side { edge, forward }
}

const TRIANGLES: [[Side; 3]; TRIANGLE_COUNT] = [
    [side(0, true), side(1, true), side(4, false)],
    [side(4, true), side(0, false), side(5, false)],
    [side(5, true), side(1, false), side(6, false)],
    [side(6, true), side(2, true), side(7, false)],
    [side(7, true), side(3, true), side(8, false)],
    [side(8, true), side(2, false), side(3, false)],
];

/// Octagon side index (0..8, counterclockwise) of each boundary edge, as
/// `(forward side, reversed side)`.
const OCTAGON_SIDES: [(u8, u8); SIDE_EDGE_COUNT] = [(0, 2), (1, 3), (4, 6), (5, 7)];

/// Incidence data derived once from the triangle table.
#[derive(Debug)]
pub struct Triangulation {
    triangles: [[Side; 3]; TRIANGLE_COUNT],
    /// For each edge: (triangle, side slot) where the side is forward, and
    /// where it is reversed.
    incidence: [[(usize, usize); 2]; EDGE_COUNT],
}

impl Triangulation {
    pub fn standard() -> &'static Triangulation {
        static CELL: OnceLock<Triangulation> = OnceLock::new();
        CELL.get_or_init(|| Triangulation::from_table(TRIANGLES))
    }

    fn from_table(triangles: [[Side; 3]; TRIANGLE_COUNT]) -> Triangulation {
        let mut incidence = [[(usize::MAX, usize::MAX); 2]; EDGE_COUNT];
        for (t, sides) in triangles.iter().enumerate() {
            for (slot, s) in sides.iter().enumerate() {
                let which = if s.forward { 0 } else { 1 };
                assert_eq!(incidence[s.edge][which].0, usize::MAX, "edge side used twice");
                incidence[s.edge][which] = (t, slot);
            }
        }
        for inc in &incidence {
            assert!(inc[0].0 != usize::MAX && inc[1].0 != usize::MAX, "edge with a free side");
        }
        Triangulation { triangles, incidence }
    }

    pub fn triangle(&self, t: usize) -> &[Side; 3] {
        &self.triangles[t]
    }

    /// The `(triangle, slot)` holding `edge` forward (`forward = true`) or reversed.
    pub fn incidence(&self, edge: usize, forward: bool) -> (usize, usize) {
        self.incidence[edge][if forward { 0 } else { 1 }]
    }

    /// Vertices are all identified; V − E + F.
    pub fn euler_characteristic(&self) -> i32 {
        1 - EDGE_COUNT as i32 + TRIANGLE_COUNT as i32
    }

    /// Connectivity of the dual graph together with the check that every edge
    /// is glued with opposite orientations (which makes the surface orientable).
    pub fn is_connected_orientable(&self) -> bool {
        let mut seen = [false; TRIANGLE_COUNT];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for s in &self.triangles[t] {
                for &(u, _) in &self.incidence[s.edge] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        seen.iter().all(|&x| x)
            && self.incidence.iter().all(|inc| {
                self.triangles[inc[0].0][inc[0].1].forward && !self.triangles[inc[1].0][inc[1].1].forward
            })
    }
}

pub fn is_side_edge(edge: usize) -> bool {
    edge < SIDE_EDGE_COUNT
}

/// Octagon side index for a boundary edge seen from its forward or reversed triangle.
pub fn octagon_side(edge: usize, forward: bool) -> u8 {
    let (f, r) = OCTAGON_SIDES[edge];
    if forward {
        f
    } else {
        r
    }
}
