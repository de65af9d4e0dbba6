//! Pairs of realized curves drawn as chords in the octagon.
//!
//! Chord `i` of a curve runs from the entry point of passage `i - 1` to the
//! exit point of passage `i`. Two chords cross iff their endpoints interleave
//! on the octagon boundary.

use super::curve::{BoundaryPoint, Curve, Passage};
use super::word::{algebraic_intersection, homology, inv, is_trivial, Homology, Letter};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct Chord {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
}

pub fn chords(c: &Curve, tag: i32) -> Vec<Chord> {
    chords_of(c.passages(), tag)
}

fn chords_of(ps: &[Passage], tag: i32) -> Vec<Chord> {
    let n = ps.len();
    (0..n)
        .map(|i| Chord { start: ps[(i + n - 1) % n].entry_point(tag), end: ps[i].exit_point(tag) })
        .collect()
}

fn lt(a: BoundaryPoint, b: BoundaryPoint) -> bool {
    a < b
}

/// Strictly inside the counterclockwise arc from `from` to `to`.
fn in_ccw_arc(x: BoundaryPoint, from: BoundaryPoint, to: BoundaryPoint) -> bool {
    if lt(from, to) {
        lt(from, x) && lt(x, to)
    } else {
        lt(from, x) || lt(x, to)
    }
}

pub fn chords_cross(p: &Chord, q: &Chord) -> bool {
    in_ccw_arc(q.start, p.start, p.end) != in_ccw_arc(q.end, p.start, p.end)
}

/// Whether, walking along `c`, chord `t1` is met before chord `t2`. Both must
/// cross `c` and be disjoint from each other.
fn met_before(c: &Chord, t1: &Chord, t2: &Chord) -> bool {
    // t1 separates c.start from t2
    in_ccw_arc(c.start, t1.start, t1.end) != in_ccw_arc(t2.start, t1.start, t1.end)
}

/// A crossing between chord `i` of the first curve and chord `j` of the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub i: usize,
    pub j: usize,
}

pub fn crossings(a: &Curve, b: &Curve) -> Vec<Crossing> {
    let ca = chords(a, 0);
    let cb = chords(b, 1);
    let mut out = Vec::new();
    for (i, p) in ca.iter().enumerate() {
        for (j, q) in cb.iter().enumerate() {
            if chords_cross(p, q) {
                out.push(Crossing { i, j });
            }
        }
    }
    out
}

/// Letters from position `from` up to (not including) `to`, cyclically;
/// empty when `from == to`.
fn cyclic_segment(w: &[Letter], from: usize, to: usize) -> Vec<Letter> {
    if from <= to {
        w[from..to].to_vec()
    } else {
        let mut s = w[from..].to_vec();
        s.extend_from_slice(&w[..to]);
        s
    }
}

fn rotated(w: &[Letter], i: usize) -> Vec<Letter> {
    let mut r = w[i..].to_vec();
    r.extend_from_slice(&w[..i]);
    r
}

fn push_power(out: &mut Vec<Letter>, base: &[Letter], k: i64) {
    if k >= 0 {
        for _ in 0..k {
            out.extend_from_slice(base);
        }
    } else {
        let inv_base: Vec<Letter> = base.iter().rev().map(|&l| inv(l)).collect();
        for _ in 0..(-k) {
            out.extend_from_slice(&inv_base);
        }
    }
}

fn push_inverse(out: &mut Vec<Letter>, w: &[Letter]) {
    out.extend(w.iter().rev().map(|&l| inv(l)));
}

fn sub(x: &Homology, y: &Homology) -> Homology {
    [x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]]
}

/// Decides whether `A^k alpha = B^m beta` for some integers `k`, `m`.
fn same_lift_pair(a_loop: &[Letter], alpha: &[Letter], b_loop: &[Letter], beta: &[Letter]) -> bool {
    let ha = homology(a_loop);
    let hb = homology(b_loop);
    let d = sub(&homology(beta), &homology(alpha));
    let holds = |k: i64, m: i64| {
        let mut w = Vec::new();
        push_power(&mut w, a_loop, k);
        w.extend_from_slice(alpha);
        push_inverse(&mut w, beta);
        push_power(&mut w, b_loop, -m);
        is_trivial(&w)
    };
    // k ha - m hb = d
    for r in 0..4 {
        for s in (r + 1)..4 {
            let det = -(ha[r] as i64) * hb[s] as i64 + (ha[s] as i64) * hb[r] as i64;
            if det == 0 {
                continue;
            }
            let kn = (d[r] as i64) * (-(hb[s] as i64)) + (hb[r] as i64) * d[s] as i64;
            let mn = (ha[r] as i64) * d[s] as i64 - (ha[s] as i64) * d[r] as i64;
            if kn % det != 0 || mn % det != 0 {
                return false;
            }
            let (k, m) = (kn / det, mn / det);
            if (0..4).any(|t| k * ha[t] as i64 - m * hb[t] as i64 != d[t] as i64) {
                return false;
            }
            return holds(k, m);
        }
    }
    // homologically parallel loops: search a bounded window
    let len = (alpha.len() + beta.len() + a_loop.len() + b_loop.len() + 8) as i64;
    let bound_k = 2 + 2 * len / a_loop.len().max(1) as i64;
    let bound_m = 2 + 2 * len / b_loop.len().max(1) as i64;
    let hb_nonzero = (0..4).find(|&t| hb[t] != 0);
    for k in -bound_k..=bound_k {
        match hb_nonzero {
            Some(t) => {
                let num = k * ha[t] as i64 - d[t] as i64;
                if num % hb[t] as i64 != 0 {
                    continue;
                }
                let m = num / hb[t] as i64;
                if (0..4).all(|u| k * ha[u] as i64 - m * hb[u] as i64 == d[u] as i64) && holds(k, m) {
                    return true;
                }
            }
            None => {
                if (0..4).any(|u| k * ha[u] as i64 != d[u] as i64) {
                    continue;
                }
                if (-bound_m..=bound_m).any(|m| holds(k, m)) {
                    return true;
                }
            }
        }
    }
    false
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
}

/// Geometric intersection number of two essential curves.
///
/// Crossings of the realizations are grouped by the pair of lifts to the
/// universal cover they sit on; a pair of lifts is linked iff it crosses an
/// odd number of times, and minimal position realizes each linked pair once.
pub fn intersection_number(a: &Curve, b: &Curve) -> u32 {
    if a.key() == b.key() {
        return 0;
    }
    let xs = crossings(a, b);
    let iota = algebraic_intersection(a.homology(), b.homology()).unsigned_abs();
    if xs.len() as u32 == iota {
        return iota;
    }
    lift_classes(a, b, &xs).into_iter().filter(|c| c.len() % 2 == 1).count() as u32
}

/// Crossings grouped by lift pair, each group in crossing-list order.
pub fn lift_classes(a: &Curve, b: &Curve, xs: &[Crossing]) -> Vec<Vec<usize>> {
    let wa = a.word();
    let wb = b.word();
    let mut uf = UnionFind((0..xs.len()).collect());
    let mut reps: Vec<usize> = Vec::new();
    for y in 0..xs.len() {
        let mut joined = None;
        for &x in &reps {
            let (cx, cy) = (xs[x], xs[y]);
            let a_loop = rotated(wa, cx.i);
            let b_loop = rotated(wb, cx.j);
            let alpha = cyclic_segment(wa, cx.i, cy.i);
            let beta = cyclic_segment(wb, cx.j, cy.j);
            if same_lift_pair(&a_loop, &alpha, &b_loop, &beta) {
                joined = Some(x);
                break;
            }
        }
        match joined {
            Some(x) => {
                let r = uf.find(x);
                uf.0[y] = r;
            }
            None => reps.push(y),
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of = std::collections::HashMap::new();
    for y in 0..xs.len() {
        let r = uf.find(y);
        let g = *index_of.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(y);
    }
    groups
}

/// Boundary of a regular neighborhood of two curves meeting once: the
/// commutator of the two loops based at their essential crossing.
pub fn neighborhood_boundary(a: &Curve, b: &Curve) -> Result<Curve> {
    let xs = crossings(a, b);
    let odd: Vec<Vec<usize>> = lift_classes(a, b, &xs).into_iter().filter(|c| c.len() % 2 == 1).collect();
    if odd.len() != 1 {
        return Err(Error::Precondition(format!("curves meet {} times, need exactly 1", odd.len())));
    }
    let x = xs[odd[0][0]];
    let la = rotated(a.word(), x.i);
    let lb = rotated(b.word(), x.j);
    let mut w = la.clone();
    w.extend_from_slice(&lb);
    push_inverse(&mut w, &la);
    push_inverse(&mut w, &lb);
    Curve::from_word(&w)
}

/// Crossings met along each chord of `c`, in order, against the chords of
/// `other` (which must be embedded). Entries are `(chord of c, chord of other)`.
fn crossings_along(c: &[Chord], other: &[Chord]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, ci) in c.iter().enumerate() {
        let mut hits: Vec<usize> = (0..other.len()).filter(|&j| chords_cross(ci, &other[j])).collect();
        hits.sort_by(|&x, &y| {
            if x == y {
                std::cmp::Ordering::Equal
            } else if met_before(ci, &other[x], &other[y]) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        out.extend(hits.into_iter().map(|j| (i, j)));
    }
    out
}

/// Dehn twist of `c` along the embedded curve `along`, `k` times (sign gives
/// direction). The result is the isotopy class; its realization is generic.
pub fn dehn_twist(c: &Curve, along: &Curve, k: i32) -> Result<Curve> {
    if !along.is_embedded() {
        return Err(Error::Precondition("twist curve has no embedded realization".into()));
    }
    let cc = chords(c, 0);
    let ct = chords(along, 1);
    let wt = along.word();
    let wc = c.word();
    let hits = crossings_along(&cc, &ct);
    let mut out = Vec::new();
    let mut h = 0;
    for (i, &letter) in wc.iter().enumerate() {
        while h < hits.len() && hits[h].0 == i {
            let j = hits[h].1;
            let (p, q) = (cc[i].start, cc[i].end);
            let eps = if in_ccw_arc(ct[j].end, q, p) { 1 } else { -1 };
            push_power(&mut out, &rotated(wt, j), (eps * k) as i64);
            h += 1;
        }
        out.push(letter);
    }
    Curve::from_word(&out)
}

/// Curves obtained by surgering `c1` along outermost arcs of `c2` cut by `c1`;
/// only results meeting `c2` fewer times than `c1` does are returned, sorted
/// and deduplicated.
pub fn band_surgery_candidates(c1: &Curve, c2: &Curve) -> Result<Vec<Curve>> {
    if !c1.is_embedded() || !c2.is_embedded() {
        return Err(Error::Precondition("band surgery needs embedded realizations".into()));
    }
    let before = intersection_number(c1, c2);
    if before < 2 {
        return Err(Error::Precondition(format!("curves meet {} times, need at least 2", before)));
    }
    let ch1 = chords(c1, 0);
    let ch2 = chords(c2, 1);
    let w1 = c1.word();
    let w2 = c2.word();
    // crossings in order along c2: (chord of c2, chord of c1)
    let along2 = crossings_along(&ch2, &ch1);
    let n = along2.len();
    let mut out: Vec<Curve> = Vec::new();
    // realizations need not be in minimal position, so an outermost arc may
    // pass further crossings: try every pair of crossings along c2
    for s in 0..n {
        for t in 1..n {
            let (jx, ix) = along2[s];
            let (jy, iy) = along2[(s + t) % n];
            let beta = match (jx == jy, s + t < n) {
                (true, true) => Vec::new(),
                (true, false) => rotated(w2, jx),
                (false, _) => cyclic_segment(w2, jx, jy),
            };
            let (gamma1, gamma2) = if ix != iy {
                (cyclic_segment(w1, ix, iy), cyclic_segment(w1, iy, ix))
            } else if met_before(&ch1[ix], &ch2[jx], &ch2[jy]) {
                (Vec::new(), rotated(w1, ix))
            } else {
                (rotated(w1, ix), Vec::new())
            };
            let mut cand1 = gamma1;
            push_inverse(&mut cand1, &beta);
            let mut cand2 = gamma2;
            cand2.extend_from_slice(&beta);
            for w in [cand1, cand2] {
                if let Ok(c) = Curve::from_word(&w) {
                    if intersection_number(&c, c2) < before {
                        out.push(c);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::word::parse_letters;

    fn curve(s: &str) -> Curve {
        Curve::from_word(&parse_letters(s).unwrap()).unwrap()
    }

    #[test]
    fn standard_pairs() {
        let a = curve("a");
        let b = curve("b");
        let c = curve("c");
        assert_eq!(intersection_number(&a, &b), 1);
        assert_eq!(intersection_number(&a, &c), 0);
        assert_eq!(intersection_number(&a, &a), 0);
    }
}
