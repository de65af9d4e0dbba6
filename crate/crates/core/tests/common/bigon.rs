//! Planar-map oracle: draws two embedded curves as straight chords in a
//! regular octagon, glues the complementary faces across the octagon sides
//! and looks for a complementary disk with exactly two crossing corners.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use lensphere::surface::arrangement::chords;
use lensphere::surface::curve::{BoundaryPoint, Curve};
use lensphere::surface::normal::for_each_normal;
use lensphere::surface::{intersection_number, CurveKey, NormalCurve};

#[derive(Clone, Copy)]
struct Pt {
    x: f64,
    y: f64,
}

fn boundary_xy(b: BoundaryPoint) -> Pt {
    let t = b.0 + b.1 as f64 * 1e-7;
    let ang = 2.0 * PI * t / 8.0;
    Pt { x: ang.cos(), y: ang.sin() }
}

#[derive(Clone, Copy, PartialEq, Debug)]
enum VKind {
    Corner,
    Boundary { param: f64 },
    Crossing,
}

struct Map {
    pos: Vec<Pt>,
    kind: Vec<VKind>,
    /// half-edges: (from, to, is_side_segment)
    half: Vec<(usize, usize, bool)>,
}

impl Map {
    fn vertex(&mut self, p: Pt, k: VKind) -> usize {
        self.pos.push(p);
        self.kind.push(k);
        self.pos.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize, side: bool) {
        self.half.push((u, v, side));
        self.half.push((v, u, side));
    }
}

fn seg_intersection(p1: Pt, p2: Pt, q1: Pt, q2: Pt) -> (f64, Pt) {
    let d1 = Pt { x: p2.x - p1.x, y: p2.y - p1.y };
    let d2 = Pt { x: q2.x - q1.x, y: q2.y - q1.y };
    let den = d1.x * d2.y - d1.y * d2.x;
    let t = ((q1.x - p1.x) * d2.y - (q1.y - p1.y) * d2.x) / den;
    (t, Pt { x: p1.x + t * d1.x, y: p1.y + t * d1.y })
}

fn interleave(a0: f64, a1: f64, b0: f64, b1: f64) -> bool {
    let (lo, hi) = if a0 < a1 { (a0, a1) } else { (a1, a0) };
    let inside = |x: f64| lo < x && x < hi;
    inside(b0) != inside(b1)
}

/// Result of drawing the pair: number of crossings and whether some
/// complementary region is a bigon.
pub struct Drawing {
    pub crossings: usize,
    pub has_bigon: bool,
}

pub fn draw(a: &Curve, b: &Curve) -> Drawing {
    let mut map = Map { pos: Vec::new(), kind: Vec::new(), half: Vec::new() };
    // boundary vertices keyed by perturbed parameter
    let mut bpts: Vec<(f64, usize)> = Vec::new();
    for k in 0..8 {
        let p = BoundaryPoint(k as f64, 0);
        let v = map.vertex(boundary_xy(p), VKind::Corner);
        bpts.push((k as f64, v));
    }
    let mut chord_ends: Vec<Vec<(usize, usize, f64, f64)>> = Vec::new();
    for (tag, c) in [(1, a), (2, b)] {
        let mut ends = Vec::new();
        for ch in chords(c, tag) {
            let ps = ch.start.0 + ch.start.1 as f64 * 1e-7;
            let pe = ch.end.0 + ch.end.1 as f64 * 1e-7;
            let u = map.vertex(boundary_xy(ch.start), VKind::Boundary { param: ps });
            let v = map.vertex(boundary_xy(ch.end), VKind::Boundary { param: pe });
            bpts.push((ps, u));
            bpts.push((pe, v));
            ends.push((u, v, ps, pe));
        }
        chord_ends.push(ends);
    }
    bpts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    
    for k in 0..bpts.len() {
        let (_, u) = bpts[k];
        let (_, v) = bpts[(k + 1) % bpts.len()];
        map.edge(u, v, true);
    }
    // crossings along every chord
    let mut along: Vec<Vec<Vec<(f64, usize)>>> = chord_ends.iter().map(|e| vec![Vec::new(); e.len()]).collect();
    let mut crossings = 0;
    for (i, &(u0, v0, s0, e0)) in chord_ends[0].iter().enumerate() {
        for (j, &(u1, v1, s1, e1)) in chord_ends[1].iter().enumerate() {
            if !interleave(s0, e0, s1, e1) {
                continue;
            }
            let (p, q) = (map.pos[u0], map.pos[v0]);
            let (r, s) = (map.pos[u1], map.pos[v1]);
            let (t, x) = seg_intersection(p, q, r, s);
            let (t2, _) = seg_intersection(r, s, p, q);
            let w = map.vertex(x, VKind::Crossing);
            along[0][i].push((t, w));
            along[1][j].push((t2, w));
            crossings += 1;
        }
    }
    for c in 0..2 {
        for (k, &(u, v, _, _)) in chord_ends[c].iter().enumerate() {
            let mut pts = along[c][k].clone();
            pts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            let mut seq = vec![u];
            seq.extend(pts.iter().map(|p| p.1));
            seq.push(v);
            for w in seq.windows(2) {
                map.edge(w[0], w[1], false);
            }
        }
    }
    Drawing { crossings, has_bigon: find_bigon(&map) }
}

fn find_bigon(map: &Map) -> bool {
    let n = map.pos.len();
    let angle = |h: usize| {
        let (u, v, _) = map.half[h];
        (map.pos[v].y - map.pos[u].y).atan2(map.pos[v].x - map.pos[u].x)
    };
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for h in 0..map.half.len() {
        out[map.half[h].0].push(h);
    }
    for list in out.iter_mut() {
        list.sort_by(|&x, &y| angle(x).partial_cmp(&angle(y)).unwrap());
    }
    let mut slot = vec![0usize; map.half.len()];
    for list in &out {
        for (k, &h) in list.iter().enumerate() {
            slot[h] = k;
        }
    }
    let twin = |h: usize| h ^ 1;
    // face on the left: at the head, turn to the clockwise neighbour of the twin
    let next = |h: usize| {
        let t = twin(h);
        let v = map.half[t].0;
        let list = &out[v];
        list[(slot[t] + list.len() - 1) % list.len()]
    };
    let mut face_of = vec![usize::MAX; map.half.len()];
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for h in 0..map.half.len() {
        if face_of[h] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let mut g = h;
        while face_of[g] == usize::MAX {
            face_of[g] = id;
            walk.push(g);
            g = next(g);
        }
        faces.push(walk);
    }
    let area = |f: &Vec<usize>| {
        f.iter()
            .map(|&h| {
                let (u, v, _) = map.half[h];
                map.pos[u].x * map.pos[v].y - map.pos[v].x * map.pos[u].y
            })
            .sum::<f64>()
    };
    let inner: Vec<usize> = (0..faces.len()).filter(|&f| area(&faces[f]) > 0.0).collect();
    // glue faces across side segments; a segment on side s at offset t is
    // identified with the segment on the partner side at offset 1 - t
    const PARTNER: [usize; 8] = [2, 3, 0, 1, 6, 7, 4, 5];
    let param = |v: usize| match map.kind[v] {
        VKind::Corner => None,
        VKind::Boundary { param } => Some(param),
        VKind::Crossing => unreachable!(),
    };
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut seg_face: HashMap<(usize, i64), usize> = HashMap::new();
    let mut glued_pairs: Vec<usize> = Vec::new();
    let mut has_corner = vec![false; faces.len()];
    for &f in &inner {
        for &h in &faces[f] {
            let (u, v, side) = map.half[h];
            if map.kind[u] == VKind::Corner {
                has_corner[f] = true;
            }
            if !side {
                continue;
            }
            let pu = param(u).unwrap_or_else(|| corner_param(map, u));
            let mut pv = param(v).unwrap_or_else(|| corner_param(map, v));
            if pv < pu {
                pv += 8.0;
            }
            let mid = (pu + pv) / 2.0;
            let s = (mid.floor() as usize) % 8;
            let off = mid - mid.floor();
            let key_there = (PARTNER[s], ((1.0 - off) * 1e6).round() as i64);
            match seg_face.get(&key_there) {
                Some(&g) => {
                    let (rf, rg) = (find(&mut parent, f), find(&mut parent, g));
                    parent[rf] = rg;
                    glued_pairs.push(f);
                }
                None => {
                    seg_face.insert((s, (off * 1e6).round() as i64), f);
                }
            }
        }
    }
    // Euler characteristic per region: faces - glued segments + interior vertex
    let mut chi: HashMap<usize, i64> = HashMap::new();
    let mut corners: HashMap<usize, usize> = HashMap::new();
    let mut touches_v0: HashMap<usize, bool> = HashMap::new();
    for &f in &inner {
        let r = find(&mut parent, f);
        *chi.entry(r).or_default() += 1;
        let c = faces[f].iter().filter(|&&h| map.kind[map.half[h].0] == VKind::Crossing).count();
        *corners.entry(r).or_default() += c;
        if has_corner[f] {
            touches_v0.insert(r, true);
        }
    }
    let mut glued: HashMap<usize, i64> = HashMap::new();
    for &f in &glued_pairs {
        *glued.entry(find(&mut parent, f)).or_default() += 1;
    }
    chi.iter().any(|(r, &c)| {
        let x = c - glued.get(r).copied().unwrap_or(0) + if touches_v0.contains_key(r) { 1 } else { 0 };
        x == 1 && corners.get(r).copied().unwrap_or(0) == 2
    })
}

fn corner_param(map: &Map, v: usize) -> f64 {
    let p = map.pos[v];
    let mut a = p.y.atan2(p.x) / (2.0 * PI) * 8.0;
    if a < -1e-9 {
        a += 8.0;
    }
    a.round() % 8.0
}

/// Essential connected curves with normal weights bounded by `max`, grouped
/// by isotopy class; each class keeps its representatives sorted by total weight.
pub fn classes(max: u32, total_cap: u32) -> BTreeMap<CurveKey, Vec<Curve>> {
    let mut out: BTreeMap<CurveKey, Vec<Curve>> = BTreeMap::new();
    for_each_normal(max, None, &mut |w| {
        if w.iter().sum::<u32>() > total_cap {
            return;
        }
        let n = NormalCurve::new(*w).unwrap();
        if !n.is_connected() {
            return;
        }
        if let Ok(c) = Curve::from_normal(&n) {
            out.entry(c.key().clone()).or_default().push(c);
        }
    });
    for reps in out.values_mut() {
        reps.sort_by_key(|c| c.normal().unwrap().total_weight());
    }
    out
}

/// Some pair of representatives without a bigon realizes the intersection
/// number; pairs are tried lightest first.
pub fn oracle(ra: &[Curve], rb: &[Curve]) -> Option<usize> {
    let weight = |c: &Curve| c.normal().unwrap().total_weight();
    let mut pairs: Vec<(u32, &Curve, &Curve)> = Vec::new();
    for a in ra {
        for b in rb {
            pairs.push((weight(a) + weight(b), a, b));
        }
    }
    pairs.sort_by_key(|p| p.0);
    pairs.into_iter().map(|(_, a, b)| draw(a, b)).find(|d| !d.has_bigon).map(|d| d.crossings)
}

/// Outcome of comparing `intersection_number` with the oracle on every pair of
/// classes whose lightest representative has total weight at most `total`.
pub struct Agreement {
    pub classes: usize,
    pub pairs: usize,
    pub unresolved: usize,
    pub mismatches: Vec<String>,
}

pub fn compare_with_oracle(total: u32) -> Agreement {
    // representatives come from a wider box so every pair finds a bigon-free drawing
    let cls = classes(10, 40);
    let keys: Vec<&CurveKey> =
        cls.iter().filter(|(_, reps)| reps[0].normal().unwrap().total_weight() <= total).map(|(k, _)| k).collect();
    let mut out = Agreement { classes: keys.len(), pairs: 0, unresolved: 0, mismatches: Vec::new() };
    for (x, ka) in keys.iter().enumerate() {
        for kb in &keys[x + 1..] {
            let (ra, rb) = (&cls[*ka], &cls[*kb]);
            out.pairs += 1;
            let got = intersection_number(&ra[0], &rb[0]) as usize;
            match oracle(ra, rb) {
                Some(expect) if expect == got => {}
                Some(expect) => out.mismatches.push(format!("{} vs {}: {} but oracle {}", ka, kb, got, expect)),
                None => out.unresolved += 1,
            }
        }
    }
    out
}
