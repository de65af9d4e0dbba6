//! Words in the fundamental group of the closed genus-2 surface.
//!
//! Generators are the loops dual to the four boundary edges of the octagon,
//! with the single relator `A B A⁻¹ B⁻¹ C D C⁻¹ D⁻¹`. The presentation is
//! C′(1/7) (all pieces have length one), so Dehn's algorithm decides the
//! word problem: a non-empty freely reduced word is trivial only if it
//! contains more than half of a cyclic conjugate of the relator or its
//! inverse.
//!
//! Free homotopy classes of closed curves are conjugacy classes. The
//! canonical key of an unoriented class is computed by cyclic Dehn reduction
//! followed by a closure over half-relator swaps, taking the least rotation
//! (over both orientations) among the shortest words reached.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Letter encoding: `2 * generator + inverse_bit`.
pub type Letter = u8;

pub const GENERATORS: usize = 4;
const LETTER_CHARS: [char; 8] = ['a', 'A', 'b', 'B', 'c', 'C', 'd', 'D'];

pub const RELATOR: [Letter; 8] = [0, 2, 1, 3, 4, 6, 5, 7];

const CLOSURE_CAP: usize = 250_000;

#[inline]
pub fn inv(l: Letter) -> Letter {
    l ^ 1
}

#[inline]
pub fn generator(l: Letter) -> usize {
    (l >> 1) as usize
}

#[inline]
pub fn exponent(l: Letter) -> i32 {
    if l & 1 == 0 {
        1
    } else {
        -1
    }
}

pub fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| inv(l)).collect()
}

pub fn format_letters(w: &[Letter]) -> String {
    w.iter().map(|&l| LETTER_CHARS[l as usize]).collect()
}

pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| {
            LETTER_CHARS
                .iter()
                .position(|&x| x == c)
                .map(|p| p as Letter)
                .ok_or_else(|| Error::Parse(format!("bad surface letter {c:?} in {s:?}")))
        })
        .collect()
}

struct RelatorTables {
    /// 5-letter subword code -> 3-letter shorter replacement.
    long: Vec<Option<[Letter; 3]>>,
    /// 4-letter subword code -> the other half.
    half: Vec<Option<[Letter; 4]>>,
}

fn code(w: &[Letter]) -> usize {
    w.iter().fold(0usize, |acc, &l| (acc << 3) | l as usize)
}

fn tables() -> &'static RelatorTables {
    static CELL: OnceLock<RelatorTables> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut long = vec![None; 1 << 15];
        let mut half = vec![None; 1 << 12];
        let r_inv = inverse_word(&RELATOR);
        for base in [RELATOR.to_vec(), r_inv] {
            for s in 0..8 {
                let rot: Vec<Letter> = (0..8).map(|i| base[(s + i) % 8]).collect();
                let rest: Vec<Letter> = inverse_word(&rot[5..]);
                long[code(&rot[..5])] = Some([rest[0], rest[1], rest[2]]);
                let other = inverse_word(&rot[4..]);
                half[code(&rot[..4])] = Some([other[0], other[1], other[2], other[3]]);
            }
        }
        RelatorTables { long, half }
    })
}

fn push_letter(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&inv(l)) {
        stack.pop();
        return;
    }
    stack.push(l);
    let n = stack.len();
    if n >= 5 {
        if let Some(rep) = tables().long[code(&stack[n - 5..])] {
            stack.truncate(n - 5);
            for r in rep {
                push_letter(stack, r);
            }
        }
    }
}

/// Freely reduces `w` and removes every subword longer than half a relator.
pub fn dehn_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut stack = Vec::with_capacity(w.len());
    for &l in w {
        push_letter(&mut stack, l);
    }
    stack
}

pub fn is_trivial(w: &[Letter]) -> bool {
    dehn_reduce(w).is_empty()
}

fn rotate(w: &[Letter], s: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[s..]);
    out.extend_from_slice(&w[..s]);
    out
}

/// Cyclic word with no cyclic cancellation and no cyclic subword longer than
/// half a relator.
pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut w = dehn_reduce(w);
    loop {
        let mut start = 0;
        let mut end = w.len();
        while end - start >= 2 && w[start] == inv(w[end - 1]) {
            start += 1;
            end -= 1;
        }
        if start > 0 {
            w = dehn_reduce(&w[start..end]);
            continue;
        }
        let n = w.len();
        if n < 5 {
            return w;
        }
        let t = tables();
        let wrap = (n - 4..n).find(|&s| {
            let window: Vec<Letter> = (0..5).map(|i| w[(s + i) % n]).collect();
            t.long[code(&window)].is_some()
        });
        match wrap {
            Some(s) => w = dehn_reduce(&rotate(&w, s)),
            None => return w,
        }
    }
}

pub fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for s in 1..n {
        for i in 0..n {
            let a = w[(s + i) % n];
            let b = w[(best + i) % n];
            if a != b {
                if a < b {
                    best = s;
                }
                break;
            }
        }
    }
    rotate(w, best)
}

fn least_both(u: &[Letter]) -> Vec<Letter> {
    least_rotation(u).min(least_rotation(&inverse_word(u)))
}

fn half_swap(window: [Letter; 4]) -> Option<[Letter; 4]> {
    tables().half[code(&window)]
}

fn window_at(u: &[Letter], s: usize) -> [Letter; 4] {
    let n = u.len();
    [u[s % n], u[(s + 1) % n], u[(s + 2) % n], u[(s + 3) % n]]
}

enum Closure {
    /// A half swap exposed a shorter representative.
    Shorter(Vec<Letter>),
    Least(Vec<Letter>),
}

/// Least word (over rotations and orientations) in the half-swap closure of
/// a cyclically reduced `u`, by listing the whole closure.
fn closure_by_listing(u: &[Letter]) -> Closure {
    let len = u.len();
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let first = least_rotation(u);
    seen.insert(first.clone());
    let mut queue = vec![first];
    while let Some(u) = queue.pop() {
        for s in 0..len {
            let Some(other) = half_swap(window_at(&u, s)) else { continue };
            let mut v = rotate(&u, s);
            v[..4].copy_from_slice(&other);
            let v = cyclic_reduce(&v);
            if v.len() < len {
                return Closure::Shorter(v);
            }
            let key = least_rotation(&v);
            if seen.insert(key.clone()) {
                assert!(seen.len() <= CLOSURE_CAP, "half-swap closure exceeded {CLOSURE_CAP} words");
                queue.push(key);
            }
        }
    }
    Closure::Least(seen.iter().map(|u| least_both(u)).min().expect("closure is non-empty"))
}

/// Gap, in letters, below which two swap regions are explored together. A
/// Dehn reduction reads five letters, so farther regions cannot interact.
const REGION_GAP: usize = 4;

enum Explored {
    Extend([usize; 4]),
    Shorter(Vec<Letter>),
    Done(Vec<Vec<Letter>>),
}

/// Every letter assignment of the cyclic interval `start..start + len` of `u`
/// reachable by swaps inside it, the rest of `u` held fixed.
fn explore_region(u: &[Letter], start: usize, len: usize) -> Explored {
    let n = u.len();
    let place = |state: &[Letter]| {
        let mut w = u.to_vec();
        for (k, &l) in state.iter().enumerate() {
            w[(start + k) % n] = l;
        }
        w
    };
    let first: Vec<Letter> = (0..len).map(|k| u[(start + k) % n]).collect();
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([first.clone()]);
    let mut queue = vec![first];
    while let Some(state) = queue.pop() {
        let w = place(&state);
        for k in 0..len + 3 {
            let s = (start + n - 3 + k) % n;
            let Some(other) = half_swap(window_at(&w, s)) else { continue };
            let r = (s + n - start) % n;
            if r + 4 > len {
                return Explored::Extend([s, (s + 1) % n, (s + 2) % n, (s + 3) % n]);
            }
            let mut next = state.clone();
            next[r..r + 4].copy_from_slice(&other);
            if seen.contains(&next) {
                continue;
            }
            let v = cyclic_reduce(&place(&next));
            if v.len() < n {
                return Explored::Shorter(v);
            }
            seen.insert(next.clone());
            assert!(seen.len() <= CLOSURE_CAP, "half-swap closure exceeded {CLOSURE_CAP} words");
            queue.push(next);
        }
    }
    let mut states: Vec<Vec<Letter>> = seen.into_iter().collect();
    states.sort();
    Explored::Done(states)
}

/// Maximal cyclic runs of covered positions as `(start, len)`; at least one
/// position must be uncovered.
fn runs(covered: &[bool]) -> Vec<(usize, usize)> {
    let n = covered.len();
    let free = covered.iter().position(|&c| !c).expect("an uncovered position");
    let mut out = Vec::new();
    let mut k = 1;
    while k <= n {
        let p = (free + k) % n;
        if covered[p] {
            let mut len = 0;
            while covered[(p + len) % n] {
                len += 1;
            }
            out.push((p, len));
            k += len;
        } else {
            k += 1;
        }
    }
    out
}

/// Least rotation over all combinations of independent region variants.
fn assemble(u: &[Letter], regions: &[(usize, usize)], variants: &[Vec<Vec<Letter>>]) -> Vec<Letter> {
    let n = u.len();
    let mut base = u.to_vec();
    let mut at = vec![None; n];
    for (i, &(start, len)) in regions.iter().enumerate() {
        for k in 0..len {
            base[(start + k) % n] = variants[i][0][k];
            at[(start + k) % n] = Some((i, k));
        }
    }
    let mut best: Option<Vec<Letter>> = None;
    for r in 0..n {
        let cand = match at[r] {
            Some((i, off)) if off > 0 => {
                // the region wraps around the start: its tail leads, its head trails
                let v = variants[i].iter().min_by(|x, y| (&x[off..], &x[..off]).cmp(&(&y[off..], &y[..off]))).unwrap();
                let mut w = base.clone();
                let (start, len) = regions[i];
                for k in 0..len {
                    w[(start + k) % n] = v[k];
                }
                rotate(&w, r)
            }
            _ => rotate(&base, r),
        };
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("non-empty word")
}

/// Same result as `closure_by_listing`. Swap regions separated by more than
/// `REGION_GAP` letters vary independently, so the closure is a product of
/// per-region closures and its least word is assembled region by region.
fn closure_by_regions(u: &[Letter]) -> Closure {
    let n = u.len();
    let mut covered = vec![false; n];
    for s in 0..n {
        if half_swap(window_at(u, s)).is_some() {
            for k in 0..4 {
                covered[(s + k) % n] = true;
            }
        }
    }
    if !covered.contains(&true) {
        return Closure::Least(least_both(u));
    }
    'grow: loop {
        // join regions that a five-letter window could see together
        let gaps: Vec<(usize, usize)> = runs(&covered.iter().map(|c| !c).collect::<Vec<_>>());
        for (start, len) in gaps {
            if len <= REGION_GAP {
                for k in 0..len {
                    covered[(start + k) % n] = true;
                }
            }
        }
        if covered.iter().filter(|&&c| !c).count() <= REGION_GAP {
            return closure_by_listing(u);
        }
        let regions = runs(&covered);
        let mut variants = Vec::with_capacity(regions.len());
        for &(start, len) in &regions {
            match explore_region(u, start, len) {
                Explored::Extend(ps) => {
                    for p in ps {
                        covered[p] = true;
                    }
                    continue 'grow;
                }
                Explored::Shorter(v) => return Closure::Shorter(v),
                Explored::Done(vs) => variants.push(vs),
            }
        }
        let forward = assemble(u, &regions, &variants);
        // the inverse word carries the mirrored regions with inverted variants
        let ui = inverse_word(u);
        let mirrored: Vec<(usize, usize)> = regions.iter().map(|&(s, l)| ((2 * n - s - l) % n, l)).collect();
        let inverted: Vec<Vec<Vec<Letter>>> =
            variants
            .iter()
            .map(|vs| {
                let mut vs: Vec<Vec<Letter>> = vs.iter().map(|v| inverse_word(v)).collect();
                vs.sort();
                vs
            })
            .collect();
        return Closure::Least(forward.min(assemble(&ui, &mirrored, &inverted)));
    }
}

/// Canonical key of the unoriented conjugacy class of `w`.
pub fn canonical_cyclic(w: &[Letter]) -> Vec<Letter> {
    let mut current = cyclic_reduce(w);
    loop {
        if current.len() < 4 {
            return least_both(&current);
        }
        match closure_by_regions(&current) {
            Closure::Shorter(v) => current = v,
            Closure::Least(k) => return k,
        }
    }
}

/// Exponent sums, i.e. the integral homology class in the dual-edge basis.
pub type Homology = [i32; GENERATORS];

pub fn homology(w: &[Letter]) -> Homology {
    let mut h = [0; GENERATORS];
    for &l in w {
        h[generator(l)] += exponent(l);
    }
    h
}

/// Algebraic intersection pairing on first homology.
pub fn algebraic_intersection(x: &Homology, y: &Homology) -> i32 {
    x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]
}

/// Z/2 homology class: bit `g` is the parity of the exponent sum of generator `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomologyClass2(pub u8);

impl HomologyClass2 {
    pub fn of(w: &[Letter]) -> Self {
        let h = homology(w);
        HomologyClass2(h.iter().enumerate().fold(0u8, |acc, (g, &e)| acc | (((e & 1) as u8) << g)))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for HomologyClass2 {
    type Output = HomologyClass2;
    fn add(self, rhs: Self) -> Self {
        HomologyClass2(self.0 ^ rhs.0)
    }
}

/// A cyclic word in canonical form; the isotopy key of a closed curve.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveKey(Vec<Letter>);

impl CurveKey {
    pub fn from_cyclic(w: &[Letter]) -> Self {
        CurveKey(canonical_cyclic(w))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let w = parse_letters(s)?;
        Ok(CurveKey::from_cyclic(&w))
    }
}

impl fmt::Display for CurveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.0))
    }
}

impl Serialize for CurveKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CurveKey::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for CurveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveKey({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Vec<Letter> {
        parse_letters(s).unwrap()
    }

    #[test]
    fn relator_is_trivial() {
        assert!(is_trivial(&RELATOR));
        assert!(is_trivial(&inverse_word(&RELATOR)));
        assert!(is_trivial(&w("bABcdCDa")));
        assert!(!is_trivial(&w("abAB")));
        assert!(!is_trivial(&w("a")));
    }

    #[test]
    fn half_relator_swap() {
        // abAB = (cdCD)^-1 = dcDC
        assert!(is_trivial(&[w("abAB"), inverse_word(&w("dcDC"))].concat()));
        assert_eq!(CurveKey::from_cyclic(&w("abAB")), CurveKey::from_cyclic(&w("dcDC")));
    }

    #[test]
    fn conjugates_share_a_key() {
        let base = w("abbcD");
        let g = w("cAd");
        let conj = [g.clone(), base.clone(), inverse_word(&g)].concat();
        assert_eq!(CurveKey::from_cyclic(&base), CurveKey::from_cyclic(&conj));
        assert_eq!(CurveKey::from_cyclic(&base), CurveKey::from_cyclic(&inverse_word(&base)));
    }

    #[test]
    fn trivial_classes_are_empty() {
        assert!(CurveKey::from_cyclic(&RELATOR).is_empty());
        assert!(CurveKey::from_cyclic(&w("aA")).is_empty());
    }

    fn word_strategy(max: usize) -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(0u8..8, 1..max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn key_invariant_under_conjugation_and_relator_insertion(
            base in word_strategy(14),
            g in word_strategy(8),
            pos in 0usize..16,
            rot in 0usize..8,
        ) {
            let mut conj = [g.clone(), base.clone(), inverse_word(&g)].concat();
            let p = pos % (conj.len() + 1);
            let r: Vec<Letter> = (0..8).map(|i| RELATOR[(rot + i) % 8]).collect();
            conj.splice(p..p, r);
            prop_assert_eq!(CurveKey::from_cyclic(&base), CurveKey::from_cyclic(&conj));
        }

        #[test]
        fn regions_agree_with_listing(pieces in proptest::collection::vec((0u8..8, 0usize..16, any::<bool>()), 1..9)) {
            // half relators packed with filler letters exercise neighbouring swap regions
            let mut word = Vec::new();
            for (l, rot, half) in pieces {
                word.push(l);
                if half {
                    let base = if rot < 8 { RELATOR.to_vec() } else { inverse_word(&RELATOR) };
                    word.extend((0..4).map(|i| base[(rot + i) % 8]));
                }
            }
            let mut u = cyclic_reduce(&word);
            while u.len() >= 4 {
                match (closure_by_listing(&u), closure_by_regions(&u)) {
                    (Closure::Least(a), Closure::Least(b)) => {
                        prop_assert_eq!(a, b);
                        break;
                    }
                    (Closure::Shorter(_), Closure::Shorter(b)) => u = b,
                    _ => prop_assert!(false, "methods disagree on reducibility of {:?}", u),
                }
            }
        }

        #[test]
        fn dehn_reduce_is_idempotent_and_sound(word in word_strategy(30)) {
            let r = dehn_reduce(&word);
            prop_assert_eq!(dehn_reduce(&r), r.clone());
            let check = [word.clone(), inverse_word(&r)].concat();
            prop_assert!(is_trivial(&check));
        }
    }
}
