//! Budgeted disk sets, dual disks and Haken spheres.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::diagram::{HandleSide, HeegaardDiagram};
use crate::error::{Error, Result};
use crate::surface::normal::{for_each_normal, NormalCurve};
use crate::surface::triangulation::EDGE_COUNT;
use crate::surface::word::{algebraic_intersection, HomologyClass2, Letter};
use crate::surface::{band_surgery_candidates, intersection_number, neighborhood_boundary, Curve, CurveKey};
use crate::words::{is_primitive, FreeWord};

/// An essential non-separating disk in one handlebody, up to isotopy.
#[derive(Clone, Debug)]
pub struct DiskClass {
    pub side: HandleSide,
    pub curve: Curve,
    /// Boundary word in the disk's own handlebody (trivial).
    pub word_self: FreeWord,
    /// Boundary word in the opposite handlebody.
    pub word_other: FreeWord,
    /// Least per-edge budget at which the class has a normal representative;
    /// `None` for disks produced by surgery outside the enumerated set.
    pub level: Option<u32>,
}

impl DiskClass {
    pub fn from_curve(d: &HeegaardDiagram, side: HandleSide, curve: Curve, level: Option<u32>) -> Result<DiskClass> {
        if !d.bounds_disk(side, &curve) {
            return Err(Error::Precondition(format!("{} does not bound a disk in {}", curve.key(), side)));
        }
        if curve.is_separating() {
            return Err(Error::Precondition(format!("{} is separating", curve.key())));
        }
        Ok(DiskClass {
            side,
            word_self: d.word_in(side, &curve)?,
            word_other: d.word_in(side.other(), &curve)?,
            curve,
            level,
        })
    }

    pub fn key(&self) -> &CurveKey {
        self.curve.key()
    }

    pub fn normal(&self) -> Option<&NormalCurve> {
        self.curve.normal()
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.word_other)
    }
}

impl PartialEq for DiskClass {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.key() == other.key()
    }
}

impl Eq for DiskClass {}

/// A disk in `V` and a disk in `W` whose boundaries meet once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub v: DiskClass,
    pub w: DiskClass,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DualPairKey {
    pub v: CurveKey,
    pub w: CurveKey,
}

impl DualPair {
    pub fn new(v: DiskClass, w: DiskClass) -> Result<DualPair> {
        if v.side != HandleSide::V || w.side != HandleSide::W {
            return Err(Error::Precondition("dual pair needs a V-disk and a W-disk".into()));
        }
        let i = intersection_number(&v.curve, &w.curve);
        if i != 1 {
            return Err(Error::Precondition(format!("boundaries meet {} times, need 1", i)));
        }
        Ok(DualPair { v, w })
    }

    pub fn key(&self) -> DualPairKey {
        DualPairKey { v: self.v.key().clone(), w: self.w.key().clone() }
    }
}

/// The circle in which the Haken sphere of a dual pair meets the surface.
pub fn haken_circle(pair: &DualPair) -> Result<Curve> {
    neighborhood_boundary(&pair.v.curve, &pair.w.curve)
}

/// All disks of one side at a per-edge budget, sorted by key.
#[derive(Clone, Debug)]
pub struct DiskSet {
    pub side: HandleSide,
    pub max_weight: u32,
    disks: Vec<DiskClass>,
    index: HashMap<CurveKey, usize>,
}

impl DiskSet {
    pub fn from_disks(side: HandleSide, max_weight: u32, mut disks: Vec<DiskClass>) -> DiskSet {
        disks.sort_by(|a, b| a.key().cmp(b.key()));
        disks.dedup_by(|a, b| a.key() == b.key());
        let index = disks.iter().enumerate().map(|(i, d)| (d.key().clone(), i)).collect();
        DiskSet { side, max_weight, disks, index }
    }

    pub fn disks(&self) -> &[DiskClass] {
        &self.disks
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn get(&self, key: &CurveKey) -> Option<&DiskClass> {
        self.index.get(key).map(|&i| &self.disks[i])
    }

    pub fn position(&self, key: &CurveKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// The disks available at a smaller budget.
    pub fn restrict(&self, max_weight: u32) -> DiskSet {
        let disks = self.disks.iter().filter(|d| d.level.is_some_and(|l| l <= max_weight)).cloned().collect();
        DiskSet::from_disks(self.side, max_weight, disks)
    }

    pub fn primitive(&self) -> DiskSet {
        let disks = self.disks.iter().filter(|d| d.is_primitive()).cloned().collect();
        DiskSet::from_disks(self.side, self.max_weight, disks)
    }
}

/// Order on normal representatives: smaller per-edge maximum, then total
/// weight, then weights lexicographically.
fn rep_rank(w: &[u32; EDGE_COUNT]) -> (u32, u32, [u32; EDGE_COUNT]) {
    (*w.iter().max().unwrap(), w.iter().sum(), *w)
}

type Found = BTreeMap<CurveKey, [u32; EDGE_COUNT]>;

fn offer(found: &mut Found, key: CurveKey, w: &[u32; EDGE_COUNT]) {
    match found.get_mut(&key) {
        Some(best) if rep_rank(best) <= rep_rank(w) => {}
        Some(best) => *best = *w,
        None => {
            found.insert(key, *w);
        }
    }
}

/// Disk sets of both handlebodies from one walk over the weight lattice,
/// as `[V, W]`.
pub fn enumerate_both(d: &HeegaardDiagram, max_weight: u32) -> [DiskSet; 2] {
    let sides = [HandleSide::V, HandleSide::W];
    let chunks: Vec<[Found; 2]> = (0..=max_weight)
        .into_par_iter()
        .map(|first| {
            let mut found: [Found; 2] = Default::default();
            let mut word: Vec<Letter> = Vec::new();
            for_each_normal(max_weight, Some(first), &mut |w| {
                let n = NormalCurve::new_unchecked(*w);
                if !n.connected_word_into(&mut word) {
                    return;
                }
                for (k, &side) in sides.iter().enumerate() {
                    if !d.image(side, &word).is_empty() || HomologyClass2::of(&word).is_zero() {
                        continue;
                    }
                    let key = CurveKey::from_cyclic(&word);
                    if !key.is_empty() {
                        offer(&mut found[k], key, w);
                    }
                }
            });
            found
        })
        .collect();
    let mut merged: [Found; 2] = Default::default();
    for chunk in chunks {
        for (k, part) in chunk.into_iter().enumerate() {
            for (key, w) in part {
                offer(&mut merged[k], key, &w);
            }
        }
    }
    let [mv, mw] = merged;
    [disk_set(d, HandleSide::V, max_weight, mv), disk_set(d, HandleSide::W, max_weight, mw)]
}

fn disk_set(d: &HeegaardDiagram, side: HandleSide, max_weight: u32, found: Found) -> DiskSet {
    let disks: Vec<DiskClass> = found
        .into_par_iter()
        .map(|(_, w)| {
            let n = NormalCurve::new_unchecked(w);
            let curve = Curve::from_normal(&n).expect("enumerated curves are connected and essential");
            DiskClass::from_curve(d, side, curve, Some(n.max_weight())).expect("enumerated curves bound disks")
        })
        .collect();
    DiskSet::from_disks(side, max_weight, disks)
}

/// Every disk of `side` with a normal representative of per-edge weight at
/// most `max_weight`. Deterministic regardless of the rayon pool size.
pub fn enumerate_disks(d: &HeegaardDiagram, side: HandleSide, max_weight: u32) -> DiskSet {
    let [v, w] = enumerate_both(d, max_weight);
    match side {
        HandleSide::V => v,
        HandleSide::W => w,
    }
}

pub fn enumerate_primitive_disks(d: &HeegaardDiagram, side: HandleSide, max_weight: u32) -> DiskSet {
    enumerate_disks(d, side, max_weight).primitive()
}

/// Whether two disks on opposite sides are dual.
pub fn is_dual(a: &DiskClass, b: &DiskClass) -> bool {
    if a.side == b.side {
        return false;
    }
    // geometric intersection one forces algebraic intersection ±1
    if algebraic_intersection(a.curve.homology(), b.curve.homology()).abs() != 1 {
        return false;
    }
    intersection_number(&a.curve, &b.curve) == 1
}

/// Whether two distinct disks on the same side are disjoint.
pub fn is_disjoint(a: &DiskClass, b: &DiskClass) -> bool {
    if a.side != b.side || a.key() == b.key() {
        return false;
    }
    if algebraic_intersection(a.curve.homology(), b.curve.homology()) != 0 {
        return false;
    }
    intersection_number(&a.curve, &b.curve) == 0
}

/// Whether `{a, b}` is a primitive pair.
pub fn is_primitive_pair(a: &DiskClass, b: &DiskClass) -> bool {
    a.is_primitive() && b.is_primitive() && is_disjoint(a, b)
}

/// Disks of `pool` dual to `disk`, in key order.
pub fn dual_disks<'a>(disk: &DiskClass, pool: &'a DiskSet) -> Result<Vec<&'a DiskClass>> {
    if pool.side == disk.side {
        return Err(Error::Precondition("dual disks live on the opposite side".into()));
    }
    if !disk.is_primitive() {
        return Err(Error::Precondition(format!("{} is not primitive", disk.key())));
    }
    let out: Vec<&DiskClass> = pool.disks().par_iter().filter(|e| is_dual(disk, e)).collect();
    debug_assert!(out.iter().all(|e| e.is_primitive()));
    Ok(out)
}

/// Common dual disks of a primitive pair, in key order.
pub fn common_duals<'a>(e1: &DiskClass, e2: &DiskClass, pool: &'a DiskSet) -> Result<Vec<&'a DiskClass>> {
    if !is_primitive_pair(e1, e2) {
        return Err(Error::Precondition(format!("{{{}, {}}} is not a primitive pair", e1.key(), e2.key())));
    }
    Ok(dual_disks(e1, pool)?.into_iter().filter(|e| is_dual(e2, e)).collect())
}

/// Surgery of `from_dual` along an outermost arc of `toward_dual`; keeps the
/// results that bound disks and are again dual to `base`.
pub fn dual_surgery_step(
    d: &HeegaardDiagram,
    base: &DiskClass,
    from_dual: &DiskClass,
    toward_dual: &DiskClass,
    known: Option<&DiskSet>,
) -> Result<Vec<DiskClass>> {
    if !is_dual(base, from_dual) || !is_dual(base, toward_dual) {
        return Err(Error::Precondition("both disks must be dual to the base".into()));
    }
    let before = intersection_number(&from_dual.curve, &toward_dual.curve);
    if before < 2 {
        return Err(Error::Precondition(format!("duals meet {} times; surgery needs at least 2", before)));
    }
    let side = from_dual.side;
    let mut out = Vec::new();
    for c in band_surgery_candidates(&from_dual.curve, &toward_dual.curve)? {
        if !d.bounds_disk(side, &c) || c.is_separating() {
            continue;
        }
        let disk = match known.and_then(|k| k.get(c.key())) {
            Some(k) => k.clone(),
            None => DiskClass::from_curve(d, side, c, None)?,
        };
        if is_dual(base, &disk) {
            out.push(disk);
        }
    }
    Ok(out)
}
