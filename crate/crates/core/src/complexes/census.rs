//! Disk sets of both handlebodies at one budget, with the disjointness and
//! duality relations among primitive disks precomputed.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::Result;
use crate::splitting::cache::DiskCache;
use crate::splitting::disks::{enumerate_both, is_disjoint, is_dual, DiskClass, DiskSet};
use crate::splitting::{HandleSide, HeegaardDiagram};

use super::graph::Budget;

#[derive(Clone, Debug)]
pub struct Census {
    pub diagram: HeegaardDiagram,
    pub max_weight: u32,
    /// All disks, per side (`[V, W]`).
    pub all: [DiskSet; 2],
    /// Primitive disks, per side.
    pub primitive: [DiskSet; 2],
    /// For each primitive V-disk, indices of its dual primitive W-disks (sorted).
    duals_of_v: Vec<Vec<usize>>,
    /// For each primitive W-disk, indices of its dual primitive V-disks (sorted).
    duals_of_w: Vec<Vec<usize>>,
    /// Disjoint pairs `(i, j)`, `i < j`, among primitive disks, per side.
    disjoint: [HashSet<(usize, usize)>; 2],
}

fn side_index(side: HandleSide) -> usize {
    match side {
        HandleSide::V => 0,
        HandleSide::W => 1,
    }
}

fn disjoint_pairs(set: &DiskSet) -> HashSet<(usize, usize)> {
    let disks = set.disks();
    (0..disks.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..disks.len()).filter(move |&j| is_disjoint(&disks[i], &disks[j])).map(move |j| (i, j))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

impl Census {
    /// Enumerates both sides at `max_weight`.
    pub fn build(d: &HeegaardDiagram, max_weight: u32) -> Census {
        let [v, w] = enumerate_both(d, max_weight);
        Census::from_sets(d, max_weight, v, w)
    }

    /// Like [`Census::build`], reusing and filling a disk-set cache.
    pub fn build_cached(d: &HeegaardDiagram, max_weight: u32, cache: &DiskCache) -> Result<Census> {
        let [v, w] = cache.load_or_enumerate(d, max_weight)?;
        Ok(Census::from_sets(d, max_weight, v, w))
    }

    pub fn from_sets(d: &HeegaardDiagram, max_weight: u32, v: DiskSet, w: DiskSet) -> Census {
        let pv = v.primitive();
        let pw = w.primitive();
        let duals_of_v: Vec<Vec<usize>> = pv
            .disks()
            .par_iter()
            .map(|a| (0..pw.len()).filter(|&j| is_dual(a, &pw.disks()[j])).collect())
            .collect();
        let mut duals_of_w = vec![Vec::new(); pw.len()];
        for (i, ds) in duals_of_v.iter().enumerate() {
            for &j in ds {
                duals_of_w[j].push(i);
            }
        }
        let disjoint = [disjoint_pairs(&pv), disjoint_pairs(&pw)];
        Census {
            diagram: d.clone(),
            max_weight,
            all: [v, w],
            primitive: [pv, pw],
            duals_of_v,
            duals_of_w,
            disjoint,
        }
    }

    /// The census at a smaller budget, without a new enumeration.
    pub fn restrict(&self, max_weight: u32) -> Census {
        assert!(max_weight <= self.max_weight, "cannot raise a budget by restriction");
        let keep = |set: &DiskSet| -> Vec<Option<usize>> {
            let mut next = 0;
            set.disks()
                .iter()
                .map(|d| {
                    d.level.filter(|&l| l <= max_weight).map(|_| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let (mv, mw) = (keep(&self.primitive[0]), keep(&self.primitive[1]));
        let duals_of_v: Vec<Vec<usize>> = self
            .duals_of_v
            .iter()
            .enumerate()
            .filter(|&(i, _)| mv[i].is_some())
            .map(|(_, ds)| ds.iter().filter_map(|&j| mw[j]).collect())
            .collect();
        let duals_of_w: Vec<Vec<usize>> = self
            .duals_of_w
            .iter()
            .enumerate()
            .filter(|&(j, _)| mw[j].is_some())
            .map(|(_, ds)| ds.iter().filter_map(|&i| mv[i]).collect())
            .collect();
        let remap = |pairs: &HashSet<(usize, usize)>, m: &[Option<usize>]| -> HashSet<(usize, usize)> {
            pairs.iter().filter_map(|&(i, j)| Some((m[i]?, m[j]?))).collect()
        };
        Census {
            diagram: self.diagram.clone(),
            max_weight,
            all: [self.all[0].restrict(max_weight), self.all[1].restrict(max_weight)],
            primitive: [self.primitive[0].restrict(max_weight), self.primitive[1].restrict(max_weight)],
            duals_of_v,
            duals_of_w,
            disjoint: [remap(&self.disjoint[0], &mv), remap(&self.disjoint[1], &mw)],
        }
    }

    /// Level of the explored interior: objects at or below it have their
    /// small cycles and common duals inside the full budget.
    pub fn core_level(&self) -> u32 {
        self.max_weight.saturating_sub(1) / 2
    }

    /// Whether primitive disk `i` of `side` lies in the explored interior.
    pub fn in_core(&self, side: HandleSide, i: usize) -> bool {
        self.primitive_disk(side, i).level.is_some_and(|l| l <= self.core_level())
    }

    pub fn budget(&self) -> Budget {
        Budget::new(self.diagram.p(), self.diagram.q(), self.max_weight)
    }

    pub fn primitive_set(&self, side: HandleSide) -> &DiskSet {
        &self.primitive[side_index(side)]
    }

    pub fn all_set(&self, side: HandleSide) -> &DiskSet {
        &self.all[side_index(side)]
    }

    pub fn primitive_disk(&self, side: HandleSide, i: usize) -> &DiskClass {
        &self.primitive_set(side).disks()[i]
    }

    /// Indices (in the opposite primitive set) of the duals of primitive disk `i`.
    pub fn duals(&self, side: HandleSide, i: usize) -> &[usize] {
        match side {
            HandleSide::V => &self.duals_of_v[i],
            HandleSide::W => &self.duals_of_w[i],
        }
    }

    pub fn disjoint(&self, side: HandleSide, i: usize, j: usize) -> bool {
        self.disjoint[side_index(side)].contains(&(i.min(j), i.max(j)))
    }

    /// Disjoint pairs among primitive disks of one side, sorted.
    pub fn primitive_pairs(&self, side: HandleSide) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.disjoint[side_index(side)].iter().copied().collect();
        v.sort();
        v
    }

    /// Common duals of the primitive pair `(i, j)` on `side`, as sorted indices.
    pub fn common_duals(&self, side: HandleSide, i: usize, j: usize) -> Vec<usize> {
        let (a, b) = (self.duals(side, i), self.duals(side, j));
        a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
    }

    /// Primitive triples (pairwise disjoint) on one side, sorted.
    pub fn primitive_triples(&self, side: HandleSide) -> Vec<[usize; 3]> {
        let n = self.primitive_set(side).len();
        let mut nb: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in &self.disjoint[side_index(side)] {
            nb[i].push(j);
            nb[j].push(i);
        }
        for l in nb.iter_mut() {
            l.sort();
        }
        let mut out = Vec::new();
        for i in 0..n {
            for &j in nb[i].iter().filter(|&&j| j > i) {
                for &k in nb[j].iter().filter(|&&k| k > j) {
                    if nb[i].binary_search(&k).is_ok() {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }
}
