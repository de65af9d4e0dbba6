//! Seed diagrams of the standard genus-2 splitting of L(p, q).
//!
//! `V` is the handlebody in which the curves `b` and `d` bound disks, so
//! `π1(V) = ⟨x, y⟩` with `a ↦ x`, `c ↦ y`. `W` is the handlebody in which the
//! `(p, q)` curve `a^p b^q` of the first handle and the curve `c` bound disks;
//! `π1(W) = ⟨x, y⟩` with `a ↦ x^q`, `b ↦ x^-p`, `d ↦ y`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::normal::NormalCurve;
use crate::surface::triangulation::MODEL_VERSION;
use crate::surface::word::{algebraic_intersection, format_letters, Letter};
use crate::surface::{intersection_number, Curve};
use crate::words::{canonical_cyclic, reduce, FLetter, FreeWord};

use super::snf::smith_diagonal;

/// Length cap for boundary words of disks read in either handlebody.
pub const DISK_WORD_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HandleSide {
    V,
    W,
}

impl HandleSide {
    pub fn other(self) -> HandleSide {
        match self {
            HandleSide::V => HandleSide::W,
            HandleSide::W => HandleSide::V,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HandleSide::V => "V",
            HandleSide::W => "W",
        }
    }
}

impl fmt::Display for HandleSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const SEED_NAMES: [&str; 4] = ["alpha1", "alpha2", "beta1", "beta2"];

#[derive(Clone, Debug)]
pub struct HeegaardDiagram {
    p: u32,
    q: u32,
    /// alpha1, alpha2, beta1, beta2
    seeds: [Curve; 4],
    images: [[Vec<FLetter>; 8]; 2],
}

pub fn validate_lens(p: i64, q: i64) -> Result<()> {
    let err = |reason: &str| Err(Error::InvalidLens { p, q, reason: reason.into() });
    if p < 2 {
        return err("p must be at least 2");
    }
    if q < 1 || 2 * q > p {
        return err("q must satisfy 1 <= q <= p/2");
    }
    let (mut a, mut b) = (p, q);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a != 1 {
        return err("p and q must be coprime");
    }
    Ok(())
}

/// Seed weights; the `(p, q)` curve runs `p` times along `a1` and `q` times along `b1`.
pub fn seed_weights(p: u32, q: u32) -> [[u32; 9]; 4] {
    [
        [0, 1, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 1],
        [p, q, 0, 0, p - q, q, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 1, 1],
    ]
}

fn letter_images(p: u32, q: u32) -> [[Vec<FLetter>; 8]; 2] {
    let inv = |w: &Vec<FLetter>| w.iter().rev().map(|&l| l ^ 1).collect::<Vec<_>>();
    let v: [Vec<FLetter>; 4] = [vec![0], vec![], vec![2], vec![]];
    let w: [Vec<FLetter>; 4] = [vec![0; q as usize], vec![1; p as usize], vec![], vec![2]];
    let expand = |g: [Vec<FLetter>; 4]| -> [Vec<FLetter>; 8] {
        std::array::from_fn(|l| if l % 2 == 0 { g[l / 2].clone() } else { inv(&g[l / 2]) })
    };
    [expand(v), expand(w)]
}

impl HeegaardDiagram {
    fn from_weights(p: u32, q: u32, weights: [[u32; 9]; 4]) -> Result<HeegaardDiagram> {
        let mut seeds = Vec::with_capacity(4);
        for w in weights {
            seeds.push(Curve::from_normal(&NormalCurve::new(w)?)?);
        }
        Ok(HeegaardDiagram { p, q, seeds: seeds.try_into().unwrap(), images: letter_images(p, q) })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn alpha1(&self) -> &Curve {
        &self.seeds[0]
    }

    pub fn alpha2(&self) -> &Curve {
        &self.seeds[1]
    }

    pub fn beta1(&self) -> &Curve {
        &self.seeds[2]
    }

    pub fn beta2(&self) -> &Curve {
        &self.seeds[3]
    }

    pub fn seeds(&self) -> &[Curve; 4] {
        &self.seeds
    }

    /// Image of a surface word in the fundamental group of a handlebody, freely reduced.
    pub fn image(&self, side: HandleSide, w: &[Letter]) -> FreeWord {
        let table = &self.images[side as usize];
        let mut out = Vec::new();
        for &l in w {
            out.extend_from_slice(&table[l as usize]);
        }
        reduce(&out)
    }

    /// Canonical cyclic word of a curve in `π1(side)`.
    pub fn word_in(&self, side: HandleSide, c: &Curve) -> Result<FreeWord> {
        let w = self.image(side, c.word());
        if w.len() > DISK_WORD_CAP {
            return Err(Error::WordOverflow { cap: DISK_WORD_CAP });
        }
        // reading conventions agree up to global inversion, so report the class unoriented
        let w = canonical_cyclic(&w);
        Ok(w.clone().min(canonical_cyclic(&w.inverse())))
    }

    #[allow(non_snake_case)]
    pub fn word_in_V(&self, c: &Curve) -> Result<FreeWord> {
        self.word_in(HandleSide::V, c)
    }

    #[allow(non_snake_case)]
    pub fn word_in_W(&self, c: &Curve) -> Result<FreeWord> {
        self.word_in(HandleSide::W, c)
    }

    /// A curve bounds a disk iff it is null-homotopic in the handlebody.
    pub fn bounds_disk(&self, side: HandleSide, c: &Curve) -> bool {
        self.image(side, c.word()).is_empty()
    }

    pub fn meridians(&self, side: HandleSide) -> [&Curve; 2] {
        match side {
            HandleSide::V => [self.alpha1(), self.alpha2()],
            HandleSide::W => [self.beta1(), self.beta2()],
        }
    }

    /// The six intersection numbers `(α1,α2), (β1,β2), (α2,β2), (α1,β2), (α2,β1), (α1,β1)`.
    pub fn seed_intersections(&self) -> [u32; 6] {
        let [a1, a2, b1, b2] = &self.seeds;
        [
            intersection_number(a1, a2),
            intersection_number(b1, b2),
            intersection_number(a2, b2),
            intersection_number(a1, b2),
            intersection_number(a2, b1),
            intersection_number(a1, b1),
        ]
    }

    /// Presentation matrix of `H1` of the glued manifold: algebraic
    /// intersections of the β curves with the α curves.
    pub fn homology_matrix(&self) -> Vec<Vec<i64>> {
        self.meridians(HandleSide::W)
            .iter()
            .map(|b| {
                self.meridians(HandleSide::V)
                    .iter()
                    .map(|a| algebraic_intersection(a.homology(), b.homology()) as i64)
                    .collect()
            })
            .collect()
    }

    /// Torsion coefficients of `H1` (Smith diagonal of the presentation matrix).
    pub fn homology_invariants(&self) -> Vec<i64> {
        smith_diagonal(&self.homology_matrix())
    }

    /// Checks every diagram invariant; returns a description of the first failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let expect = [0, 0, 1, 0, 0, self.p];
        let got = self.seed_intersections();
        if got != expect {
            return Err(format!("seed intersection numbers {:?}, expected {:?}", got, expect));
        }
        let snf = self.homology_invariants();
        if snf != vec![1, self.p as i64] {
            return Err(format!("Smith form {:?}, expected [1, {}]", snf, self.p));
        }
        for (name, c) in SEED_NAMES.iter().zip(&self.seeds) {
            if c.is_separating() {
                return Err(format!("{} is separating", name));
            }
        }
        for (side, ms) in [(HandleSide::V, [0, 1]), (HandleSide::W, [2, 3])] {
            for m in ms {
                if !self.bounds_disk(side, &self.seeds[m]) {
                    return Err(format!("{} does not bound a disk in {}", SEED_NAMES[m], side));
                }
            }
        }
        Ok(())
    }

    pub fn to_preset(&self) -> Preset {
        let curves = SEED_NAMES
            .iter()
            .zip(&self.seeds)
            .map(|(name, c)| PresetCurve {
                name: name.to_string(),
                weights: *c.normal().expect("seeds carry normal coordinates").weights(),
                surface_word: format_letters(c.word()),
                signs_v: self.image(HandleSide::V, c.word()).to_string(),
                signs_w: self.image(HandleSide::W, c.word()).to_string(),
            })
            .collect();
        Preset { p: self.p, q: self.q, model_version: MODEL_VERSION.to_string(), curves }
    }

    /// Loads a preset, re-deriving the words and checking them against the stored sign tables.
    pub fn from_preset(preset: &Preset) -> Result<HeegaardDiagram> {
        validate_lens(preset.p as i64, preset.q as i64)?;
        if preset.model_version != MODEL_VERSION {
            return Err(Error::CacheMismatch(format!(
                "preset model version {:?}, expected {:?}",
                preset.model_version, MODEL_VERSION
            )));
        }
        if preset.curves.len() != 4 {
            return Err(Error::Parse(format!("preset has {} curves, expected 4", preset.curves.len())));
        }
        let mut weights = [[0u32; 9]; 4];
        for (k, name) in SEED_NAMES.iter().enumerate() {
            let c = preset
                .curves
                .iter()
                .find(|c| c.name == *name)
                .ok_or_else(|| Error::Parse(format!("preset lacks curve {}", name)))?;
            weights[k] = c.weights;
        }
        let d = HeegaardDiagram::from_weights(preset.p, preset.q, weights)?;
        let fresh = d.to_preset();
        for c in &preset.curves {
            let f = fresh.curves.iter().find(|f| f.name == c.name).unwrap();
            if f != c {
                return Err(Error::Parse(format!("sign table of {} does not match its weights", c.name)));
            }
        }
        d.check().map_err(|e| Error::Precondition(format!("preset L({},{}) fails: {}", preset.p, preset.q, e)))?;
        Ok(d)
    }
}

/// On-disk form of a seed diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preset {
    pub p: u32,
    pub q: u32,
    pub model_version: String,
    pub curves: Vec<PresetCurve>,
}

/// A seed curve with its crossing data: the boundary-edge word on the
/// surface and the signed crossing sequences read in `V` and `W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetCurve {
    pub name: String,
    pub weights: [u32; 9],
    pub surface_word: String,
    pub signs_v: String,
    pub signs_w: String,
}

macro_rules! presets {
    ($(($p:literal, $q:literal)),*) => {
        /// Shipped presets, as `(p, q, file contents)`.
        pub const PRESETS: &[(u32, u32, &str)] = &[
            $(($p, $q, include_str!(concat!("../../presets/L", $p, "_", $q, ".json")))),*
        ];
    };
}

presets!((2, 1), (3, 1), (4, 1), (5, 1), (5, 2), (6, 1), (7, 1), (7, 2), (7, 3), (8, 1), (8, 3));

/// The seed diagram of L(p, q); shipped presets are used when available.
pub fn build_diagram(p: i64, q: i64) -> Result<HeegaardDiagram> {
    validate_lens(p, q)?;
    let (p, q) = (p as u32, q as u32);
    if let Some((_, _, text)) = PRESETS.iter().find(|(pp, qq, _)| *pp == p && *qq == q) {
        let preset: Preset = serde_json::from_str(text)?;
        return HeegaardDiagram::from_preset(&preset);
    }
    generate_diagram(p, q)
}

/// Builds the diagram from the closed-form seed weights, without presets.
pub fn generate_diagram(p: u32, q: u32) -> Result<HeegaardDiagram> {
    validate_lens(p as i64, q as i64)?;
    let d = HeegaardDiagram::from_weights(p, q, seed_weights(p, q))?;
    d.check().map_err(|e| Error::Precondition(format!("generated L({},{}) fails: {}", p, q, e)))?;
    Ok(d)
}
