//! Isotopy classes of simple closed curves on the closed surface together with
//! a concrete realization used to build arrangements.

use std::fmt;
use std::sync::Arc;

use super::normal::{letter_edge, NormalCurve};
use super::triangulation::{octagon_side, SIDE_EDGE_COUNT};
use super::word::{homology, CurveKey, Homology, HomologyClass2, Letter};
use crate::error::{Error, Result};

/// One passage of a curve through a boundary edge of the octagon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Passage {
    pub letter: Letter,
    /// Position along the edge direction, strictly inside (0, 1).
    pub frac: f64,
}

/// A point on the octagon boundary, ordered counterclockwise. The tag breaks
/// ties between curves that happen to use the same edge fraction.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct BoundaryPoint(pub f64, pub i32);

impl Passage {
    fn point(&self, exit: bool, tag: i32) -> BoundaryPoint {
        let (edge, fwd_to_rev) = letter_edge(self.letter);
        // leaving through the forward side when crossing forward-to-reversed
        let forward_side = fwd_to_rev == exit;
        let side = octagon_side(edge, forward_side);
        if forward_side {
            BoundaryPoint(side as f64 + self.frac, tag)
        } else {
            BoundaryPoint(side as f64 + 1.0 - self.frac, -tag)
        }
    }

    pub fn exit_point(&self, tag: i32) -> BoundaryPoint {
        self.point(true, tag)
    }

    pub fn entry_point(&self, tag: i32) -> BoundaryPoint {
        self.point(false, tag)
    }
}

#[derive(Clone, Debug)]
struct CurveData {
    key: CurveKey,
    /// The word read off `passages`; a cyclic representative of `key`.
    word: Vec<Letter>,
    passages: Vec<Passage>,
    embedded: bool,
    normal: Option<NormalCurve>,
    homology: Homology,
}

/// An essential closed curve. Equality and ordering are by isotopy key only.
#[derive(Clone)]
pub struct Curve(Arc<CurveData>);

impl Curve {
    /// Realizes a connected essential normal curve; the realization is embedded.
    pub fn from_normal(normal: &NormalCurve) -> Result<Curve> {
        let crossings = normal.side_crossings()?;
        let word: Vec<Letter> = crossings
            .iter()
            .map(|c| super::normal::crossing_letter(c.edge, c.forward_to_reversed))
            .collect();
        let key = CurveKey::from_cyclic(&word);
        if key.is_empty() {
            return Err(Error::Inessential);
        }
        let passages = crossings
            .iter()
            .zip(&word)
            .map(|(c, &letter)| Passage {
                letter,
                frac: (c.index + 1) as f64 / (normal.weights()[c.edge] + 1) as f64,
            })
            .collect();
        Ok(Curve(Arc::new(CurveData {
            homology: homology(&word),
            key,
            word,
            passages,
            embedded: true,
            normal: Some(normal.clone()),
        })))
    }

    /// Realizes the class of a cyclic word; the realization need not be embedded.
    pub fn from_word(w: &[Letter]) -> Result<Curve> {
        let key = CurveKey::from_cyclic(w);
        if key.is_empty() {
            return Err(Error::Inessential);
        }
        let word = key.letters().to_vec();
        Ok(Curve(Arc::new(CurveData {
            homology: homology(&word),
            passages: spread_passages(&word),
            key,
            word,
            embedded: false,
            normal: None,
        })))
    }

    pub fn key(&self) -> &CurveKey {
        &self.0.key
    }

    pub fn word(&self) -> &[Letter] {
        &self.0.word
    }

    pub fn passages(&self) -> &[Passage] {
        &self.0.passages
    }

    pub fn is_embedded(&self) -> bool {
        self.0.embedded
    }

    pub fn normal(&self) -> Option<&NormalCurve> {
        self.0.normal.as_ref()
    }

    pub fn homology(&self) -> &Homology {
        &self.0.homology
    }

    pub fn homology_class_mod2(&self) -> HomologyClass2 {
        HomologyClass2::of(&self.0.word)
    }

    /// A simple closed curve separates iff it is null-homologous.
    pub fn is_separating(&self) -> bool {
        self.homology_class_mod2().is_zero()
    }

    /// Same curve with a different (e.g. minimal) normal representative attached.
    pub fn with_normal(&self, normal: &NormalCurve) -> Result<Curve> {
        let c = Curve::from_normal(normal)?;
        if c.key() != self.key() {
            return Err(Error::Precondition("normal representative has a different isotopy class".into()));
        }
        Ok(c)
    }
}

fn spread_passages(word: &[Letter]) -> Vec<Passage> {
    let mut totals = [0u32; SIDE_EDGE_COUNT];
    for &l in word {
        totals[letter_edge(l).0] += 1;
    }
    let mut seen = [0u32; SIDE_EDGE_COUNT];
    word.iter()
        .map(|&l| {
            let e = letter_edge(l).0;
            seen[e] += 1;
            Passage { letter: l, frac: seen[e] as f64 / (totals[e] + 1) as f64 }
        })
        .collect()
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Curve {}

impl PartialOrd for Curve {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Curve {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(other.key())
    }
}

impl std::hash::Hash for Curve {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normal() {
            Some(n) => write!(f, "Curve({} {:?})", self.key(), n.weights()),
            None => write!(f, "Curve({})", self.key()),
        }
    }
}
