//! Words in the free group of rank two on `x`, `y`.
//!
//! Letters are encoded as `0 = x`, `1 = X`, `2 = y`, `3 = Y` (capital letters
//! are inverses), so `l ^ 1` is the inverse of `l`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type FLetter = u8;

/// Default length cap for words built through [`FreeWord::new`].
pub const DEFAULT_WORD_CAP: usize = 64;

const CHARS: [char; 4] = ['x', 'X', 'y', 'Y'];

#[inline]
pub fn finv(l: FLetter) -> FLetter {
    l ^ 1
}

/// Freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<FLetter>);

/// Exponent sums of `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianImage {
    pub a: i64,
    pub b: i64,
}

impl AbelianImage {
    /// Whether the pair extends to a basis of Z².
    pub fn is_primitive_vector(&self) -> bool {
        gcd(self.a.unsigned_abs(), self.b.unsigned_abs()) == 1
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn push_reduced(out: &mut Vec<FLetter>, l: FLetter) {
    if out.last() == Some(&finv(l)) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl FreeWord {
    /// Reduces `letters` and enforces the default cap.
    pub fn new(letters: &[FLetter]) -> Result<FreeWord> {
        FreeWord::with_cap(letters, DEFAULT_WORD_CAP)
    }

    /// Reduces `letters`; fails if the reduced word is longer than `cap`.
    pub fn with_cap(letters: &[FLetter], cap: usize) -> Result<FreeWord> {
        let w = reduce(letters);
        if w.len() > cap {
            return Err(Error::WordOverflow { cap });
        }
        Ok(w)
    }

    pub fn empty() -> FreeWord {
        FreeWord(Vec::new())
    }

    pub fn generator(i: usize) -> FreeWord {
        FreeWord(vec![(2 * i) as FLetter])
    }

    pub fn letters(&self) -> &[FLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&l| finv(l)).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        FreeWord(out)
    }

    pub fn abelianization(&self) -> AbelianImage {
        abelianization(&self.0)
    }

    pub fn parse(s: &str) -> Result<FreeWord> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match CHARS.iter().position(|&c| c == ch) {
                Some(i) => letters.push(i as FLetter),
                None => return Err(Error::Parse(format!("unexpected letter {:?} in word {:?}", ch, s))),
            }
        }
        FreeWord::new(&letters)
    }
}

pub fn reduce(letters: &[FLetter]) -> FreeWord {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        push_reduced(&mut out, l);
    }
    FreeWord(out)
}

pub fn cyclic_reduce(w: &FreeWord) -> FreeWord {
    let s = &w.0;
    let mut i = 0;
    let mut j = s.len();
    while j >= i + 2 && s[i] == finv(s[j - 1]) {
        i += 1;
        j -= 1;
    }
    FreeWord(s[i..j].to_vec())
}

pub fn is_trivial(w: &FreeWord) -> bool {
    w.is_empty()
}

pub fn abelianization(letters: &[FLetter]) -> AbelianImage {
    let mut a = AbelianImage { a: 0, b: 0 };
    for &l in letters {
        let s = if l & 1 == 0 { 1 } else { -1 };
        if l < 2 {
            a.a += s;
        } else {
            a.b += s;
        }
    }
    a
}

/// Least rotation of a cyclically reduced word: the canonical cyclic form.
pub fn least_rotation(w: &FreeWord) -> FreeWord {
    let s = &w.0;
    let best = (0..s.len().max(1))
        .min_by(|&i, &j| s[i..].iter().chain(&s[..i]).cmp(s[j..].iter().chain(&s[..j])))
        .unwrap_or(0);
    let mut r = s[best..].to_vec();
    r.extend_from_slice(&s[..best]);
    FreeWord(r)
}

/// Canonical cyclic form of a word.
pub fn canonical_cyclic(w: &FreeWord) -> FreeWord {
    least_rotation(&cyclic_reduce(w))
}

/// The twelve non-trivial Whitehead automorphisms of the second kind, as
/// images of `x` and `y`, in a fixed order.
pub fn whitehead_automorphisms() -> &'static [[Vec<FLetter>; 2]; 12] {
    use std::sync::OnceLock;
    static AUTS: OnceLock<[[Vec<FLetter>; 2]; 12]> = OnceLock::new();
    AUTS.get_or_init(|| {
        let mut v: Vec<[Vec<FLetter>; 2]> = Vec::new();
        for m in 0..4u8 {
            // multiplier m; the other generator z is transformed
            let z = if m < 2 { 2u8 } else { 0u8 };
            let images = [vec![z, m], vec![finv(m), z], vec![finv(m), z, m]];
            for img in images {
                let mut pair = [vec![0u8], vec![2u8]];
                pair[(z / 2) as usize] = img;
                v.push(pair);
            }
        }
        v.try_into().unwrap()
    })
}

/// Applies an endomorphism given by images of the generators.
pub fn apply(images: &[Vec<FLetter>; 2], w: &FreeWord) -> FreeWord {
    let mut out = Vec::new();
    for &l in &w.0 {
        let img = &images[(l / 2) as usize];
        if l & 1 == 0 {
            for &m in img {
                push_reduced(&mut out, m);
            }
        } else {
            for &m in img.iter().rev() {
                push_reduced(&mut out, finv(m));
            }
        }
    }
    FreeWord(out)
}

/// Whitehead descent on the cyclic word; returns the terminal canonical word.
pub fn whitehead_minimize(w: &FreeWord) -> FreeWord {
    let mut cur = canonical_cyclic(w);
    loop {
        let best = whitehead_automorphisms()
            .iter()
            .map(|a| canonical_cyclic(&apply(a, &cur)))
            .filter(|c| c.len() < cur.len())
            .min_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        match best {
            Some(next) => cur = next,
            None => return cur,
        }
    }
}

/// Whether `w` is part of a free basis.
pub fn is_primitive(w: &FreeWord) -> bool {
    if !w.abelianization().is_primitive_vector() {
        return false;
    }
    whitehead_minimize(w).len() == 1
}

/// The Christoffel word with exponent sums `(a, b)`; signs are carried by
/// inverting the corresponding generator.
pub fn primitive_canonical_form(a: i64, b: i64) -> Result<FreeWord> {
    let (ua, ub) = (a.unsigned_abs(), b.unsigned_abs());
    if gcd(ua, ub) != 1 {
        return Err(Error::Precondition(format!("({}, {}) is not a primitive vector", a, b)));
    }
    let n = ua + ub;
    let xl: FLetter = if a >= 0 { 0 } else { 1 };
    let yl: FLetter = if b >= 0 { 2 } else { 3 };
    let letters: Vec<FLetter> = (1..=n)
        .map(|i| if (i * ub) / n == ((i - 1) * ub) / n { xl } else { yl })
        .collect();
    Ok(FreeWord(letters))
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{}", CHARS[l as usize])?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({})", self)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let i = CHARS.iter().position(|&c| c == ch).ok_or_else(|| serde::de::Error::custom(format!("bad letter {:?}", ch)))?;
            letters.push(i as FLetter);
        }
        Ok(reduce(&letters))
    }
}
