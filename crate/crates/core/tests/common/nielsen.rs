//! Independent primitivity oracle: the orbit of the basis element `x` under
//! chains of elementary automorphisms, explored breadth-first over cyclic
//! words with a length cap. By Whitehead's theorem a primitive cyclic word of
//! length n is reached through words of length at most n, so a cap of at
//! least n makes the orbit exhaustive up to length n.

use std::collections::{HashSet, VecDeque};

/// Letters: 1 = x, -1 = X, 2 = y, -2 = Y.
pub type Word = Vec<i8>;

fn free_reduce(w: &[i8]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[i8]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

/// Least rotation of the word or of its inverse.
pub fn canonical(w: &[i8]) -> Word {
    let w = cyclic_reduce(w);
    let inv: Word = w.iter().rev().map(|&l| -l).collect();
    let mut best = w.clone();
    for base in [&w, &inv] {
        for r in 0..base.len() {
            let rot: Word = base[r..].iter().chain(&base[..r]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Images of x and y under each elementary automorphism: right and left
/// multiplication of one generator by the other (or its inverse), inverting
/// a generator, and swapping them.
fn automorphisms() -> Vec<[Word; 2]> {
    let mut out = Vec::new();
    for (g, h) in [(1i8, 2i8), (2, 1)] {
        for e in [h, -h] {
            let mut right = [vec![1], vec![2]];
            right[(g - 1) as usize] = vec![g, e];
            out.push(right);
            let mut left = [vec![1], vec![2]];
            left[(g - 1) as usize] = vec![e, g];
            out.push(left);
        }
    }
    out.push([vec![-1], vec![2]]);
    out.push([vec![1], vec![-2]]);
    out.push([vec![2], vec![1]]);
    out
}

fn apply(phi: &[Word; 2], w: &[i8]) -> Word {
    let mut out = Vec::new();
    for &l in w {
        let img = &phi[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(img.iter().rev().map(|&m| -m));
        }
    }
    out
}

/// All primitive cyclic words (canonical forms) of length at most `cap`.
pub fn primitive_orbit(cap: usize) -> HashSet<Word> {
    let autos = automorphisms();
    let start = canonical(&[1]);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for phi in &autos {
            let v = canonical(&apply(phi, &w));
            if v.len() <= cap && seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Every cyclically reduced word of length `1..=n`, one per canonical class.
pub fn cyclic_words(n: usize) -> Vec<Word> {
    let mut classes = HashSet::new();
    let mut frontier: Vec<Word> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for l in [1i8, -1, 2, -2] {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                if v.len() == 1 || v[0] != -l {
                    classes.insert(canonical(&v));
                }
                next.push(v);
            }
        }
        frontier = next;
    }
    let mut out: Vec<Word> = classes.into_iter().filter(|w| !w.is_empty()).collect();
    out.sort();
    out
}

pub fn to_string(w: &[i8]) -> String {
    w.iter()
        .map(|&l| match l {
            1 => 'x',
            -1 => 'X',
            2 => 'y',
            _ => 'Y',
        })
        .collect()
}
