//! The bijection `Phi = Psi . Theta` between attachment vectors and rooted trees
//! on `1..=n-1` that carries the increasing edges of the uniform attachment
//! forest onto the increasing edges of the tree.
//!
//! Vectors are indexed by `l = 2..=n-1`. A [`RestrictedVector`] has entries in
//! `{1..n} \ {l}`, a [`CompressedVector`] has entries in `1..=n-1`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::forest::RootedForest;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error("entry for l = {index} is {value}, outside its allowed range for n = {n}")]
    Range {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("input is not a single rooted tree on 1..={0}")]
    NotATree(usize),
    #[error("cannot parse vector: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RestrictedVector {
    n: usize,
    entries: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompressedVector {
    n: usize,
    entries: Vec<usize>,
}

fn check_length(n: usize, entries: &[usize]) -> Result<(), BijectionError> {
    let expected = n.saturating_sub(2);
    if n < 2 || entries.len() != expected {
        return Err(BijectionError::Length {
            expected,
            got: entries.len(),
        });
    }
    Ok(())
}

impl RestrictedVector {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self, BijectionError> {
        check_length(n, &entries)?;
        for (i, &value) in entries.iter().enumerate() {
            let index = i + 2;
            if value == 0 || value > n || value == index {
                return Err(BijectionError::Range { index, value, n });
            }
        }
        Ok(Self { n, entries })
    }

    /// Reads `u(2..=n-1)` off a full attachment vector `u(1..=n)`.
    pub fn from_attachment(u: &[usize]) -> Result<Self, BijectionError> {
        let n = u.len();
        if n < 2 {
            return Err(BijectionError::Length {
                expected: 2,
                got: n,
            });
        }
        Self::new(n, u[1..n - 1].to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, l: usize) -> usize {
        self.entries[l - 2]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Every vector of the set, in lexicographic order. There are `(n-1)^(n-2)`.
    pub fn all(n: usize) -> impl Iterator<Item = RestrictedVector> {
        assert!(n >= 2);
        let len = n - 2;
        let base = n - 1;
        let total = (base as u64).pow(len as u32);
        (0..total).map(move |mut code| {
            let mut entries = vec![0; len];
            for i in (0..len).rev() {
                let digit = (code % base as u64) as usize + 1;
                code /= base as u64;
                // skip the forbidden value l = i + 2
                entries[i] = if digit >= i + 2 { digit + 1 } else { digit };
            }
            RestrictedVector { n, entries }
        })
    }

    /// Edges `(u_l, l)` with `u_l < l`.
    pub fn increasing_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = (2..self.n)
            .filter(|&l| self.get(l) < l)
            .map(|l| (self.get(l), l))
            .collect();
        pairs.sort_unstable();
        pairs
    }
}

impl CompressedVector {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self, BijectionError> {
        check_length(n, &entries)?;
        for (i, &value) in entries.iter().enumerate() {
            if value == 0 || value >= n {
                return Err(BijectionError::Range {
                    index: i + 2,
                    value,
                    n,
                });
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, l: usize) -> usize {
        self.entries[l - 2]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn all(n: usize) -> impl Iterator<Item = CompressedVector> {
        assert!(n >= 2);
        let len = n - 2;
        let base = n - 1;
        let total = (base as u64).pow(len as u32);
        (0..total).map(move |mut code| {
            let mut entries = vec![0; len];
            for slot in entries.iter_mut().rev() {
                *slot = (code % base as u64) as usize + 1;
                code /= base as u64;
            }
            CompressedVector { n, entries }
        })
    }

    /// Parent map of the functional digraph `c_l -> l` on `1..=n-1`, `0` for vertex 1.
    fn parent_map(&self) -> Vec<usize> {
        let mut p = vec![0; self.n];
        for (l, slot) in p.iter_mut().enumerate().skip(2) {
            *slot = self.get(l);
        }
        p
    }
}

fn fmt_entries(entries: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parts: Vec<String> = entries.iter().map(|x| x.to_string()).collect();
    write!(f, "({})", parts.join(","))
}

impl fmt::Display for RestrictedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_entries(&self.entries, f)
    }
}

impl fmt::Display for CompressedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_entries(&self.entries, f)
    }
}

/// Parses `n:u2,u3,...` (parentheses and spaces around the list are ignored).
impl FromStr for RestrictedVector {
    type Err = BijectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, list) = s
            .split_once(':')
            .ok_or_else(|| BijectionError::Parse(format!("missing `n:` prefix in {s:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| BijectionError::Parse(format!("bad n in {s:?}")))?;
        let list = list.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = if list.trim().is_empty() {
            Vec::new()
        } else {
            list.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| BijectionError::Parse(format!("bad entry {t:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        Self::new(n, entries)
    }
}

pub fn theta(u: &RestrictedVector) -> CompressedVector {
    let entries = u
        .entries
        .iter()
        .enumerate()
        .map(|(i, &x)| if x > i + 2 { x - 1 } else { x })
        .collect();
    CompressedVector { n: u.n, entries }
}

pub fn theta_inv(c: &CompressedVector) -> RestrictedVector {
    let entries = c
        .entries
        .iter()
        .enumerate()
        .map(|(i, &x)| if x >= i + 2 { x + 1 } else { x })
        .collect();
    RestrictedVector { n: c.n, entries }
}

/// Cycles of the functional digraph of `c`, ordered by their largest element.
/// Each cycle is listed starting from its maximum and following the edges.
pub fn cycles(c: &CompressedVector) -> Vec<Vec<usize>> {
    let m = c.n - 1;
    let p = c.parent_map();
    let mut stamp = vec![0usize; m + 1];
    let mut found = Vec::new();
    for start in 1..=m {
        if stamp[start] != 0 {
            continue;
        }
        let mut x = start;
        while x != 0 && stamp[x] == 0 {
            stamp[x] = start;
            x = p[x];
        }
        if x != 0 && stamp[x] == start {
            // walking parents visits the cycle against its edges
            let mut back = vec![x];
            let mut y = p[x];
            while y != x {
                back.push(y);
                y = p[y];
            }
            let top = back.iter().enumerate().max_by_key(|&(_, &v)| v).unwrap().0;
            back.rotate_left(top);
            back[1..].reverse();
            found.push(back);
        }
    }
    found.sort_by_key(|cycle| cycle[0]);
    found
}

pub fn psi(c: &CompressedVector) -> RootedForest {
    let mut p = c.parent_map();
    let mut prev = 1;
    for cycle in cycles(c) {
        let top = cycle[0];
        let succ = *cycle.get(1).unwrap_or(&top);
        p[prev] = top;
        prev = succ;
    }
    p[prev] = 0;
    RootedForest::from_parents_unchecked(p[1..].to_vec())
}

/// Vertices on the path from vertex 1 up to the root, both included.
pub fn path_to_root(tree: &RootedForest) -> Vec<usize> {
    let mut path = vec![1];
    let mut x = 1;
    while let Some(p) = tree.parent(x) {
        path.push(p);
        x = p;
    }
    path
}

/// Segments of the path from 1 to the root cut at left-to-right maxima (1 excluded).
fn segments(path: &[usize]) -> Vec<Vec<usize>> {
    let mut segs: Vec<Vec<usize>> = Vec::new();
    let mut best = 1;
    for &x in &path[1..] {
        if x > best {
            best = x;
            segs.push(vec![x]);
        } else {
            segs.last_mut().expect("path starts at a maximum").push(x);
        }
    }
    segs
}

/// `1` followed by the cycles, each from its maximum in edge order.
pub fn path_word(tree: &RootedForest) -> Vec<usize> {
    let mut word = vec![1];
    for seg in segments(&path_to_root(tree)) {
        word.push(seg[0]);
        word.extend(seg[1..].iter().rev());
    }
    word
}

pub fn psi_inv(tree: &RootedForest) -> Result<CompressedVector, BijectionError> {
    let m = tree.n();
    if !tree.is_tree() {
        return Err(BijectionError::NotATree(m));
    }
    let mut p = tree.parents().to_vec();
    p.insert(0, 0);
    for seg in segments(&path_to_root(tree)) {
        let top = seg[0];
        let last = *seg.last().unwrap();
        p[last] = top;
    }
    Ok(CompressedVector {
        n: m + 1,
        entries: p[2..].to_vec(),
    })
}

pub fn phi(u: &RestrictedVector) -> RootedForest {
    psi(&theta(u))
}

pub fn phi_inv(tree: &RootedForest) -> Result<RestrictedVector, BijectionError> {
    psi_inv(tree).map(|c| theta_inv(&c))
}
