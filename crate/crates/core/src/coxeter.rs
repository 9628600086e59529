//! Finite Coxeter groups of small rank.
//!
//! Elements are identified with their ShortLex-minimal reduced words. Normal
//! forms are computed with Tits' solution of the word problem: two reduced
//! words represent the same element iff they are connected by braid moves,
//! and a word is non-reduced iff some braid-equivalent word contains a
//! repeated letter `ss`. After enumeration every product is a table lookup.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("unsupported Coxeter type label {0:?} (expected A1..A4, B2, C2, G2 or I2(m))")]
    UnsupportedType(String),
    #[error("generator permutation {0:?} does not preserve the Coxeter matrix")]
    BadGamma(Vec<usize>),
}

/// The supported Cartan–Killing / dihedral families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(usize),
    B2,
    C2,
    G2,
    I2(u32),
}

impl CoxeterType {
    pub fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) => n,
            _ => 2,
        }
    }

    /// Order of the product of the two generators for rank-2 types.
    pub fn dihedral_order(self) -> Option<u32> {
        match self {
            CoxeterType::A(1) => None,
            CoxeterType::A(2) => Some(3),
            CoxeterType::B2 | CoxeterType::C2 => Some(4),
            CoxeterType::G2 => Some(6),
            CoxeterType::I2(m) => Some(m),
            CoxeterType::A(_) => None,
        }
    }

    /// The classical group order.
    pub fn order(self) -> usize {
        match self {
            CoxeterType::A(n) => (1..=n + 1).product(),
            CoxeterType::B2 | CoxeterType::C2 => 8,
            CoxeterType::G2 => 12,
            CoxeterType::I2(m) => 2 * m as usize,
        }
    }

    fn matrix(self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        match self {
            CoxeterType::A(_) => {
                for i in 0..n.saturating_sub(1) {
                    m[i][i + 1] = 3;
                    m[i + 1][i] = 3;
                }
            }
            _ => {
                let k = self.dihedral_order().expect("rank 2");
                m[0][1] = k;
                m[1][0] = k;
            }
        }
        m
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B2 => write!(f, "B2"),
            CoxeterType::C2 => write!(f, "C2"),
            CoxeterType::G2 => write!(f, "G2"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || CoxeterError::UnsupportedType(s.to_string());
        match t {
            "A1" => Ok(CoxeterType::A(1)),
            "A2" => Ok(CoxeterType::A(2)),
            "A3" => Ok(CoxeterType::A(3)),
            "A4" => Ok(CoxeterType::A(4)),
            "B2" => Ok(CoxeterType::B2),
            "C2" => Ok(CoxeterType::C2),
            "G2" => Ok(CoxeterType::G2),
            _ => {
                let inner = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let m: u32 = inner.trim().parse().map_err(|_| bad())?;
                if (2..=64).contains(&m) {
                    Ok(CoxeterType::I2(m))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// A group element, referenced by its position in the ShortLex enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub usize);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A finite Coxeter system with its full enumeration and multiplication data.
pub struct CoxeterSystem {
    kind: CoxeterType,
    matrix: Vec<Vec<u32>>,
    gamma: Vec<usize>,
    words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    /// `left[s][w] = s w`.
    left: Vec<Vec<usize>>,
    /// `right[s][w] = w s`.
    right: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    bruhat: Vec<Vec<u64>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterSystem({}, |W| = {})", self.kind, self.words.len())
    }
}

impl CoxeterSystem {
    pub fn new(kind: CoxeterType) -> Self {
        let matrix = kind.matrix();
        let rank = kind.rank();
        let rewriter = Rewriter { matrix: &matrix };
        // Level-by-level enumeration of normal forms.
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut level: Vec<Vec<u8>> = vec![Vec::new()];
        while !level.is_empty() {
            let mut next: Vec<Vec<u8>> = Vec::new();
            let mut seen: HashSet<Vec<u8>> = HashSet::new();
            for w in &level {
                for s in 0..rank as u8 {
                    let mut cand = w.clone();
                    cand.push(s);
                    if let Some(nf) = rewriter.normal_form_if_reduced(&cand) {
                        if seen.insert(nf.clone()) {
                            next.push(nf);
                        }
                    }
                }
            }
            next.sort();
            words.extend(next.iter().cloned());
            level = next;
        }
        let index: HashMap<Vec<u8>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let n = words.len();
        let mut left = vec![vec![0usize; n]; rank];
        let mut right = vec![vec![0usize; n]; rank];
        for (i, w) in words.iter().enumerate() {
            for s in 0..rank {
                right[s][i] = index[&rewriter.normal_form(&[w.as_slice(), &[s as u8]].concat())];
                left[s][i] = index[&rewriter.normal_form(&[&[s as u8], w.as_slice()].concat())];
            }
        }
        let inverse = words
            .iter()
            .map(|w| {
                let rev: Vec<u8> = w.iter().rev().copied().collect();
                index[&rewriter.normal_form(&rev)]
            })
            .collect();
        let mut sys = CoxeterSystem {
            kind,
            matrix,
            gamma: (0..rank).collect(),
            words,
            index,
            left,
            right,
            inverse,
            bruhat: Vec::new(),
        };
        sys.bruhat = sys.compute_bruhat();
        sys
    }

    pub fn from_label(label: &str) -> Result<Self, CoxeterError> {
        Ok(Self::new(label.parse()?))
    }

    /// Replaces γ by the given generator permutation.
    pub fn with_gamma(mut self, gamma: Vec<usize>) -> Result<Self, CoxeterError> {
        let r = self.rank();
        let mut sorted = gamma.clone();
        sorted.sort();
        if sorted != (0..r).collect::<Vec<_>>() {
            return Err(CoxeterError::BadGamma(gamma));
        }
        for i in 0..r {
            for j in 0..r {
                if self.matrix[i][j] != self.matrix[gamma[i]][gamma[j]] {
                    return Err(CoxeterError::BadGamma(gamma));
                }
            }
        }
        self.gamma = gamma;
        Ok(self)
    }

    pub fn kind(&self) -> CoxeterType {
        self.kind
    }

    pub fn label(&self) -> String {
        self.kind.to_string()
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    /// All elements in ShortLex order.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.order()).map(GroupElement).collect()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        GroupElement(self.left[s][0])
    }

    pub fn longest(&self) -> GroupElement {
        GroupElement(self.order() - 1)
    }

    pub fn word(&self, w: GroupElement) -> &[u8] {
        &self.words[w.0]
    }

    pub fn length(&self, w: GroupElement) -> usize {
        self.words[w.0].len()
    }

    pub fn element_from_word(&self, word: &[u8]) -> GroupElement {
        word.iter().fold(self.identity(), |acc, &s| self.right_mul(acc, s as usize))
    }

    pub fn lookup(&self, normal_form: &[u8]) -> Option<GroupElement> {
        self.index.get(normal_form).copied().map(GroupElement)
    }

    #[inline]
    pub fn left_mul(&self, s: usize, w: GroupElement) -> GroupElement {
        GroupElement(self.left[s][w.0])
    }

    #[inline]
    pub fn right_mul(&self, w: GroupElement, s: usize) -> GroupElement {
        GroupElement(self.right[s][w.0])
    }

    pub fn multiply(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        self.words[y.0].iter().fold(x, |acc, &s| self.right_mul(acc, s as usize))
    }

    pub fn inverse(&self, w: GroupElement) -> GroupElement {
        GroupElement(self.inverse[w.0])
    }

    /// `s` is a left descent of `w` iff `l(sw) < l(w)`.
    pub fn is_left_descent(&self, s: usize, w: GroupElement) -> bool {
        self.length(self.left_mul(s, w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: GroupElement, s: usize) -> bool {
        self.length(self.right_mul(w, s)) < self.length(w)
    }

    pub fn left_descents(&self, w: GroupElement) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_left_descent(s, w)).collect()
    }

    pub fn right_descents(&self, w: GroupElement) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_right_descent(w, s)).collect()
    }

    /// Image under the automorphism γ.
    pub fn apply_gamma(&self, w: GroupElement) -> GroupElement {
        self.words[w.0].iter().fold(self.identity(), |acc, &s| self.right_mul(acc, self.gamma[s as usize]))
    }

    /// Bruhat order `y <= w`.
    pub fn bruhat_leq(&self, y: GroupElement, w: GroupElement) -> bool {
        self.bruhat[w.0][y.0 / 64] >> (y.0 % 64) & 1 == 1
    }

    /// Elements below `w` in Bruhat order.
    pub fn bruhat_interval(&self, w: GroupElement) -> Vec<GroupElement> {
        (0..self.order()).filter(|&y| self.bruhat_leq(GroupElement(y), w)).map(GroupElement).collect()
    }

    /// Poincaré polynomial coefficients: entry `k` counts elements of length `k`.
    pub fn length_distribution(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.length(self.longest()) + 1];
        for w in &self.words {
            out[w.len()] += 1;
        }
        out
    }

    pub fn word_string(&self, w: GroupElement) -> String {
        if self.words[w.0].is_empty() {
            return "e".to_string();
        }
        self.words[w.0].iter().map(|s| format!("s{}", s + 1)).collect::<Vec<_>>().join("")
    }

    fn compute_bruhat(&self) -> Vec<Vec<u64>> {
        let n = self.order();
        let blocks = n.div_ceil(64);
        let mut rel = vec![vec![0u64; blocks]; n];
        rel[0][0] = 1;
        // Elements are sorted by length, so smaller lengths come first.
        for w in 1..n {
            let s = self.words[w][0] as usize;
            let sw = self.left[s][w];
            let mut row = vec![0u64; blocks];
            for y in 0..n {
                let sy = self.left[s][y];
                let m = if self.words[sy].len() < self.words[y].len() { sy } else { y };
                if rel[sw][m / 64] >> (m % 64) & 1 == 1 {
                    row[y / 64] |= 1 << (y % 64);
                }
            }
            rel[w] = row;
        }
        rel
    }
}

struct Rewriter<'a> {
    matrix: &'a [Vec<u32>],
}

impl Rewriter<'_> {
    /// Lex-minimal reduced word for the element represented by `word`.
    fn normal_form(&self, word: &[u8]) -> Vec<u8> {
        let mut current = word.to_vec();
        loop {
            match self.explore(&current) {
                Explored::Reduced(min) => return min,
                Explored::Shortened(shorter) => current = shorter,
            }
        }
    }

    /// Normal form if `word` is reduced, `None` otherwise.
    fn normal_form_if_reduced(&self, word: &[u8]) -> Option<Vec<u8>> {
        match self.explore(word) {
            Explored::Reduced(min) => Some(min),
            Explored::Shortened(_) => None,
        }
    }

    fn explore(&self, word: &[u8]) -> Explored {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        let mut best = word.to_vec();
        while let Some(w) = queue.pop_front() {
            if let Some(i) = w.windows(2).position(|p| p[0] == p[1]) {
                let mut shorter = w.clone();
                shorter.drain(i..i + 2);
                return Explored::Shortened(shorter);
            }
            if w < best {
                best = w.clone();
            }
            for (i, m) in self.braid_sites(&w) {
                let mut v = w.clone();
                let (a, b) = (w[i], w[i + 1]);
                for k in 0..m {
                    v[i + k] = if k % 2 == 0 { b } else { a };
                }
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        Explored::Reduced(best)
    }

    /// Positions where an alternating block `abab...` of length `m(a,b)` starts.
    fn braid_sites(&self, w: &[u8]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            if a == b {
                continue;
            }
            let m = self.matrix[a as usize][b as usize] as usize;
            if i + m > w.len() {
                continue;
            }
            if (0..m).all(|k| w[i + k] == if k % 2 == 0 { a } else { b }) {
                out.push((i, m));
            }
        }
        out
    }
}

enum Explored {
    Reduced(Vec<u8>),
    Shortened(Vec<u8>),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_longest_lengths() {
        for (label, order, top) in
            [("A1", 2, 1), ("A2", 6, 3), ("A3", 24, 6), ("A4", 120, 10), ("C2", 8, 4), ("G2", 12, 6), ("I2(5)", 10, 5)]
        {
            let w = CoxeterSystem::from_label(label).unwrap();
            assert_eq!(w.order(), order, "{label}");
            assert_eq!(w.length(w.longest()), top, "{label}");
            assert_eq!(w.order(), w.kind().order());
        }
        assert!(CoxeterSystem::from_label("E8").is_err());
    }

    #[test]
    fn small_products() {
        let w = CoxeterSystem::from_label("A2").unwrap();
        let (s1, s2) = (w.generator(0), w.generator(1));
        assert_eq!(w.multiply(s1, s1), w.identity());
        assert_eq!(w.multiply(w.longest(), w.longest()), w.identity());
        assert_eq!(w.length(w.multiply(s1, s2)), 2);
        assert!(!w.bruhat_leq(s1, s2));
        assert!(w.bruhat_leq(w.identity(), w.longest()));
        assert!(!w.bruhat_leq(w.longest(), s1));
    }

    #[test]
    fn gamma_must_preserve_matrix() {
        assert!(CoxeterSystem::from_label("C2").unwrap().with_gamma(vec![1, 0]).is_ok());
        assert!(CoxeterSystem::from_label("A3").unwrap().with_gamma(vec![2, 1, 0]).is_ok());
        assert!(CoxeterSystem::from_label("A3").unwrap().with_gamma(vec![1, 0, 2]).is_err());
    }
}
