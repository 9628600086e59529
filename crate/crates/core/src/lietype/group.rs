use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exactalg::matrix::Matrix;
use crate::exactalg::{FfRef, FiniteField};

use super::LieTypeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupFamily {
    GL,
    SL,
}

impl FromStr for GroupFamily {
    type Err = LieTypeError;
    fn from_str(s: &str) -> Result<Self, LieTypeError> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Self::GL),
            "SL" => Ok(Self::SL),
            _ => Err(LieTypeError::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::GL => "GL",
            Self::SL => "SL",
        })
    }
}

/// A conjugacy class: sorted element indices, the smallest one serving as representative.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub order: usize,
    #[serde(skip)]
    pub elements: Vec<usize>,
}

/// A small matrix group over `F_q`, enumerated exhaustively.
///
/// Elements are `n x n` matrices stored row-major; every group operation is
/// a lookup in the precomputed multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    family: GroupFamily,
    n: usize,
    q: u32,
    field: FfRef,
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    mul: Vec<u32>,
    inverse: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
    borel: Vec<usize>,
    borel_generators: Vec<usize>,
    torus: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

/// `(family, n, q)` combinations that can be built.
pub const SUPPORTED_GROUPS: [(GroupFamily, usize, u32); 9] = [
    (GroupFamily::GL, 2, 2),
    (GroupFamily::GL, 2, 3),
    (GroupFamily::GL, 2, 4),
    (GroupFamily::GL, 2, 5),
    (GroupFamily::SL, 2, 2),
    (GroupFamily::SL, 2, 3),
    (GroupFamily::SL, 2, 4),
    (GroupFamily::SL, 2, 5),
    (GroupFamily::GL, 3, 2),
];

pub(crate) fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        r += 1;
    }
    (x == 1).then_some((p, r))
}

fn mat_mul(f: &FiniteField, n: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for k in 0..n {
                acc = f.add(acc, f.mul(a[i * n + k], b[k * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
    out
}

fn determinant(f: &FiniteField, n: usize, a: &[u32]) -> u32 {
    let mut m = a.to_vec();
    let mut det = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r * n + c] != 0) else { return 0 };
        if p != c {
            for j in 0..n {
                m.swap(p * n + j, c * n + j);
            }
            det = f.neg(det);
        }
        let piv = m[c * n + c];
        det = f.mul(det, piv);
        let inv = f.inv(piv).expect("nonzero pivot");
        for r in c + 1..n {
            let factor = f.mul(m[r * n + c], inv);
            if factor != 0 {
                for j in c..n {
                    let v = f.sub(m[r * n + j], f.mul(factor, m[c * n + j]));
                    m[r * n + j] = v;
                }
            }
        }
    }
    det
}

impl FiniteMatrixGroup {
    /// Builds `GL_n(F_q)` or `SL_n(F_q)` for the combinations in [`SUPPORTED_GROUPS`].
    pub fn build(family: GroupFamily, n: usize, q: u32) -> Result<Self, LieTypeError> {
        if !SUPPORTED_GROUPS.contains(&(family, n, q)) {
            return Err(LieTypeError::UnsupportedGroup { family: family.to_string(), n, q });
        }
        let (p, r) = prime_power(q).expect("supported q is a prime power");
        let field = FiniteField::new(p, r)?;
        let f = &*field;
        let entries = n * n;
        let total = (q as usize).pow(entries as u32);
        let mut elements = Vec::new();
        for code in 0..total {
            let mut c = code;
            let m: Vec<u32> = (0..entries)
                .map(|_| {
                    let d = (c % q as usize) as u32;
                    c /= q as usize;
                    d
                })
                .collect();
            let det = determinant(f, n, &m);
            let keep = match family {
                GroupFamily::GL => det != 0,
                GroupFamily::SL => det == 1,
            };
            if keep {
                elements.push(m);
            }
        }
        let index: HashMap<Vec<u32>, usize> = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let order = elements.len();
        let mut mul = vec![0u32; order * order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * order + j] = index[&mat_mul(f, n, a, b)] as u32;
            }
        }
        let id: Vec<u32> = (0..entries).map(|k| u32::from(k % (n + 1) == 0)).collect();
        let identity = index[&id];
        let mut inverse = vec![0usize; order];
        for i in 0..order {
            inverse[i] = (0..order).find(|&j| mul[i * order + j] as usize == identity).expect("group element has an inverse");
        }
        let upper = |m: &[u32]| (0..n).all(|i| (0..i).all(|j| m[i * n + j] == 0));
        let diagonal = |m: &[u32]| (0..n).all(|i| (0..n).all(|j| i == j || m[i * n + j] == 0));
        let borel: Vec<usize> = (0..order).filter(|&i| upper(&elements[i])).collect();
        let torus: Vec<usize> = (0..order).filter(|&i| diagonal(&elements[i])).collect();
        let mut group = Self {
            family,
            n,
            q,
            field,
            elements,
            index,
            mul,
            inverse,
            identity,
            generators: Vec::new(),
            borel,
            borel_generators: Vec::new(),
            torus,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        group.generators = group.choose_generators();
        group.borel_generators = group.generators_of(&group.borel.clone());
        group.compute_classes();
        Ok(group)
    }

    /// A transvection `1 + E_{1n}` plus the first element (in enumeration
    /// order, preferring elements of maximal order) that generates `G` with it.
    fn choose_generators(&self) -> Vec<usize> {
        let n = self.n;
        let mut t: Vec<u32> = (0..n * n).map(|k| u32::from(k % (n + 1) == 0)).collect();
        t[n - 1] = 1;
        let transvection = self.index[&t];
        let mut candidates: Vec<usize> = (0..self.order()).collect();
        candidates.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
        for c in candidates {
            if self.closure(&[transvection, c]).len() == self.order() {
                return vec![transvection, c];
            }
        }
        unreachable!("every supported group is two-generated by a transvection and one more element")
    }

    /// A small generating set of the subgroup `h` (greedy).
    fn generators_of(&self, h: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for &x in h {
            if span.len() == h.len() {
                break;
            }
            if !span.contains(&x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.multiply(g, x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    fn compute_classes(&mut self) {
        let order = self.order();
        let mut class_of = vec![usize::MAX; order];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut members = vec![x];
            class_of[x] = id;
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for &g in &self.generators {
                    let z = self.multiply(self.multiply(g, y), self.inverse[g]);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        members.push(z);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut classes: Vec<ConjugacyClass> = raw
            .into_iter()
            .map(|elements| ConjugacyClass {
                representative: elements[0],
                size: elements.len(),
                order: self.element_order(elements[0]),
                elements,
            })
            .collect();
        classes.sort_by_key(|c| (c.order, c.size, c.representative));
        for (k, c) in classes.iter().enumerate() {
            for &x in &c.elements {
                class_of[x] = k;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Characteristic `p` of the defining field.
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn field(&self) -> &FfRef {
        &self.field
    }

    pub fn label(&self) -> String {
        format!("{}{}(F{})", self.family, self.n, self.q)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Row-major entries of element `i`.
    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    pub fn element_matrix(&self, i: usize) -> Matrix<u32> {
        Matrix::from_vec(self.n, self.n, self.elements[i].clone())
    }

    pub fn lookup(&self, entries: &[u32]) -> Option<usize> {
        self.index.get(entries).copied()
    }

    #[inline]
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.multiply(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.multiply(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.classes.iter().fold(1, |acc, c| num_integer::lcm(acc, c.order))
    }

    /// The two generators used for module actions.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Upper triangular elements, sorted.
    pub fn borel(&self) -> &[usize] {
        &self.borel
    }

    pub fn borel_generators(&self) -> &[usize] {
        &self.borel_generators
    }

    /// Diagonal elements, sorted.
    pub fn torus(&self) -> &[usize] {
        &self.torus
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Whether `elems` is closed under multiplication (hence a subgroup).
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: std::collections::HashSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity) && elems.iter().all(|&a| elems.iter().all(|&b| set.contains(&self.multiply(a, b))))
    }

    /// Left cosets `xH` of a subgroup: `coset_of[g]` numbers the coset containing `g`,
    /// cosets numbered by their smallest element.
    pub fn left_cosets(&self, subgroup: &[usize]) -> (usize, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut count = 0;
        for x in 0..self.order() {
            if coset_of[x] == usize::MAX {
                for &h in subgroup {
                    coset_of[self.multiply(x, h)] = count;
                }
                count += 1;
            }
        }
        (count, coset_of)
    }

    /// A Sylow `l`-subgroup, grown one normalizing `l`-element at a time.
    pub fn sylow_subgroup(&self, ell: u32) -> Vec<usize> {
        let ell = ell as usize;
        let mut target = 1;
        let mut m = self.order();
        while m % ell == 0 {
            m /= ell;
            target *= ell;
        }
        let is_ell_power = |k: usize| {
            let mut k = k;
            while k % ell == 0 {
                k /= ell;
            }
            k == 1
        };
        let mut p = vec![self.identity];
        while p.len() < target {
            let set: std::collections::HashSet<usize> = p.iter().copied().collect();
            let next = (0..self.order())
                .filter(|x| !set.contains(x) && is_ell_power(self.element_order(*x)))
                .find(|&x| p.iter().all(|&y| set.contains(&self.multiply(self.multiply(x, y), self.inverse[x]))))
                .expect("a non-Sylow l-subgroup has an l-element in its normalizer outside it");
            let mut gens = self.generators_of(&p);
            gens.push(next);
            p = self.closure(&gens);
        }
        p
    }
}
