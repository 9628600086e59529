use std::collections::VecDeque;

use super::KLTable;
use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::exactalg::LaurentPoly;

/// Coefficient appearing when `C′_s` multiplies a C′-basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Coef {
    /// `v + v^{-1}`
    Quantum2,
    Int(i64),
}

/// Precomputed left and right multiplication by the `C′_s`.
pub struct CMultiplier {
    left: Vec<Vec<Vec<(usize, Coef)>>>,
    right: Vec<Vec<Vec<(usize, Coef)>>>,
}

impl CMultiplier {
    pub fn new(w: &CoxeterSystem, table: &KLTable) -> Self {
        let n = w.order();
        let build = |on_left: bool| -> Vec<Vec<Vec<(usize, Coef)>>> {
            (0..w.rank())
                .map(|s| {
                    (0..n)
                        .map(|x| {
                            let xe = GroupElement(x);
                            let sx = if on_left { w.left_mul(s, xe) } else { w.right_mul(xe, s) };
                            if w.length(sx) < w.length(xe) {
                                return vec![(x, Coef::Quantum2)];
                            }
                            let mut out = vec![(sx.index(), Coef::Int(1))];
                            for &(z, m) in table.mu_list(xe) {
                                let ze = GroupElement(z);
                                let sz = if on_left { w.left_mul(s, ze) } else { w.right_mul(ze, s) };
                                if w.length(sz) < w.length(ze) {
                                    out.push((z, Coef::Int(m)));
                                }
                            }
                            out
                        })
                        .collect()
                })
                .collect()
        };
        Self { left: build(true), right: build(false) }
    }

    /// Elements `y` with `C′_y` occurring in `C′_s C′_x` (left) or `C′_x C′_s` (right).
    pub fn support(&self, s: usize, x: usize, on_left: bool) -> impl Iterator<Item = usize> + '_ {
        let table = if on_left { &self.left } else { &self.right };
        table[s][x].iter().map(|&(y, _)| y)
    }

    /// `C′_s · (Σ_x vec[x] C′_x)` with coefficients in `Z[v, v^{-1}]`.
    pub fn left_apply(&self, s: usize, vec: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); vec.len()];
        for (x, c) in vec.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(y, coef) in &self.left[s][x] {
                match coef {
                    Coef::Quantum2 => {
                        out[y] += &c.shift(1);
                        out[y] += &c.shift(-1);
                    }
                    Coef::Int(1) => out[y] += c,
                    Coef::Int(m) => out[y] += &c.scale(m),
                }
            }
        }
        out
    }

    /// Same as [`Self::left_apply`] at `v = 1` with `s` acting as `C′_s - 1`,
    /// i.e. the group element `s` in the C′-basis of the group algebra.
    fn left_apply_group(&self, s: usize, vec: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; vec.len()];
        for (x, &c) in vec.iter().enumerate() {
            if c == 0 {
                continue;
            }
            out[x] -= c;
            for &(y, coef) in &self.left[s][x] {
                out[y] += match coef {
                    Coef::Quantum2 => 2 * c,
                    Coef::Int(m) => m * c,
                };
            }
        }
        out
    }
}

/// Two-sided cells with the induced order and a-values.
///
/// Orientation: `y <=_LR w` iff `C′_y` occurs in some element of the
/// two-sided ideal generated by `C′_w`. With this convention the cell of the
/// longest element is the minimum and `{e}` the maximum.
#[derive(Clone, Debug)]
pub struct CellPartition {
    /// Cells, sorted by a-value and then by smallest member.
    pub cells: Vec<Vec<GroupElement>>,
    /// Cell index of every element.
    pub cell_of: Vec<usize>,
    /// `leq[i][j]`: cell `i` <=_LR cell `j`.
    pub leq: Vec<Vec<bool>>,
    /// a-value of each cell (taken from its first member).
    pub a_values: Vec<u32>,
    /// a-value of every element.
    pub element_a: Vec<u32>,
    /// Element-level pre-order: `reach[w][y]` iff `y <=_LR w`.
    reach: Vec<Vec<bool>>,
}

impl CellPartition {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `y <=_LR w` on elements.
    pub fn lr_leq(&self, y: GroupElement, w: GroupElement) -> bool {
        self.reach[w.index()][y.index()]
    }

    /// Strict order on cells.
    pub fn less(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// Covering pairs `(lower, upper)` of the cell order.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if self.less(i, j) && !(0..k).any(|m| self.less(i, m) && self.less(m, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether the element a-values are constant on every cell.
    pub fn a_constant_on_cells(&self) -> bool {
        self.cells.iter().enumerate().all(|(i, c)| c.iter().all(|w| self.element_a[w.index()] == self.a_values[i]))
    }

    /// Whether `F < F'` implies `a(F) > a(F')`.
    pub fn a_order_reversing(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| !self.less(i, j) || self.a_values[i] > self.a_values[j]))
    }

    pub fn label(&self, i: usize) -> String {
        format!("c{i}")
    }
}

/// Computes the two-sided cells of `w` from its KL table.
pub fn two_sided_cells(w: &CoxeterSystem, table: &KLTable) -> CellPartition {
    let n = w.order();
    let mult = CMultiplier::new(w, table);
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, out) in edges.iter_mut().enumerate() {
        for s in 0..w.rank() {
            for on_left in [true, false] {
                out.extend(mult.support(s, x, on_left));
            }
        }
        out.sort_unstable();
        out.dedup();
    }
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|start| {
            let mut seen = vec![false; n];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &edges[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            seen
        })
        .collect();
    let element_a = a_values_with(w, table, &mult);
    let mut raw_cell = vec![usize::MAX; n];
    let mut raw_cells: Vec<Vec<GroupElement>> = Vec::new();
    for x in 0..n {
        if raw_cell[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&y| reach[x][y] && reach[y][x]).collect();
        for &y in &members {
            raw_cell[y] = raw_cells.len();
        }
        raw_cells.push(members.into_iter().map(GroupElement).collect());
    }
    let mut order: Vec<usize> = (0..raw_cells.len()).collect();
    order.sort_by_key(|&c| (element_a[raw_cells[c][0].index()], raw_cells[c][0].index()));
    let cells: Vec<Vec<GroupElement>> = order.iter().map(|&c| raw_cells[c].clone()).collect();
    let mut cell_of = vec![0usize; n];
    for (i, c) in cells.iter().enumerate() {
        for x in c {
            cell_of[x.index()] = i;
        }
    }
    let k = cells.len();
    let leq = (0..k)
        .map(|i| (0..k).map(|j| reach[cells[j][0].index()][cells[i][0].index()]).collect())
        .collect();
    let a_values = cells.iter().map(|c| element_a[c[0].index()]).collect();
    CellPartition { cells, cell_of, leq, a_values, element_a, reach }
}

/// The a-function of every element: the maximal `v`-degree of the structure
/// constants `h_{x,y,z}` of the C′-basis.
pub fn a_function(w: &CoxeterSystem, table: &KLTable) -> Vec<u32> {
    a_values_with(w, table, &CMultiplier::new(w, table))
}

fn a_values_with(w: &CoxeterSystem, table: &KLTable, mult: &CMultiplier) -> Vec<u32> {
    let n = w.order();
    let mut best = vec![0i32; n];
    for y in 0..n {
        // products[x] = C′_x C′_y, built by induction on l(x).
        let mut products: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        let mut unit = vec![LaurentPoly::zero(); n];
        unit[y] = LaurentPoly::one();
        products.push(unit);
        for x in 1..n {
            let xe = GroupElement(x);
            let s = w.word(xe)[0] as usize;
            let shorter = w.left_mul(s, xe);
            // C′_s C′_{x'} = C′_x + Σ_{z < x', sz < z} μ(z, x') C′_z
            let mut prod = mult.left_apply(s, &products[shorter.index()]);
            for &(z, m) in table.mu_list(shorter) {
                let ze = GroupElement(z);
                if w.length(w.left_mul(s, ze)) < w.length(ze) {
                    for (acc, term) in prod.iter_mut().zip(&products[z]) {
                        if !term.is_zero() {
                            *acc -= &term.scale(m);
                        }
                    }
                }
            }
            products.push(prod);
        }
        for prod in &products {
            for (z, h) in prod.iter().enumerate() {
                if let Some(d) = h.degree() {
                    best[z] = best[z].max(d);
                }
            }
        }
    }
    best.into_iter().map(|d| d.max(0) as u32).collect()
}

/// Character of each two-sided cell module at the given elements.
///
/// The left regular representation of `W`, written in the C′-basis at
/// `v = 1`, is block triangular with respect to the cell order; the trace of
/// the diagonal block of cell `F` is returned as `out[F][k]` for element `k`.
pub fn cell_characters(
    w: &CoxeterSystem,
    table: &KLTable,
    cells: &CellPartition,
    elements: &[GroupElement],
) -> Vec<Vec<i64>> {
    let mult = CMultiplier::new(w, table);
    let n = w.order();
    let mut out = vec![vec![0i64; elements.len()]; cells.len()];
    for (k, &x) in elements.iter().enumerate() {
        let word = w.word(x);
        for col in 0..n {
            let mut v = vec![0i64; n];
            v[col] = 1;
            for &s in word.iter().rev() {
                v = mult.left_apply_group(s as usize, &v);
            }
            out[cells.cell_of[col]][k] += v[col];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_cells() {
        let w = CoxeterSystem::from_label("A1").unwrap();
        let t = KLTable::new(&w);
        let c = two_sided_cells(&w, &t);
        assert_eq!(c.len(), 2);
        assert_eq!(c.a_values, vec![0, 1]);
        assert_eq!(c.cells[0], vec![w.identity()]);
        // {s} <_LR {e}
        assert!(c.less(1, 0));
        assert!(!c.less(0, 1));
    }

    #[test]
    fn a2_cells_and_a_values() {
        let w = CoxeterSystem::from_label("A2").unwrap();
        let t = KLTable::new(&w);
        let c = two_sided_cells(&w, &t);
        let sizes: Vec<usize> = c.cells.iter().map(|x| x.len()).collect();
        assert_eq!(sizes, vec![1, 4, 1]);
        assert_eq!(c.a_values, vec![0, 1, 3]);
        assert!(c.a_constant_on_cells());
        assert!(c.a_order_reversing());
        assert_eq!(c.hasse(), vec![(1, 0), (2, 1)]);
    }
}
