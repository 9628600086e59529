//! Kazhdan–Lusztig polynomials, μ-coefficients, two-sided cells and the
//! a-function.
//!
//! Polynomials `P_{y,w}` live in `Z[q]` and are stored as [`LaurentPoly`]
//! in the variable `q`. The C′-basis computations use the variable `v` with
//! `q = v^2`; those are also [`LaurentPoly`] values, just read in `v`.

mod cells;

pub use cells::{a_function, cell_characters, two_sided_cells, CellPartition, CMultiplier};

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::exactalg::LaurentPoly;

/// All KL polynomials and μ-coefficients of a finite Coxeter group.
#[derive(Clone, Debug)]
pub struct KLTable {
    /// `polys[w][y] = P_{y,w}` (zero unless `y <= w`).
    polys: Vec<Vec<LaurentPoly>>,
    /// `mu[w][y] = μ(y, w)`.
    mu: Vec<Vec<i64>>,
    /// For each `w`, the `y < w` with `μ(y, w) != 0`.
    mu_lists: Vec<Vec<(usize, i64)>>,
}

impl KLTable {
    pub fn new(w: &CoxeterSystem) -> Self {
        let n = w.order();
        let mut polys: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0i64; n]; n];
        let mut mu_lists: Vec<Vec<(usize, i64)>> = Vec::with_capacity(n);
        for wi in 0..n {
            let we = GroupElement(wi);
            let mut row = vec![LaurentPoly::zero(); n];
            if wi == 0 {
                row[0] = LaurentPoly::one();
            } else {
                let s = w.word(we)[0] as usize;
                let v = w.left_mul(s, we).index();
                let lw = w.length(we) as i32;
                for (yi, slot) in row.iter_mut().enumerate() {
                    let y = GroupElement(yi);
                    if !w.bruhat_leq(y, we) {
                        continue;
                    }
                    let sy = w.left_mul(s, y).index();
                    let c = i32::from(w.length(GroupElement(sy)) < w.length(y));
                    let mut p = polys[v][sy].shift(1 - c);
                    p += &polys[v][yi].shift(c);
                    for &(z, m) in &mu_lists[v] {
                        let ze = GroupElement(z);
                        if w.length(w.left_mul(s, ze)) < w.length(ze) {
                            let k = (lw - w.length(ze) as i32) / 2;
                            p -= &polys[z][yi].shift(k).scale(m);
                        }
                    }
                    *slot = p;
                }
            }
            let mut list = Vec::new();
            let lw = w.length(we) as i64;
            for (yi, p) in row.iter().enumerate() {
                if yi == wi || p.is_zero() {
                    continue;
                }
                let d = lw - w.length(GroupElement(yi)) as i64;
                if d % 2 == 1 {
                    let m = p.coeff(((d - 1) / 2) as i32);
                    if m != 0 {
                        mu[wi][yi] = m;
                        list.push((yi, m));
                    }
                }
            }
            polys.push(row);
            mu_lists.push(list);
        }
        Self { polys, mu, mu_lists }
    }

    /// `P_{y,w}`; zero when `y` is not below `w`.
    pub fn kl_polynomial(&self, y: GroupElement, w: GroupElement) -> &LaurentPoly {
        &self.polys[w.index()][y.index()]
    }

    /// `μ(y, w)`: the coefficient of `q^{(l(w)-l(y)-1)/2}` in `P_{y,w}` (zero if not defined).
    pub fn mu(&self, y: GroupElement, w: GroupElement) -> i64 {
        self.mu[w.index()][y.index()]
    }

    /// Pairs `(y, μ(y, w))` with `y < w` and nonzero μ.
    pub fn mu_list(&self, w: GroupElement) -> &[(usize, i64)] {
        &self.mu_lists[w.index()]
    }

    pub fn order(&self) -> usize {
        self.polys.len()
    }
}

/// Convenience wrapper for a single polynomial.
pub fn kl_polynomial(w: &CoxeterSystem, y: GroupElement, x: GroupElement) -> LaurentPoly {
    KLTable::new(w).kl_polynomial(y, x).clone()
}

/// Convenience wrapper for a single μ-coefficient.
pub fn mu(w: &CoxeterSystem, y: GroupElement, x: GroupElement) -> i64 {
    KLTable::new(w).mu(y, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_polynomials_are_trivial() {
        let w = CoxeterSystem::from_label("C2").unwrap();
        let t = KLTable::new(&w);
        for y in w.enumerate() {
            for x in w.enumerate() {
                let p = t.kl_polynomial(y, x);
                if w.bruhat_leq(y, x) {
                    assert_eq!(*p, LaurentPoly::one());
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }

    #[test]
    fn a3_nontrivial_polynomial() {
        let w = CoxeterSystem::from_label("A3").unwrap();
        let t = KLTable::new(&w);
        let y = w.element_from_word(&[1]);
        let x = w.element_from_word(&[1, 0, 2, 1]);
        assert_eq!(*t.kl_polynomial(y, x), LaurentPoly::from_coeffs(&[1, 1]));
        assert_eq!(t.mu(y, x), 1);
        let a2 = CoxeterSystem::from_label("A2").unwrap();
        assert_eq!(KLTable::new(&a2).mu(a2.identity(), a2.longest()), 0);
    }
}
