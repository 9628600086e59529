//! Independent checks of the KL machinery.
//!
//! * KL polynomials are recomputed from R-polynomials through the
//!   characterisation `q^{l(w)-l(x)} P_{x,w}(q^{-1}) - P_{x,w}(q) = Σ_{x<y<=w} R_{x,y} P_{y,w}`
//!   with the degree bound.
//! * Type-A two-sided cells are recomputed from Robinson–Schensted shapes,
//!   and a-values as `n(λ)` of the shape.

use std::collections::BTreeMap;
use std::time::Instant;

use cellblocks::coxeter::{CoxeterSystem, GroupElement};
use cellblocks::exactalg::LaurentPoly;
use cellblocks::kl::{two_sided_cells, KLTable};

fn r_polynomials(w: &CoxeterSystem) -> Vec<Vec<LaurentPoly>> {
    let n = w.order();
    let mut r = vec![vec![LaurentPoly::zero(); n]; n];
    let q_minus_1 = LaurentPoly::from_coeffs(&[-1, 1]);
    let q = LaurentPoly::monomial(1, 1);
    for wi in 0..n {
        let we = GroupElement(wi);
        for xi in 0..n {
            let xe = GroupElement(xi);
            if !w.bruhat_leq(xe, we) {
                continue;
            }
            if wi == xi {
                r[wi][xi] = LaurentPoly::one();
                continue;
            }
            let s = w.right_descents(we)[0];
            let ws = w.right_mul(we, s).index();
            let xs = w.right_mul(xe, s);
            r[wi][xi] = if w.length(xs) < w.length(xe) {
                r[ws][xs.index()].clone()
            } else {
                &(&q_minus_1 * &r[ws][xi]) + &(&q * &r[ws][xs.index()])
            };
        }
    }
    r
}

fn kl_from_r(w: &CoxeterSystem) -> Vec<Vec<LaurentPoly>> {
    let n = w.order();
    let r = r_polynomials(w);
    let mut p = vec![vec![LaurentPoly::zero(); n]; n];
    for wi in 0..n {
        p[wi][wi] = LaurentPoly::one();
        let we = GroupElement(wi);
        // x in decreasing length order
        for xi in (0..wi).rev() {
            let xe = GroupElement(xi);
            if !w.bruhat_leq(xe, we) {
                continue;
            }
            let mut s = LaurentPoly::zero();
            for yi in xi + 1..=wi {
                if w.bruhat_leq(xe, GroupElement(yi)) && w.bruhat_leq(GroupElement(yi), we) {
                    s += &(&r[yi][xi] * &p[wi][yi]);
                }
            }
            let d = (w.length(we) - w.length(xe)) as i32;
            let bound = (d - 1) / 2;
            let terms: Vec<(i64, i32)> = s.terms().filter(|&(e, _)| e <= bound).map(|(e, c)| (-c, e)).collect();
            p[wi][xi] = LaurentPoly::from_terms(&terms);
        }
    }
    p
}

#[test]
fn kl_polynomials_match_r_polynomial_oracle() {
    for label in ["A1", "A2", "A3", "C2", "G2", "I2(5)", "A4"] {
        let w = CoxeterSystem::from_label(label).unwrap();
        let table = KLTable::new(&w);
        let oracle = kl_from_r(&w);
        for x in w.enumerate() {
            for y in w.enumerate() {
                assert_eq!(table.kl_polynomial(x, y), &oracle[y.index()][x.index()], "{label}: P_{{{x:?},{y:?}}}");
            }
        }
    }
}

#[test]
fn kl_table_invariants() {
    for label in ["A1", "A2", "A3", "A4", "C2", "G2", "I2(7)"] {
        let w = CoxeterSystem::from_label(label).unwrap();
        let table = KLTable::new(&w);
        for x in w.enumerate() {
            assert_eq!(*table.kl_polynomial(x, x), LaurentPoly::one());
            for y in w.enumerate() {
                let p = table.kl_polynomial(x, y);
                if !w.bruhat_leq(x, y) {
                    assert!(p.is_zero());
                    continue;
                }
                assert!(p.all_coeffs_nonnegative());
                assert_eq!(p.coeff(0), 1, "constant term of P_{{x,y}} is 1");
                if x != y {
                    let d = (w.length(y) - w.length(x)) as i32;
                    assert!(2 * p.degree().unwrap() < d);
                }
                if w.length(y) == w.length(x) + 1 {
                    assert_eq!(table.mu(x, y), 1);
                }
            }
        }
    }
}

fn permutation(w: &CoxeterSystem, x: GroupElement) -> Vec<usize> {
    let n = w.rank() + 1;
    let mut p: Vec<usize> = (0..n).collect();
    for &s in w.word(x) {
        p.swap(s as usize, s as usize + 1);
    }
    p
}

fn rs_shape(perm: &[usize]) -> Vec<usize> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &v in perm {
        let mut x = v;
        let mut placed = false;
        for row in rows.iter_mut() {
            match row.iter().position(|&y| y > x) {
                Some(i) => x = std::mem::replace(&mut row[i], x),
                None => {
                    row.push(x);
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            rows.push(vec![x]);
        }
    }
    rows.iter().map(|r| r.len()).collect()
}

#[test]
fn type_a_cells_match_robinson_schensted() {
    for n in 1..=4 {
        let w = CoxeterSystem::from_label(&format!("A{n}")).unwrap();
        let cells = two_sided_cells(&w, &KLTable::new(&w));
        let mut by_shape: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for x in w.enumerate() {
            by_shape.entry(rs_shape(&permutation(&w, x))).or_default().push(x.index());
        }
        assert_eq!(cells.len(), by_shape.len());
        for (shape, members) in &by_shape {
            let c = cells.cell_of[members[0]];
            let mut cell: Vec<usize> = cells.cells[c].iter().map(|g| g.index()).collect();
            cell.sort();
            assert_eq!(&cell, members, "A{n} shape {shape:?}");
            let n_lambda: usize = shape.iter().enumerate().map(|(i, l)| i * l).sum();
            assert_eq!(cells.a_values[c] as usize, n_lambda);
        }
        assert!(cells.a_constant_on_cells());
        assert!(cells.a_order_reversing());
    }
}

#[test]
fn a4_cells_are_fast() {
    let start = Instant::now();
    let w = CoxeterSystem::from_label("A4").unwrap();
    let cells = two_sided_cells(&w, &KLTable::new(&w));
    assert_eq!(cells.len(), 7);
    eprintln!("A4 cells in {:?}", start.elapsed());
}
