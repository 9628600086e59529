use num_traits::Zero;

use crate::exactalg::matrix::{inverse, mat_mul, Matrix};
use crate::exactalg::{reduce, valuation, FfRef, NumberFieldElem, Rational, ReductionMap};

use super::{HeckeError, MatrixRep};

/// A representation reduced into a finite field.
#[derive(Clone, Debug)]
pub struct ModularRep {
    pub label: String,
    pub field: FfRef,
    pub q_bar: u32,
    pub gens: Vec<Matrix<u32>>,
}

impl ModularRep {
    pub fn dim(&self) -> usize {
        self.gens.first().map_or(0, |g| g.rows())
    }
}

/// Conjugates `rep` so that every entry is `l`-integral.
///
/// Over `Q` the representation is replaced by its action on the
/// `Z_(l)`-lattice spanned by the orbit of the basis vector `e_start` under
/// the algebra (all `T_w e_start`). A `Z_(l)`-basis is extracted by echelon
/// elimination with pivots of minimal `l`-valuation. Over larger fields the
/// entries must already be integral.
pub fn integral_form(rep: &MatrixRep, ell: u32, start: usize) -> Result<MatrixRep, HeckeError> {
    let field = &rep.field;
    if !field.is_rationals() {
        check_integral(rep, ell)?;
        return Ok(rep.clone());
    }
    let n = rep.dim();
    let to_q = |x: &NumberFieldElem| x.to_rational().expect("rational field");
    let gens: Vec<Vec<Vec<Rational>>> =
        rep.gens.iter().map(|g| (0..n).map(|i| (0..n).map(|j| to_q(g.get(i, j))).collect()).collect()).collect();
    // Grow a generating set of the lattice spanned by all T_w e_start:
    // keep images under the generators that are not yet in the lattice.
    let mut e = vec![Rational::zero(); n];
    e[start.min(n - 1)] = Rational::from_integer(1.into());
    let mut gens_set: Vec<Vec<Rational>> = vec![e.clone()];
    let mut span = lattice_basis(&gens_set, ell);
    let mut frontier = vec![e];
    while !frontier.is_empty() {
        let mut added = Vec::new();
        for v in &frontier {
            for g in &gens {
                let w = apply(g, v);
                if !in_lattice(&span, &w, ell) {
                    gens_set.push(w.clone());
                    span = lattice_basis(&gens_set, ell);
                    added.push(w);
                }
            }
        }
        frontier = added;
    }
    assert_eq!(span.len(), n, "orbit of a basis vector spans an irreducible module");
    let mut b = Matrix::zeros(field, n, n);
    for (j, v) in span.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            b.set(i, j, field.from_rational(x.clone()));
        }
    }
    let binv = inverse(field, &b).expect("lattice basis is invertible");
    let gens = rep.gens.iter().map(|g| mat_mul(field, &binv, &mat_mul(field, g, &b))).collect();
    let out = MatrixRep { label: rep.label.clone(), field: field.clone(), q: rep.q, gens };
    check_integral(&out, ell)?;
    Ok(out)
}

fn apply(g: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    g.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn val(x: &Rational, ell: u32) -> i64 {
    valuation(x, ell).unwrap_or(i64::MAX)
}

/// Echelon basis of the `Z_(l)`-module spanned by `vecs`.
fn lattice_basis(vecs: &[Vec<Rational>], ell: u32) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = vecs.to_vec();
    let n = rows.first().map_or(0, |r| r.len());
    let mut basis = Vec::new();
    for col in 0..n {
        let Some(p) = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| val(&rows[i][col], ell))
        else {
            continue;
        };
        let pivot = rows.swap_remove(p);
        for r in rows.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let c = &r[col] / &pivot[col];
            for (x, y) in r.iter_mut().zip(&pivot) {
                *x -= &c * y;
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        basis.push(pivot);
    }
    basis
}

fn in_lattice(basis: &[Vec<Rational>], v: &[Rational], ell: u32) -> bool {
    let mut r = v.to_vec();
    for b in basis {
        let Some(col) = b.iter().position(|x| !x.is_zero()) else { continue };
        if r[col].is_zero() {
            continue;
        }
        let c = &r[col] / &b[col];
        if val(&c, ell) < 0 {
            return false;
        }
        for (x, y) in r.iter_mut().zip(b) {
            *x -= &c * y;
        }
    }
    r.iter().all(|x| x.is_zero())
}

fn check_integral(rep: &MatrixRep, ell: u32) -> Result<(), HeckeError> {
    for (k, g) in rep.gens.iter().enumerate() {
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let x = g.get(i, j);
                if x.coords().iter().any(|c| val(c, ell) < 0) {
                    return Err(HeckeError::NotIntegral { generator: k, row: i, col: j, entry: x.to_string(), ell });
                }
            }
        }
    }
    Ok(())
}

/// Reduces `rep` modulo `l` into `F_{l^r}` after passing to an `l`-integral lattice.
pub fn specialize_reduce(rep: &MatrixRep, ell: u32, r: u32) -> Result<ModularRep, HeckeError> {
    specialize_reduce_with_lattice(rep, ell, r, 0)
}

/// As [`specialize_reduce`], spinning the lattice from the basis vector `start`.
pub fn specialize_reduce_with_lattice(rep: &MatrixRep, ell: u32, r: u32, start: usize) -> Result<ModularRep, HeckeError> {
    if rep.q % ell as i64 == 0 {
        return Err(HeckeError::DefiningCharacteristic { q: rep.q, ell });
    }
    let integral = integral_form(rep, ell, start)?;
    let map = ReductionMap::with_target_degree(&rep.field, ell, r)?;
    let gens = integral
        .gens
        .iter()
        .map(|g| g.try_map(|x| reduce(x, &map)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModularRep { label: rep.label.clone(), field: map.target().clone(), q_bar: map.reduce_int(rep.q), gens })
}
