//! The one-parameter Iwahori–Hecke algebra in the standard basis `{T_w}`,
//! its irreducible representations for small types, reduction modulo `l`,
//! and decomposition matrices.
//!
//! Multiplication uses `T_s T_w = T_{sw}` if `l(sw) = l(w) + 1` and
//! `T_s T_w = q T_{sw} + (q - 1) T_w` otherwise.

mod decomp;
mod lattice;
mod reps;

use std::sync::Arc;

use thiserror::Error;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::exactalg::matrix::Matrix;
use crate::exactalg::{ExactError, LaurentPoly, LaurentRing, Ring};
use crate::meataxe::MeatAxeError;

pub use decomp::{
    cell_assignment, check_triangularity, decomposition_matrix, irr_modular, CellAssignment, ColumnInfo,
    DecompositionMatrix, ModularIrreducibles, RowInfo, TriangularityMode, TriangularityReport,
};
pub use lattice::{integral_form, specialize_reduce, specialize_reduce_with_lattice, ModularRep};
pub use reps::{check_relations, irr_char_zero, MatrixRep};

#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("unsupported type {0} for this operation")]
    UnsupportedType(String),
    #[error("defining characteristic: l = {ell} divides q = {q}")]
    DefiningCharacteristic { q: i64, ell: u32 },
    #[error("entry {entry} at ({row}, {col}) of generator {generator} is not {ell}-integral")]
    NotIntegral { generator: usize, row: usize, col: usize, entry: String, ell: u32 },
    #[error("element has {found} coefficients, the algebra has dimension {expected}, or a coefficient lies outside {ring}")]
    RingMismatch { expected: usize, found: usize, ring: String },
    #[error("representation {0} fails the quadratic or braid relations")]
    Relations(String),
    #[error("cell assignment failed: {0}")]
    CellAssignment(String),
    #[error("composition factor of {0} does not match any irreducible of the regular module")]
    UnmatchedFactor(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    MeatAxe(#[from] MeatAxeError),
}

/// The Hecke algebra over a coefficient ring with a chosen parameter `q`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra<R: Ring> {
    sys: Arc<CoxeterSystem>,
    ring: R,
    q: R::Elem,
}

impl<R: Ring> HeckeAlgebra<R> {
    pub fn new(sys: Arc<CoxeterSystem>, ring: R, q: R::Elem) -> Self {
        Self { sys, ring, q }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn q(&self) -> &R::Elem {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.sys.order()
    }

    /// The basis element `T_w`.
    pub fn basis(&self, w: GroupElement) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); self.dim()];
        v[w.index()] = self.ring.one();
        v
    }

    /// `T_s · a`.
    pub fn generator_left(&self, s: usize, a: &[R::Elem]) -> Vec<R::Elem> {
        let ring = &self.ring;
        let q_minus_1 = ring.sub(&self.q, &ring.one());
        let mut out = vec![ring.zero(); self.dim()];
        for (w, c) in a.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let we = GroupElement(w);
            let sw = self.sys.left_mul(s, we);
            if self.sys.length(sw) > self.sys.length(we) {
                out[sw.index()] = ring.add(&out[sw.index()], c);
            } else {
                out[sw.index()] = ring.add(&out[sw.index()], &ring.mul(&self.q, c));
                out[w] = ring.add(&out[w], &ring.mul(&q_minus_1, c));
            }
        }
        out
    }

    fn check(&self, a: &[R::Elem]) -> Result<(), HeckeError> {
        if a.len() != self.dim() || !a.iter().all(|c| self.ring.contains(c)) {
            return Err(HeckeError::RingMismatch { expected: self.dim(), found: a.len(), ring: self.ring.describe() });
        }
        Ok(())
    }

    /// Product of two elements given by their coefficient vectors in the T-basis.
    pub fn t_multiply(&self, a: &[R::Elem], b: &[R::Elem]) -> Result<Vec<R::Elem>, HeckeError> {
        self.check(a)?;
        self.check(b)?;
        let ring = &self.ring;
        let mut out = vec![ring.zero(); self.dim()];
        for (x, c) in a.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let mut v = b.to_vec();
            for &s in self.sys.word(GroupElement(x)).iter().rev() {
                v = self.generator_left(s as usize, &v);
            }
            for (o, t) in out.iter_mut().zip(&v) {
                if !ring.is_zero(t) {
                    *o = ring.add(o, &ring.mul(c, t));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of left multiplication by `T_s`; column `w` holds `T_s T_w`.
    pub fn left_regular_matrix(&self, s: usize) -> Matrix<R::Elem> {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.ring, n, n);
        for w in 0..n {
            let col = self.generator_left(s, &self.basis(GroupElement(w)));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, w, c);
            }
        }
        m
    }
}

/// The generic algebra over `Z[q, q^-1]`.
pub fn generic_algebra(sys: Arc<CoxeterSystem>) -> HeckeAlgebra<LaurentRing> {
    HeckeAlgebra::new(sys, LaurentRing, LaurentPoly::monomial(1, 1))
}

/// Poincaré polynomial `Σ_w q^{l(w)}` evaluated at an integer.
pub fn poincare_value(sys: &CoxeterSystem, q: i64) -> i128 {
    sys.length_distribution().iter().rev().fold(0i128, |acc, &c| acc * q as i128 + c as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_relation_in_a1() {
        let sys = Arc::new(CoxeterSystem::from_label("A1").unwrap());
        let h = generic_algebra(Arc::clone(&sys));
        let ts = h.basis(sys.generator(0));
        let prod = h.t_multiply(&ts, &ts).unwrap();
        assert_eq!(prod[0], LaurentPoly::monomial(1, 1));
        assert_eq!(prod[1], LaurentPoly::from_coeffs(&[-1, 1]));
    }

    #[test]
    fn poincare_values() {
        let sys = CoxeterSystem::from_label("A2").unwrap();
        assert_eq!(poincare_value(&sys, 2), 1 + 2 * 2 + 2 * 4 + 8);
        assert_eq!(poincare_value(&sys, 1), 6);
    }
}
