use std::fmt;

use super::laurent::LaurentPoly;

/// A commutative coefficient ring given by a context value.
///
/// Elements do not carry enough information to build a zero on their own
/// (a number-field zero needs its field), so every operation goes through
/// the context.
pub trait Ring: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse when it exists in the ring.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Whether `a` belongs to this ring (same field descriptor, in range).
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn describe(&self) -> String;
}

/// Integer Laurent polynomials in one indeterminate (`q` or `v`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentRing;

impl Ring for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn from_i64(&self, n: i64) -> LaurentPoly {
        LaurentPoly::constant(n)
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn sub(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a - b
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.scale(-1)
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &LaurentPoly) -> Option<LaurentPoly> {
        let mut terms = a.terms();
        match (terms.next(), terms.next()) {
            (Some((e, c)), None) if c == 1 || c == -1 => Some(LaurentPoly::monomial(c, -e)),
            _ => None,
        }
    }
    fn describe(&self) -> String {
        "Z[q,q^-1]".to_string()
    }
}
