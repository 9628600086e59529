use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::error::ExactError;
use super::numfield::{same_field, FieldRef, NumberFieldElem};
use super::rational::Rational;

/// Sparse univariate Laurent polynomial in `t` over a number field.
///
/// No zero coefficient is ever stored; the zero polynomial has no terms and
/// degree `None`.
#[derive(Clone)]
pub struct Poly {
    field: FieldRef,
    terms: BTreeMap<i64, NumberFieldElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(field: &FieldRef) -> Self {
        Self { field: Arc::clone(field), terms: BTreeMap::new() }
    }

    pub fn constant(c: NumberFieldElem) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: NumberFieldElem, exp: i64) -> Self {
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The indeterminate `t`.
    pub fn t(field: &FieldRef) -> Self {
        Self::monomial(field.one(), 1)
    }

    /// Polynomial over `field` with rational coefficients, constant term first.
    pub fn from_rationals(field: &FieldRef, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(k as i64, field.from_rational(c.clone()));
            }
        }
        p
    }

    pub fn from_ints(field: &FieldRef, coeffs: &[i64]) -> Self {
        let r: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
        Self::from_rationals(field, &r)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, exp: i64) -> NumberFieldElem {
        self.terms.get(&exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &NumberFieldElem)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    fn check(&self, other: &Self) -> Result<(), ExactError> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch { left: self.field.to_string(), right: other.field.to_string() })
        }
    }

    fn insert_add(&mut self, exp: i64, c: &NumberFieldElem) {
        let sum = match self.terms.get(&exp) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.insert_add(k, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let mut out = Self::zero(&self.field);
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                out.insert_add(i + j, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &NumberFieldElem) -> Self {
        let mut out = Self::zero(&self.field);
        for (&k, a) in &self.terms {
            let p = a * c;
            if !p.is_zero() {
                out.terms.insert(k, p);
            }
        }
        out
    }

    /// Exact evaluation; see [`poly_eval`].
    pub fn eval(&self, a: &NumberFieldElem) -> Result<NumberFieldElem, ExactError> {
        poly_eval(self, a)
    }

    /// Canonical text: `a/b[*s^j]*t^k` terms by ascending `k` then `j`,
    /// joined by `+`; the zero polynomial is `0`.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (&k, c) in &self.terms {
            for (j, x) in c.coords().iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let gen = match j {
                    0 => String::new(),
                    1 => "*s".to_string(),
                    _ => format!("*s^{}", j),
                };
                parts.push(format!("{}/{}{}*t^{}", x.numer(), x.denom(), gen, k));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Parses the text format over `field`.
    ///
    /// Accepts the canonical output of [`Poly::to_text`] and the obvious
    /// shorthands: integer coefficients, missing coefficient, bare `t`,
    /// missing `t` factor.
    pub fn parse(text: &str, field: &FieldRef) -> Result<Self, ExactError> {
        let err = |reason: &str| ExactError::Parse { text: text.to_string(), reason: reason.to_string() };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero(field));
        }
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut out = Self::zero(field);
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let mut coeff = Rational::one();
            let mut have_coeff = false;
            let mut s_pow = 0u32;
            let mut t_pow = 0i64;
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix('s') {
                    s_pow = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(|| err("bad s power"))?
                    };
                } else if let Some(rest) = factor.strip_prefix('t') {
                    t_pow = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(|| err("bad t power"))?
                    };
                } else {
                    if have_coeff {
                        return Err(err("two coefficients in one term"));
                    }
                    have_coeff = true;
                    coeff = parse_rational(factor).ok_or_else(|| err("bad coefficient"))?;
                }
            }
            let c = field.from_rational(coeff);
            let c = if s_pow == 0 { c } else { &c * &field.generator().pow(s_pow) };
            out.insert_add(t_pow, &c);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let r = match body.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().ok()?;
            let b: BigInt = b.parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Rational::new(a, b)
        }
        None => Rational::from_integer(body.parse().ok()?),
    };
    Some(if neg { -r } else { r })
}

/// Exact value of `f` at `a`.
///
/// A polynomial over `Q` may be evaluated at an element of any field; any
/// other polynomial needs `a` in its own field. Negative exponents need
/// `a != 0`.
pub fn poly_eval(f: &Poly, a: &NumberFieldElem) -> Result<NumberFieldElem, ExactError> {
    let target = a.field();
    let coerce: Box<dyn Fn(&NumberFieldElem) -> NumberFieldElem> = if same_field(f.field(), target) {
        Box::new(|c: &NumberFieldElem| c.clone())
    } else if f.field().degree() == 1 {
        let target = Arc::clone(target);
        Box::new(move |c: &NumberFieldElem| target.from_rational(c.to_rational().unwrap()))
    } else {
        return Err(ExactError::FieldMismatch { left: f.field().to_string(), right: target.to_string() });
    };
    let inv = if f.low_degree().is_some_and(|k| k < 0) { Some(a.inv().ok_or(ExactError::DivisionByZero)?) } else { None };
    let mut acc = target.zero();
    for (k, c) in f.terms() {
        let p = if k >= 0 { a.pow(k as u32) } else { inv.as_ref().unwrap().pow((-k) as u32) };
        acc = &acc + &(&coerce(c) * &p);
    }
    Ok(acc)
}

macro_rules! forward_poly_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$try(rhs).expect("mixed-field polynomial arithmetic")
            }
        }
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$try(&rhs).expect("mixed-field polynomial arithmetic")
            }
        }
    };
}

forward_poly_op!(Add, add, try_add);
forward_poly_op!(Sub, sub, try_sub);
forward_poly_op!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { field: Arc::clone(&self.field), terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self.to_text())
    }
}
