use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::error::ExactError;
use super::poly::Poly;
use super::rational::{rat_to_string, Rational};
use super::ring::Ring;

/// A number field `Q[s]/(f)` for a monic irreducible `f` over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct NumberField {
    /// Monic minimal polynomial, constant term first.
    min_poly: Vec<Rational>,
}

pub type FieldRef = Arc<NumberField>;

/// Builds a field descriptor from a minimal polynomial over the rationals.
///
/// Degrees 1 to 4 are accepted; irreducibility is decided by the rational
/// root test and, in degree 4, by searching for a factorisation into two
/// integral quadratics. On failure the discovered factor is reported.
pub fn field_create(min_poly: &Poly) -> Result<FieldRef, ExactError> {
    let q = min_poly.field();
    if q.degree() != 1 {
        return Err(ExactError::FieldMismatch {
            left: q.to_string(),
            right: "Q".to_string(),
        });
    }
    let deg = min_poly.degree().unwrap_or(0);
    if min_poly.low_degree().unwrap_or(0) < 0 || deg < 1 {
        return Err(ExactError::UnsupportedDegree(deg.max(0) as usize));
    }
    let coeffs: Vec<Rational> = (0..=deg)
        .map(|k| q.to_rational(&min_poly.coeff(k)).expect("degree-one field"))
        .collect();
    NumberField::from_rational_coeffs(&coeffs)
}

impl NumberField {
    /// The rationals, presented as `Q[s]/(s - 1)`.
    pub fn rationals() -> FieldRef {
        Arc::new(Self { min_poly: vec![-Rational::one(), Rational::one()] })
    }

    /// Checked constructor from coefficients (constant term first).
    pub fn from_rational_coeffs(coeffs: &[Rational]) -> Result<FieldRef, ExactError> {
        let mut coeffs = coeffs.to_vec();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let deg = coeffs.len().saturating_sub(1);
        if !(1..=4).contains(&deg) {
            return Err(ExactError::UnsupportedDegree(deg));
        }
        let lead = coeffs[deg].clone();
        let monic: Vec<Rational> = coeffs.iter().map(|c| c / &lead).collect();
        if let Some(factor) = find_rational_factor(&monic) {
            return Err(ExactError::Reducible { factor });
        }
        Ok(Arc::new(Self { min_poly: monic }))
    }

    /// `Q(sqrt d)` for a non-square integer `d`.
    pub fn quadratic(d: i64) -> Result<FieldRef, ExactError> {
        Self::from_rational_coeffs(&[Rational::from_integer(BigInt::from(-d)), Rational::zero(), Rational::one()])
    }

    /// Trusted constructor for polynomials known to be irreducible
    /// (cyclotomic and real-cyclotomic minimal polynomials).
    pub(crate) fn from_known_irreducible(coeffs: Vec<Rational>) -> FieldRef {
        debug_assert!(coeffs.last().is_some_and(|c| c.is_one()));
        Arc::new(Self { min_poly: coeffs })
    }

    /// `Q(2cos(2 pi / m))`, the field of the dihedral reflection representations.
    pub fn real_cyclotomic(m: u32) -> Result<FieldRef, ExactError> {
        let psi = real_cyclotomic_poly(m);
        let deg = psi.len() - 1;
        if deg > 4 {
            return Err(ExactError::UnsupportedDegree(deg));
        }
        if deg == 1 {
            return Ok(Self::rationals());
        }
        Ok(Self::from_known_irreducible(
            psi.into_iter().map(|c| Rational::from_integer(BigInt::from(c))).collect(),
        ))
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    /// The value of the generator `s` when the field is `Q` (root of `s - c`).
    fn rational_generator(&self) -> Option<Rational> {
        if self.degree() == 1 {
            Some(-self.min_poly[0].clone())
        } else {
            None
        }
    }

    pub fn zero(self: &Arc<Self>) -> NumberFieldElem {
        NumberFieldElem { field: Arc::clone(self), coords: vec![Rational::zero(); self.degree()] }
    }

    pub fn one(self: &Arc<Self>) -> NumberFieldElem {
        self.from_rational(Rational::one())
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> NumberFieldElem {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(self: &Arc<Self>, r: Rational) -> NumberFieldElem {
        let mut e = self.zero();
        e.coords[0] = r;
        e
    }

    /// The power-basis generator `s`.
    pub fn generator(self: &Arc<Self>) -> NumberFieldElem {
        if let Some(g) = self.rational_generator() {
            return self.from_rational(g);
        }
        let mut e = self.zero();
        e.coords[1] = Rational::one();
        e
    }

    /// Element from power-basis coordinates (padded or reduced as needed).
    pub fn from_coords(self: &Arc<Self>, coords: &[Rational]) -> NumberFieldElem {
        let mut c = coords.to_vec();
        self.reduce_in_place(&mut c);
        NumberFieldElem { field: Arc::clone(self), coords: c }
    }

    /// Rational value of an element of a degree-one field.
    pub fn to_rational(&self, x: &NumberFieldElem) -> Option<Rational> {
        if self.degree() == 1 {
            Some(x.coords[0].clone())
        } else if x.coords[1..].iter().all(|c| c.is_zero()) {
            Some(x.coords[0].clone())
        } else {
            None
        }
    }

    fn reduce_in_place(&self, c: &mut Vec<Rational>) {
        let d = self.degree();
        if d == 1 {
            // s = g is rational: collapse every power of s onto the constant
            let g = self.rational_generator().unwrap();
            let mut acc = Rational::zero();
            let mut pw = Rational::one();
            for x in c.iter() {
                acc += x * &pw;
                pw *= &g;
            }
            c.clear();
            c.push(acc);
            return;
        }
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = c.len() - d;
            for (i, m) in self.min_poly[..d].iter().enumerate() {
                c[base + i] -= &top * m;
            }
        }
        c.resize(d, Rational::zero());
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rationals() {
            return write!(f, "Q");
        }
        write!(f, "Q[s]/(")?;
        let mut first = true;
        for (k, c) in self.min_poly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{}*s^{}", rat_to_string(c), k)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Element of a [`NumberField`] in power-basis coordinates.
#[derive(Clone)]
pub struct NumberFieldElem {
    field: FieldRef,
    coords: Vec<Rational>,
}

impl PartialEq for NumberFieldElem {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coords == other.coords
    }
}

impl Eq for NumberFieldElem {}

pub(crate) fn same_field(a: &FieldRef, b: &FieldRef) -> bool {
    Arc::ptr_eq(a, b) || a.min_poly == b.min_poly
}

impl NumberFieldElem {
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.field.to_rational(self)
    }

    pub fn to_i64(&self) -> Option<i64> {
        let r = self.to_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), ExactError> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self { field: Arc::clone(&self.field), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Self { field: Arc::clone(&self.field), coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let d = self.field.degree();
        if d == 1 {
            return Ok(self.field.from_rational(&self.coords[0] * &other.coords[0]));
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.reduce_in_place(&mut prod);
        Ok(Self { field: Arc::clone(&self.field), coords: prod })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let inv = other.inv().ok_or(ExactError::DivisionByZero)?;
        self.try_mul(&inv)
    }

    /// Multiplicative inverse via the regular representation.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.field.degree();
        if d == 1 {
            return Some(self.field.from_rational(self.coords[0].recip()));
        }
        // columns: coordinates of self * s^j
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
        let s = self.field.generator();
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = cur.try_mul(&s).unwrap();
        }
        // solve M x = e_0 with M[i][j] = cols[j][i]
        let mut aug: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, piv);
            let p = aug[col][col].clone();
            for x in aug[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    let pivot_row = aug[col].clone();
                    for (x, y) in aug[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * y;
                    }
                }
            }
        }
        let coords = aug.into_iter().map(|row| row[d].clone()).collect();
        Some(Self { field: Arc::clone(&self.field), coords })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&NumberFieldElem> for &NumberFieldElem {
            type Output = NumberFieldElem;
            fn $m(self, rhs: &NumberFieldElem) -> NumberFieldElem {
                self.$try(rhs).expect("mixed-field arithmetic")
            }
        }
        impl $tr for NumberFieldElem {
            type Output = NumberFieldElem;
            fn $m(self, rhs: NumberFieldElem) -> NumberFieldElem {
                (&self).$try(&rhs).expect("mixed-field arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> NumberFieldElem {
        NumberFieldElem { field: Arc::clone(&self.field), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> NumberFieldElem {
        -&self
    }
}

impl fmt::Display for NumberFieldElem {
    /// Sum of `a/b` and `a/b*s^j` terms; `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{}", rat_to_string(c))?;
            match j {
                0 => {}
                1 => write!(f, "*s")?,
                _ => write!(f, "*s^{}", j)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Ring for FieldRef {
    type Elem = NumberFieldElem;

    fn zero(&self) -> NumberFieldElem {
        NumberField::zero(self)
    }
    fn one(&self) -> NumberFieldElem {
        NumberField::one(self)
    }
    fn from_i64(&self, n: i64) -> NumberFieldElem {
        self.from_int(n)
    }
    fn add(&self, a: &NumberFieldElem, b: &NumberFieldElem) -> NumberFieldElem {
        a + b
    }
    fn sub(&self, a: &NumberFieldElem, b: &NumberFieldElem) -> NumberFieldElem {
        a - b
    }
    fn mul(&self, a: &NumberFieldElem, b: &NumberFieldElem) -> NumberFieldElem {
        a * b
    }
    fn neg(&self, a: &NumberFieldElem) -> NumberFieldElem {
        -a
    }
    fn is_zero(&self, a: &NumberFieldElem) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &NumberFieldElem) -> Option<NumberFieldElem> {
        a.inv()
    }
    fn contains(&self, a: &NumberFieldElem) -> bool {
        same_field(self, &a.field)
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

/// Minimal polynomial of `2cos(2 pi / m)` with integer coefficients,
/// constant term first.
pub(crate) fn real_cyclotomic_poly(m: u32) -> Vec<i64> {
    match m {
        1 => return vec![-2, 1],
        2 => return vec![2, 1],
        _ => {}
    }
    // Phi_m is palindromic of even degree 2k: Phi_m(z) = z^k Psi(z + 1/z).
    let phi = super::cyclotomic::cyclotomic_polynomial(m);
    let k = (phi.len() - 1) / 2;
    // work with the symmetric coefficients c_j of z^j + z^-j, j = 0..k
    let mut sym: Vec<i64> = (0..=k).map(|j| phi[k + j]).collect();
    let mut psi = vec![0i64; k + 1];
    // peel off the top power: (z + 1/z)^j = sum binom(j,i) z^{j-2i}
    for j in (0..=k).rev() {
        let c = sym[j];
        psi[j] = c;
        if c == 0 {
            continue;
        }
        for i in 0..=j {
            let e = j as i64 - 2 * i as i64;
            if e < 0 {
                continue;
            }
            let b = binom(j as i64, i as i64);
            // coefficient of z^e (e > 0) in sym form; the e == 0 term counts once
            sym[e as usize] -= c * b;
        }
    }
    psi
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Returns a rational factor of a monic polynomial of degree at most 4
/// (constant term first), rendered as text, or `None` if irreducible.
fn find_rational_factor(monic: &[Rational]) -> Option<String> {
    let d = monic.len() - 1;
    if d == 1 {
        return None;
    }
    // y = D x turns f into a monic integer polynomial g
    let den = monic.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g: Vec<BigInt> = (0..=d)
        .map(|i| {
            let scaled = &monic[i] * Rational::from_integer(num_traits::pow(den.clone(), d - i));
            scaled.to_integer()
        })
        .collect();
    let den_r = Rational::from_integer(den.clone());
    let eval = |y: &BigInt| -> BigInt {
        g.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
    };
    let c0 = g[0].clone();
    if c0.is_zero() {
        return Some("1/1*t^1".to_string());
    }
    let divisors = integer_divisors(&c0);
    for dv in &divisors {
        for cand in [dv.clone(), -dv.clone()] {
            if eval(&cand).is_zero() {
                let root = Rational::from_integer(cand) / &den_r;
                return Some(format!("1/1*t^1+{}*t^0", rat_to_string(&-root)));
            }
        }
    }
    if d == 4 {
        // (y^2 + a y + b)(y^2 + c y + e) = y^4 + g3 y^3 + g2 y^2 + g1 y + g0
        for b in divisors.iter().flat_map(|x| [x.clone(), -x.clone()]) {
            let e = &c0 / &b;
            // a + c = g3, ac = g2 - b - e, a e + b c = g1
            let s = g[3].clone();
            let p = &g[2] - &b - &e;
            let disc = &s * &s - BigInt::from(4) * &p;
            if disc.is_negative() {
                continue;
            }
            let r = disc.sqrt();
            if &r * &r != disc {
                continue;
            }
            for root in [r.clone(), -r.clone()] {
                let two_a = &s + &root;
                if two_a.is_odd() {
                    continue;
                }
                let a = two_a / 2;
                let c = &s - &a;
                if &a * &e + &b * &c == g[1] {
                    let a_x = Rational::from_integer(a) / &den_r;
                    let b_x = Rational::from_integer(b.clone()) / (&den_r * &den_r);
                    return Some(format!(
                        "1/1*t^2+{}*t^1+{}*t^0",
                        rat_to_string(&a_x),
                        rat_to_string(&b_x)
                    ));
                }
            }
        }
    }
    None
}

fn integer_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let other = &n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn quadratic_field_arithmetic() {
        let k = NumberField::quadratic(2).unwrap();
        let s = k.generator();
        assert_eq!(&s * &s, k.from_int(2));
        let inv = s.inv().unwrap();
        assert_eq!(&inv * &s, k.one());
        assert_eq!(inv.coords(), &[rat(0, 1), rat(1, 2)]);
    }

    #[test]
    fn reducible_rejected_with_factor() {
        let err = NumberField::from_rational_coeffs(&[rat(-1, 1), rat(0, 1), rat(1, 1)]).unwrap_err();
        match err {
            ExactError::Reducible { factor } => assert!(factor.contains("t^1"), "{factor}"),
            e => panic!("unexpected {e:?}"),
        }
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2), no rational roots
        let err = NumberField::from_rational_coeffs(&[rat(4, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert!(matches!(err, Err(ExactError::Reducible { .. })));
        // x^4 - 2 is irreducible
        assert!(NumberField::from_rational_coeffs(&[rat(-2, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]).is_ok());
        // non-integral coefficients: x^2 - 1/4 = (x - 1/2)(x + 1/2)
        assert!(NumberField::from_rational_coeffs(&[rat(-1, 4), rat(0, 1), rat(1, 1)]).is_err());
    }

    #[test]
    fn real_cyclotomic_polys() {
        assert_eq!(real_cyclotomic_poly(3), vec![1, 1]); // 2cos(2pi/3) = -1
        assert_eq!(real_cyclotomic_poly(4), vec![0, 1]);
        assert_eq!(real_cyclotomic_poly(6), vec![-1, 1]);
        assert_eq!(real_cyclotomic_poly(5), vec![-1, 1, 1]);
        assert_eq!(real_cyclotomic_poly(8), vec![-2, 0, 1]);
        assert_eq!(real_cyclotomic_poly(7), vec![-1, -2, 1, 1]);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = NumberField::quadratic(2).unwrap().generator();
        let b = NumberField::quadratic(3).unwrap().generator();
        assert!(matches!(a.try_add(&b), Err(ExactError::FieldMismatch { .. })));
    }
}
