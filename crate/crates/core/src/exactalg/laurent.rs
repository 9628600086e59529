use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Laurent polynomial in one variable with machine-integer coefficients.
///
/// Stored densely from the lowest nonzero exponent; the zero polynomial has
/// no coefficients. Kazhdan–Lusztig polynomials, structure constants of the
/// `C'` basis and generic Hecke coefficients all fit comfortably in `i64`
/// at the ranks handled here; overflow is checked in debug builds.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: i64, exp: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![c] }
    }

    /// Builds from `(coefficient, exponent)` pairs.
    pub fn from_terms(terms: &[(i64, i32)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(c, e)| acc + Self::monomial(c, e))
    }

    /// Ordinary polynomial `c0 + c1 x + ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self { low: 0, coeffs: coeffs.to_vec() };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i32 - 1)
        }
    }

    /// Lowest exponent, `None` for zero.
    pub fn low_degree(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.low)
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let i = exp - self.low;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    /// Substitutes `x -> x^k` (`k` may be negative).
    pub fn substitute_power(&self, k: i32) -> Self {
        self.terms()
            .fold(Self::zero(), |acc, (e, c)| acc + Self::monomial(c, e * k))
    }

    /// Bar involution `x -> x^{-1}`.
    pub fn bar(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn shift(&self, by: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn eval_i64(&self, x: i64) -> i64 {
        assert!(x != 0 || self.low >= 0, "negative power of zero");
        self.terms().fold(0i64, |acc, (e, c)| {
            let p = if e >= 0 { x.pow(e as u32) } else { panic!("eval_i64 needs non-negative exponents") };
            acc + c * p
        })
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    fn add_scaled(&mut self, other: &Self, sign: i64) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.scale(sign);
            return;
        }
        let low = self.low.min(other.low);
        let high = self.degree().unwrap().max(other.degree().unwrap());
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += sign * c;
        }
        self.low = low;
        self.coeffs = coeffs;
        self.normalize();
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, -1);
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = LaurentPoly { low: self.low + rhs.low, coeffs };
        p.normalize();
        p
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(f, "{}", a)?,
                _ => {
                    if a != 1 {
                        write!(f, "{}*", a)?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{}", e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_normalization() {
        let a = LaurentPoly::from_terms(&[(1, -1), (1, 1)]);
        let b = LaurentPoly::from_terms(&[(1, -1), (-1, 1)]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!((&a - &a).degree(), None);
        let p = &a * &b;
        assert_eq!(p, LaurentPoly::from_terms(&[(1, -2), (-1, 2)]));
        assert_eq!(a.bar(), a);
        assert_eq!(LaurentPoly::from_coeffs(&[1, 1]).to_string(), "1 + q");
    }
}
