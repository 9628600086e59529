use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `l`-adic valuation of a nonzero rational; `None` for zero.
pub fn valuation(x: &Rational, ell: u32) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let l = BigInt::from(ell);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut v = 0i64;
        loop {
            let (q, r) = n.div_rem(&l);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    };
    Some(count(x.numer()) - count(x.denom()))
}

/// Canonical `a/b` rendering (denominator always present and positive).
pub fn rat_to_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Image of an `l`-integral rational in `F_l`.
pub(crate) fn rational_mod(x: &Rational, ell: u32) -> Option<u32> {
    let l = BigInt::from(ell);
    let d = x.denom().mod_floor(&l);
    if d.is_zero() {
        return None;
    }
    let n = x.numer().mod_floor(&l);
    let n: u64 = n.try_into().unwrap();
    let d: u64 = d.try_into().unwrap();
    let dinv = mod_pow(d, ell as u64 - 2, ell as u64);
    Some(((n * dinv) % ell as u64) as u32)
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
