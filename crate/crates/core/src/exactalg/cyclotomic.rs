use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant first.
///
/// Uses `Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}`: multiply by the factors
/// with `mu = 1`, then divide exactly by those with `mu = -1`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            num = times_x_power_minus_one(&num, d as usize);
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            let mut den = vec![0i64; d as usize + 1];
            den[0] = -1;
            den[d as usize] = 1;
            num = exact_divide(&num, &den);
        }
    }
    num
}

fn mobius(mut m: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// `f * (x^d - 1)`.
fn times_x_power_minus_one(f: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; f.len() + d];
    for (i, &c) in f.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Element of `Z[zeta_n]`, stored in the power basis `1, zeta, ..., zeta^{phi(n)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u32,
    coords: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Self { n, coords: vec![0; euler_phi(n)] }
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.coords[0] = k;
        z
    }

    /// `zeta_n^k`.
    pub fn zeta_power(n: u32, k: i64) -> Self {
        let mut raw = vec![0i64; n as usize];
        raw[k.rem_euclid(n as i64) as usize] = 1;
        Self::from_raw(n, raw)
    }

    /// `sum_k mult[k] zeta_n^k` for `k = 0..n`.
    pub fn from_multiplicities(n: u32, mult: &[i64]) -> Self {
        assert_eq!(mult.len(), n as usize);
        Self::from_raw(n, mult.to_vec())
    }

    fn from_raw(n: u32, mut raw: Vec<i64>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        for k in (d..raw.len()).rev() {
            let c = raw[k];
            if c != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    raw[k - d + j] -= c * pj;
                }
            }
        }
        raw.resize(d, 0);
        Self { n, coords: raw }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The integer value if this element lies in `Z`.
    pub fn to_int(&self) -> Option<i64> {
        if self.coords.iter().skip(1).all(|&c| c == 0) {
            Some(self.coords[0])
        } else {
            None
        }
    }

    /// Galois action `zeta -> zeta^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        let mut raw = vec![0i64; self.n as usize];
        for (i, &c) in self.coords.iter().enumerate() {
            raw[((i as i64) * k).rem_euclid(n) as usize] += c;
        }
        Self::from_raw(self.n, raw)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { n: self.n, coords: self.coords.iter().map(|&c| c * k).collect() }
    }

    /// Exact division by an integer, if every coordinate is divisible.
    pub fn div_int(&self, k: i64) -> Option<Self> {
        if k == 0 || self.coords.iter().any(|&c| c % k != 0) {
            return None;
        }
        Some(Self { n: self.n, coords: self.coords.iter().map(|&c| c / k).collect() })
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &c) in self.coords.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
            re += c as f64 * a.cos();
            im += c as f64 * a.sin();
        }
        (re, im)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.n, o.n, "cyclotomic orders differ");
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: &Cyclotomic) -> Cyclotomic {
        self.check(o);
        Cyclotomic { n: self.n, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, o: &Cyclotomic) -> Cyclotomic {
        self.check(o);
        Cyclotomic { n: self.n, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: &Cyclotomic) -> Cyclotomic {
        self.check(o);
        let d = self.coords.len();
        let mut raw = vec![0i64; (2 * d).max(1)];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coords.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Cyclotomic::from_raw(self.n, raw)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.n),
                _ => format!("{c}*z{}^{i}", self.n),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
