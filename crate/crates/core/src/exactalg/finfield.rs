use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::error::ExactError;
use super::rational::is_prime;
use super::ring::Ring;

/// The finite field `F_{p^r}` with `p^r <= 2^16`.
///
/// Elements are `u32` codes `c_0 + c_1 p + ... + c_{r-1} p^{r-1}` holding the
/// coordinates with respect to `1, x, ..., x^{r-1}` where `x` is a root of
/// the defining polynomial. The defining polynomial is the first monic
/// polynomial (in code order of its lower coefficients) for which `x` is
/// primitive, so multiplication runs through exp/log tables.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    r: u32,
    size: u32,
    /// Monic defining polynomial, constant term first (length `r + 1`).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

pub type FfRef = Arc<FiniteField>;

const ADD_TABLE_LIMIT: u32 = 256;

impl FiniteField {
    pub fn new(p: u32, r: u32) -> Result<FfRef, ExactError> {
        if !is_prime(p as u64) {
            return Err(ExactError::NotPrime(p));
        }
        if r == 0 {
            return Err(ExactError::FieldTooLarge { ell: p, r });
        }
        let size = (p as u64).checked_pow(r).filter(|&s| s <= 1 << 16).ok_or(ExactError::FieldTooLarge { ell: p, r })? as u32;
        let (modulus, mut exp) = find_primitive_modulus(p, r, size);
        // One wrap-around entry so that `exp[1]` exists even for F_2.
        exp.push(exp[0]);
        let mut log = vec![0u32; size as usize];
        for (i, &e) in exp.iter().enumerate().take(size as usize - 1) {
            log[e as usize] = i as u32;
        }
        let mut f = FiniteField { p, r, size, modulus, exp, log, neg: Vec::new(), add_table: None };
        f.neg = (0..size).map(|a| f.neg_slow(a)).collect();
        if size <= ADD_TABLE_LIMIT && r > 1 {
            let mut t = vec![0u16; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = f.add_slow(a, b) as u16;
                }
            }
            f.add_table = Some(t);
        }
        Ok(Arc::new(f))
    }

    pub fn prime(p: u32) -> Result<FfRef, ExactError> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Primitive element (the class of `x`).
    pub fn primitive(&self) -> u32 {
        self.exp[1]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.r == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if self.p == 2 {
            return a ^ b;
        }
        match &self.add_table {
            Some(t) => t[(a * self.size + b) as usize] as u32,
            None => self.add_slow(a, b),
        }
    }

    fn add_slow(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_slow(&self, mut a: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.r == 1 {
            return a * b % self.p;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        let n = self.size - 1;
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.size - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        Some(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0u32, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn coords(&self, mut a: u32) -> Vec<u32> {
        (0..self.r)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u32 {
        let n = self.size - 1;
        n / gcd(n, self.log[a as usize])
    }

    /// Evaluates a polynomial with coefficients in this field (constant first).
    pub fn eval_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0u32, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn element(self: &Arc<Self>, value: u32) -> FiniteFieldElem {
        assert!(value < self.size, "element code out of range");
        FiniteFieldElem { field: Arc::clone(self), value }
    }

    pub fn same_as(&self, other: &FiniteField) -> bool {
        self.p == other.p && self.r == other.r
    }

    pub fn label(&self) -> String {
        if self.r == 1 {
            format!("F{}", self.p)
        } else {
            format!("F{}^{}", self.p, self.r)
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// First monic degree-`r` polynomial over `F_p` whose root generates the
/// multiplicative group, with its exp table.
fn find_primitive_modulus(p: u32, r: u32, size: u32) -> (Vec<u32>, Vec<u32>) {
    if r == 1 {
        for g in 1..p.max(2) {
            let mut exp = Vec::with_capacity(size as usize - 1);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..size - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = x * g % p;
            }
            if ok && x == 1 {
                let exp = if p == 2 { vec![1] } else { exp };
                return (vec![(p - g) % p, 1], exp);
            }
        }
        unreachable!("every prime field has a primitive root");
    }
    for code in 1..size {
        let mut m: Vec<u32> = Vec::with_capacity(r as usize + 1);
        let mut c = code;
        for _ in 0..r {
            m.push(c % p);
            c /= p;
        }
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        if let Some(exp) = try_exp_table(p, r, size, &m) {
            return (m, exp);
        }
    }
    unreachable!("a primitive polynomial exists in every degree");
}

fn try_exp_table(p: u32, r: u32, size: u32, m: &[u32]) -> Option<Vec<u32>> {
    let r = r as usize;
    let mut cur = vec![0u32; r];
    cur[0] = 1;
    let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    let mut exp = Vec::with_capacity(size as usize - 1);
    for i in 0..size - 1 {
        let code = encode(&cur);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // multiply by x and reduce with x^r = -(m_0 + ... + m_{r-1} x^{r-1})
        let top = cur[r - 1];
        for k in (1..r).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for k in 0..r {
                cur[k] = (cur[k] + (p - top) * m[k] % p) % p;
            }
        }
    }
    if encode(&cur) == 1 {
        Some(exp)
    } else {
        None
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Embedding `F_{p^r} -> F_{p^R}` for `r | R`.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    from: FfRef,
    to: FfRef,
    image_of_generator: u32,
}

impl FieldEmbedding {
    pub fn new(from: &FfRef, to: &FfRef) -> Result<Self, ExactError> {
        if from.p != to.p || to.r % from.r != 0 {
            return Err(ExactError::ResidueDegree { residue: from.r, target: to.r });
        }
        let image = (0..to.size)
            .find(|&y| to.eval_poly(&from.modulus, y) == 0)
            .expect("defining polynomial splits in the larger field");
        Ok(Self { from: Arc::clone(from), to: Arc::clone(to), image_of_generator: image })
    }

    pub fn source(&self) -> &FfRef {
        &self.from
    }

    pub fn target(&self) -> &FfRef {
        &self.to
    }

    pub fn map(&self, a: u32) -> u32 {
        if self.from.r == 1 {
            return a;
        }
        self.to.eval_poly(&self.from.coords(a), self.image_of_generator)
    }
}

/// Finite-field element carrying its field.
#[derive(Clone)]
pub struct FiniteFieldElem {
    field: FfRef,
    value: u32,
}

impl FiniteFieldElem {
    pub fn field(&self) -> &FfRef {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<Self> {
        FiniteField::inv(&self.field, self.value).map(|v| self.field.element(v))
    }

    fn check(&self, other: &Self) {
        assert!(self.field.same_as(&other.field), "mixed-field arithmetic");
    }
}

impl PartialEq for FiniteFieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.value == other.value
    }
}

impl Eq for FiniteFieldElem {}

impl fmt::Debug for FiniteFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field.label())
    }
}

impl fmt::Display for FiniteFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! ff_op {
    ($tr:ident, $m:ident) => {
        impl $tr<&FiniteFieldElem> for &FiniteFieldElem {
            type Output = FiniteFieldElem;
            fn $m(self, rhs: &FiniteFieldElem) -> FiniteFieldElem {
                self.check(rhs);
                FiniteFieldElem { field: Arc::clone(&self.field), value: FiniteField::$m(&self.field, self.value, rhs.value) }
            }
        }
        impl $tr for FiniteFieldElem {
            type Output = FiniteFieldElem;
            fn $m(self, rhs: FiniteFieldElem) -> FiniteFieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}

ff_op!(Add, add);
ff_op!(Sub, sub);
ff_op!(Mul, mul);

impl Neg for &FiniteFieldElem {
    type Output = FiniteFieldElem;
    fn neg(self) -> FiniteFieldElem {
        FiniteFieldElem { field: Arc::clone(&self.field), value: FiniteField::neg(&self.field, self.value) }
    }
}

impl Ring for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        FiniteField::from_int(self, n)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::add(self, *a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::sub(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::mul(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        FiniteField::neg(self, *a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        FiniteField::inv(self, *a)
    }
    fn contains(&self, a: &u32) -> bool {
        *a < self.size
    }
    fn describe(&self) -> String {
        self.label()
    }
}
