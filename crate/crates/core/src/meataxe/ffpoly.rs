//! Univariate polynomials over a finite field (constant term first) and
//! their factorisation into distinct irreducible factors.

use rand::Rng;

use crate::exactalg::FiniteField;

pub type FfPoly = Vec<u32>;

pub fn trim(p: &mut FfPoly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.len() == 1 && p[0] == 0 {
        p.clear();
    }
}

pub fn degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn sub(f: &FiniteField, a: &[u32], b: &[u32]) -> FfPoly {
    let n = a.len().max(b.len());
    let mut out: FfPoly =
        (0..n).map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0))).collect();
    trim(&mut out);
    out
}

pub fn mul(f: &FiniteField, a: &[u32], b: &[u32]) -> FfPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    trim(&mut out);
    out
}

/// `(quotient, remainder)` of `a` by nonzero `b`.
pub fn divrem(f: &FiniteField, a: &[u32], b: &[u32]) -> (FfPoly, FfPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: FfPoly = a.to_vec();
    trim(&mut r);
    let inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let Some(da) = degree(&r) else { return (Vec::new(), Vec::new()) };
    if da < db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; da - db + 1];
    for k in (0..=da - db).rev() {
        let c = f.mul(r[k + db], inv);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            r[k + j] = f.sub(r[k + j], f.mul(c, bj));
        }
    }
    trim(&mut q);
    r.truncate(db);
    trim(&mut r);
    (q, r)
}

pub fn rem(f: &FiniteField, a: &[u32], b: &[u32]) -> FfPoly {
    divrem(f, a, b).1
}

pub fn monic(f: &FiniteField, p: &[u32]) -> FfPoly {
    let Some(d) = degree(p) else { return Vec::new() };
    let inv = f.inv(p[d]).expect("nonzero");
    p[..=d].iter().map(|&c| f.mul(c, inv)).collect()
}

pub fn gcd(f: &FiniteField, a: &[u32], b: &[u32]) -> FfPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn mulmod(f: &FiniteField, a: &[u32], b: &[u32], m: &[u32]) -> FfPoly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &FiniteField, base: &[u32], mut e: u128, m: &[u32]) -> FfPoly {
    let mut result: FfPoly = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(f, &result, &b, m);
        }
        b = mulmod(f, &b, &b, m);
        e >>= 1;
    }
    result
}

/// Distinct monic irreducible factors of `p` of degree at most `max_degree`,
/// sorted by (degree, coefficients).
pub fn irreducible_factors<R: Rng>(f: &FiniteField, p: &[u32], max_degree: usize, rng: &mut R) -> Vec<FfPoly> {
    let mut rest = monic(f, p);
    let qsize = f.size() as u128;
    let x: FfPoly = vec![0, 1];
    let mut out = Vec::new();
    let mut xq = x.clone(); // x^{Q^d} mod rest
    let mut d = 0;
    while degree(&rest).unwrap_or(0) > 0 && d < max_degree {
        d += 1;
        if degree(&rest).unwrap() < d {
            break;
        }
        xq = powmod(f, &xq, qsize, &rest);
        let g = gcd(f, &rest, &sub(f, &xq, &x));
        if degree(&g).unwrap_or(0) == 0 {
            continue;
        }
        // Remove every copy of these factors.
        loop {
            let h = gcd(f, &rest, &g);
            if degree(&h).unwrap_or(0) == 0 {
                break;
            }
            rest = divrem(f, &rest, &h).0;
        }
        if degree(&rest).unwrap_or(0) > 0 {
            xq = rem(f, &xq, &rest);
        }
        let mut found = Vec::new();
        equal_degree_split(f, &g, d, rng, &mut found);
        found.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        out.extend(found);
    }
    out
}

fn equal_degree_split<R: Rng>(f: &FiniteField, g: &[u32], d: usize, rng: &mut R, out: &mut Vec<FfPoly>) {
    let n = degree(g).unwrap();
    if n == d {
        out.push(g.to_vec());
        return;
    }
    loop {
        let a: FfPoly = {
            let mut a: FfPoly = (0..n).map(|_| rng.gen_range(0..f.size())).collect();
            trim(&mut a);
            a
        };
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let h = if f.characteristic() == 2 {
            // trace map a + a^2 + ... + a^{2^{rd-1}}
            let k = f.degree() as usize * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..k {
                t = mulmod(f, &t, &t, g);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            let e = ((f.size() as u128).pow(d as u32) - 1) / 2;
            sub(f, &powmod(f, &a, e, g), &[1])
        };
        let c = gcd(f, g, &h);
        let dc = degree(&c).unwrap_or(0);
        if dc > 0 && dc < n {
            equal_degree_split(f, &c, d, rng, out);
            equal_degree_split(f, &divrem(f, g, &c).0, d, rng, out);
            return;
        }
    }
}

pub fn add(f: &FiniteField, a: &[u32], b: &[u32]) -> FfPoly {
    let n = a.len().max(b.len());
    let mut out: FfPoly =
        (0..n).map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0))).collect();
    trim(&mut out);
    out
}
