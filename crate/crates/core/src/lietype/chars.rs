//! Ordinary character tables by Dixon's method.
//!
//! Class multiplication coefficients give commuting matrices whose common
//! eigenvectors are the central characters `ω_χ(C) = |C| χ(g_C) / χ(1)`.
//! Everything is computed modulo a prime `p ≡ 1 (mod exp G)`, where all
//! character values live, and then lifted to exact cyclotomic integers from
//! the eigenvalue multiplicities of each element.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactalg::Cyclotomic;

use super::{FiniteMatrixGroup, LieTypeError};

/// Largest group order accepted by [`character_table`].
pub const CHARACTER_TABLE_CAP: usize = 1000;

/// Irreducible characters as class functions with values in `Z[ζ_e]`,
/// `e` the exponent of the group. Classes follow [`FiniteMatrixGroup::classes`].
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub group: String,
    pub exponent: u32,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub degrees: Vec<i64>,
    #[serde(serialize_with = "serialize_values")]
    pub values: Vec<Vec<Cyclotomic>>,
}

fn serialize_values<S: serde::Serializer>(values: &[Vec<Cyclotomic>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for row in values {
        let text: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        seq.serialize_element(&text)?;
    }
    seq.end()
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][class]
    }

    /// `(1/|G|) Σ_C |C| a(C) conj(b(C))`, if it is a rational integer.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Option<i64> {
        let order: usize = self.class_sizes.iter().sum();
        let mut acc = Cyclotomic::zero(self.exponent);
        for ((x, y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            acc = &acc + &(x * &y.conj()).scale(size as i64);
        }
        acc.div_int(order as i64)?.to_int()
    }

    /// Integer-valued class function lifted into the table's cyclotomic field.
    pub fn class_function(&self, values: &[i64]) -> Vec<Cyclotomic> {
        values.iter().map(|&v| Cyclotomic::from_int(self.exponent, v)).collect()
    }

    /// Index of the trivial character.
    pub fn trivial(&self) -> usize {
        (0..self.len())
            .find(|&i| self.values[i].iter().all(|v| v.to_int() == Some(1)))
            .expect("table contains the trivial character")
    }

    /// Exact row orthogonality `<χ_i, χ_j> = δ_ij`.
    pub fn rows_orthonormal(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.inner_product(&self.values[i], &self.values[j]) == Some(i64::from(i == j))))
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2 sqrt(order)` and `p ∤ order`.
fn dixon_prime(e: u64, order: u64) -> u64 {
    let mut p = e + 1;
    while !(is_prime(p) && p * p > 4 * order && order % p != 0) {
        p += e;
    }
    p
}

/// An element of multiplicative order exactly `e` modulo `p`.
fn root_of_unity(e: u64, p: u64) -> u64 {
    let prime_factors: Vec<u64> = (2..=e).filter(|d| e % d == 0 && is_prime(*d)).collect();
    (2..p)
        .map(|g| pow_mod(g, (p - 1) / e, p))
        .find(|&z| prime_factors.iter().all(|&r| pow_mod(z, e / r, p) != 1))
        .expect("p ≡ 1 mod e has a primitive e-th root of unity")
}

/// Basis (as columns in `coords` over the ambient space) of the kernel of an
/// `m x m` matrix mod `p`.
fn kernel_mod(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        m[r].iter_mut().for_each(|x| *x = *x * inv % p);
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let piv = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&piv) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][free]) % p;
            }
            v
        })
        .collect()
}

/// Full ordinary character table; errors above [`CHARACTER_TABLE_CAP`].
pub fn character_table(g: &FiniteMatrixGroup) -> Result<CharacterTable, LieTypeError> {
    let order = g.order();
    if order > CHARACTER_TABLE_CAP {
        return Err(LieTypeError::SizeCap { order, cap: CHARACTER_TABLE_CAP });
    }
    let classes = g.classes();
    let r = classes.len();
    let e = g.exponent() as u64;
    let p = dixon_prime(e, order as u64);

    // a[j][l][k] = #{x in C_j : x^{-1} z_k in C_l}, z_k the representative of C_k.
    let mut coeff = vec![vec![vec![0u64; r]; r]; r];
    for (k, ck) in classes.iter().enumerate() {
        let z = ck.representative;
        for (j, cj) in classes.iter().enumerate() {
            for &x in &cj.elements {
                let y = g.multiply(g.inverse(x), z);
                coeff[j][g.class_of(y)][k] += 1;
            }
        }
    }

    // Split F_p^r into common eigenspaces of the matrices A_j = (a[j][l][k])_{l,k}.
    // A fixed pseudo-random combination of the class matrices usually has
    // distinct eigenvalues and splits everything in one pass; the individual
    // class matrices finish whatever it leaves together.
    let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
    let mut combined = vec![vec![0u64; r]; r];
    for a in &coeff {
        let c = rng.gen_range(1..p);
        for (row, arow) in combined.iter_mut().zip(a) {
            for (x, y) in row.iter_mut().zip(arow) {
                *x = (*x + c * y) % p;
            }
        }
    }
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|k| u64::from(i == k)).collect()).collect()];
    for a in std::iter::once(&combined).chain(&coeff) {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            // images A v for every basis vector v, then coordinates in the basis
            let images: Vec<Vec<u64>> =
                basis.iter().map(|v| (0..r).map(|l| (0..r).map(|k| a[l][k] * v[k]).sum::<u64>() % p).collect()).collect();
            let restricted = coordinates(&basis, &images, p)?;
            let mut found = 0;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|i| (0..d).map(|j| (restricted[i][j] + if i == j { p - lambda } else { 0 }) % p).collect())
                    .collect();
                let ker = kernel_mod(&shifted, p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| (0..r).map(|k| c.iter().zip(&basis).map(|(ci, b)| ci * b[k]).sum::<u64>() % p).collect())
                    .collect();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(LieTypeError::CharacterTable("class matrix is not diagonalizable mod p".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) || spaces.len() != r {
        return Err(LieTypeError::CharacterTable("class matrices do not separate the characters".into()));
    }

    let identity_class = g.class_of(g.identity());
    let inverse_class: Vec<usize> = classes.iter().map(|c| g.class_of(g.inverse(c.representative))).collect();
    let zeta = root_of_unity(e, p);
    let mut rows: Vec<(i64, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for space in spaces {
        let raw = &space[0];
        let norm = inv_mod(raw[identity_class], p);
        let omega: Vec<u64> = raw.iter().map(|x| x * norm % p).collect();
        // χ(1)^2 Σ_k ω_k ω_{k*} / |C_k| = |G|
        let s = (0..r).map(|k| omega[k] * omega[inverse_class[k]] % p * inv_mod(classes[k].size as u64, p) % p).sum::<u64>() % p;
        let target = order as u64 % p * inv_mod(s, p) % p;
        let degree = (1..=order as u64)
            .take_while(|d| d * d <= order as u64)
            .find(|d| d * d % p == target && order as u64 % d == 0)
            .ok_or_else(|| LieTypeError::CharacterTable("no admissible degree".into()))?;
        let chi_mod: Vec<u64> =
            (0..r).map(|k| degree % p * omega[k] % p * inv_mod(classes[k].size as u64, p) % p).collect();
        let mut values = Vec::with_capacity(r);
        for c in classes {
            let o = c.order as u64;
            let step = e / o;
            let z_o = pow_mod(zeta, step, p);
            let mut mult = vec![0i64; e as usize];
            let mut total = 0;
            for i in 0..o {
                // multiplicity of ζ_o^i as an eigenvalue
                let mut acc = 0;
                for j in 0..o {
                    let cls = g.class_of(g.power(c.representative, j as usize));
                    acc = (acc + chi_mod[cls] * pow_mod(z_o, (o - (i * j) % o) % o, p)) % p;
                }
                let m = acc * inv_mod(o % p, p) % p;
                if m > degree {
                    return Err(LieTypeError::CharacterTable("eigenvalue multiplicity out of range".into()));
                }
                mult[(i * step) as usize] = m as i64;
                total += m;
            }
            if total != degree {
                return Err(LieTypeError::CharacterTable("eigenvalue multiplicities do not add up".into()));
            }
            values.push(Cyclotomic::from_multiplicities(e as u32, &mult));
        }
        rows.push((degree as i64, values));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| key(&b.1).cmp(&key(&a.1))));
    let table = CharacterTable {
        group: g.label(),
        exponent: e as u32,
        class_sizes: classes.iter().map(|c| c.size).collect(),
        class_orders: classes.iter().map(|c| c.order).collect(),
        degrees: rows.iter().map(|r| r.0).collect(),
        values: rows.into_iter().map(|r| r.1).collect(),
    };
    if !table.rows_orthonormal() {
        return Err(LieTypeError::CharacterTable("rows fail orthonormality".into()));
    }
    Ok(table)
}

/// Ordering key putting integer-valued characters with larger values first
/// (so the trivial character leads among linear ones).
fn key(values: &[Cyclotomic]) -> Vec<(bool, i64, Vec<i64>)> {
    values.iter().map(|v| (v.to_int().is_some(), v.to_int().unwrap_or(0), v.coords().to_vec())).collect()
}

fn coordinates(basis: &[Vec<u64>], images: &[Vec<u64>], p: u64) -> Result<Vec<Vec<u64>>, LieTypeError> {
    // Solve basis^T c = image for every image; returns the d x d matrix with
    // column j holding the coordinates of images[j].
    let d = basis.len();
    let r = basis[0].len();
    let mut out = vec![vec![0u64; d]; d];
    for (j, img) in images.iter().enumerate() {
        let mut aug: Vec<Vec<u64>> = (0..r)
            .map(|k| {
                let mut row: Vec<u64> = basis.iter().map(|b| b[k]).collect();
                row.push(img[k]);
                row
            })
            .collect();
        let ker = kernel_mod(&aug, p);
        let sol = ker
            .iter()
            .find(|v| v[d] != 0)
            .ok_or_else(|| LieTypeError::CharacterTable("eigenspace is not invariant".into()))?;
        let scale = inv_mod(p - sol[d], p);
        for i in 0..d {
            out[i][j] = sol[i] * scale % p;
        }
        aug.clear();
    }
    Ok(out)
}
