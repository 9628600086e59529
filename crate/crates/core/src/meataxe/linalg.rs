//! Dense linear algebra over a [`FiniteField`] on plain `u32` vectors.

use crate::exactalg::matrix::{ff_mat_mul, Matrix};
use crate::exactalg::FiniteField;

/// `dst += c * src`.
#[inline]
pub fn axpy(f: &FiniteField, dst: &mut [u32], c: u32, src: &[u32]) {
    if c == 0 {
        return;
    }
    if f.degree() == 1 {
        let p = f.characteristic() as u64;
        let c = c as u64;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = ((*d as u64 + c * s as u64) % p) as u32;
            }
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = f.add(*d, f.mul(c, s));
            }
        }
    }
}

#[inline]
pub fn scale_in_place(f: &FiniteField, v: &mut [u32], c: u32) {
    for x in v.iter_mut() {
        *x = f.mul(*x, c);
    }
}

/// `m v` for a column vector `v`.
pub fn mat_vec(f: &FiniteField, m: &Matrix<u32>, v: &[u32]) -> Vec<u32> {
    let n = m.cols();
    debug_assert_eq!(n, v.len());
    if f.degree() == 1 {
        let p = f.characteristic() as u64;
        (0..m.rows())
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in m.row(i).iter().zip(v) {
                    acc += *a as u64 * *b as u64;
                    if acc >= 1 << 62 {
                        acc %= p;
                    }
                }
                (acc % p) as u32
            })
            .collect()
    } else {
        (0..m.rows())
            .map(|i| m.row(i).iter().zip(v).fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }
}

pub fn mat_mul(f: &FiniteField, a: &Matrix<u32>, b: &Matrix<u32>) -> Matrix<u32> {
    ff_mat_mul(f, a, b)
}

pub fn identity(n: usize) -> Matrix<u32> {
    let mut m = Matrix::filled(n, n, 0u32);
    for i in 0..n {
        m.set(i, i, 1);
    }
    m
}

pub fn mat_add_scaled(f: &FiniteField, acc: &mut Matrix<u32>, c: u32, m: &Matrix<u32>) {
    for i in 0..m.rows() {
        let src = m.row(i).to_vec();
        axpy(f, acc.row_mut(i), c, &src);
    }
}

/// Subspace kept in semi-echelon form: every stored row has a leading 1 at
/// its pivot and zeros at the pivots of earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub dim: usize,
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, f: &FiniteField, v: &mut [u32]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                axpy(f, v, f.neg(c), row);
            }
        }
    }

    /// Reduces `v` and inserts it if it is new; returns whether it was added.
    pub fn insert(&mut self, f: &FiniteField, mut v: Vec<u32>) -> bool {
        self.reduce(f, &mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(v[p]).expect("nonzero");
        scale_in_place(f, &mut v, inv);
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Converts to reduced echelon form, sorted by pivot.
    pub fn into_reduced(mut self, f: &FiniteField) -> Self {
        let k = self.rows.len();
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let c = self.rows[j][self.pivots[i]];
                if c != 0 {
                    let src = self.rows[i].clone();
                    axpy(f, &mut self.rows[j], f.neg(c), &src);
                }
            }
        }
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        Self {
            dim: self.dim,
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
            pivots: idx.iter().map(|&i| self.pivots[i]).collect(),
        }
    }
}

/// Right kernel `{x : m x = 0}` as a list of column vectors.
pub fn kernel(f: &FiniteField, m: &Matrix<u32>) -> Vec<Vec<u32>> {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(f, m.row(i).to_vec());
        if e.len() == m.cols() {
            break;
        }
    }
    let e = e.into_reduced(f);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&j| {
            let mut v = vec![0u32; n];
            v[j] = 1;
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = f.neg(row[j]);
            }
            v
        })
        .collect()
}

pub fn rank(f: &FiniteField, m: &Matrix<u32>) -> usize {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(f, m.row(i).to_vec());
    }
    e.len()
}

pub fn inverse(f: &FiniteField, m: &Matrix<u32>) -> Option<Matrix<u32>> {
    crate::exactalg::matrix::inverse(f, m)
}

/// Characteristic polynomial (monic, constant first) via Hessenberg reduction.
pub fn char_poly(f: &FiniteField, m: &Matrix<u32>) -> Vec<u32> {
    let n = m.rows();
    let mut h: Vec<Vec<u32>> = m.to_rows();
    // Reduce to upper Hessenberg form by similarity transformations.
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = f.inv(h[k + 1][k]).expect("nonzero pivot");
        for i in k + 2..n {
            let c = f.mul(h[i][k], inv);
            if c == 0 {
                continue;
            }
            // row_i -= c row_{k+1}; col_{k+1} += c col_i
            let src = h[k + 1].clone();
            axpy(f, &mut h[i], f.neg(c), &src);
            for row in h.iter_mut() {
                let add = f.mul(c, row[i]);
                row[k + 1] = f.add(row[k + 1], add);
            }
        }
    }
    // Recurrence on leading principal submatrices.
    let mut polys: Vec<Vec<u32>> = vec![vec![1]];
    for k in 0..n {
        // p_{k+1} = (x - h_kk) p_k - Σ_{i<k} h_{i,k} (Π_{j=i+1..k} h_{j,j-1}) p_i
        let mut next = vec![0u32; k + 2];
        for (d, &c) in polys[k].iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[k][k], c));
        }
        let mut prod = 1u32;
        for i in (0..k).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let c = f.mul(h[i][k], prod);
            if c == 0 {
                continue;
            }
            for (d, &pc) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(c, pc));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// `p(m)` for a polynomial `p` (constant first).
pub fn eval_poly_matrix(f: &FiniteField, p: &[u32], m: &Matrix<u32>) -> Matrix<u32> {
    let n = m.rows();
    let mut acc = Matrix::filled(n, n, 0u32);
    for &c in p.iter().rev() {
        acc = mat_mul(f, &acc, m);
        for i in 0..n {
            let v = f.add(*acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}
