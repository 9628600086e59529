//! Dense matrices over a [`Ring`] context, plus fast kernels for finite fields.

use super::finfield::FiniteField;
use super::ring::Ring;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<E> = rows.into_iter().flatten().collect();
        Self::from_vec(r, c, data)
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: FnMut(&E) -> T,
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<F, T: Clone, Er>(&self, f: F) -> Result<Matrix<T>, Er>
    where
        F: FnMut(&E) -> Result<T, Er>,
    {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    /// Sub-matrix with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self { rows: rows.len(), cols: cols.len(), data }
    }
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut out = Matrix::zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if ring.is_zero(y) {
                    continue;
                }
                let t = ring.add(out.get(i, j), &ring.mul(x, y));
                out.set(i, j, t);
            }
        }
    }
    out
}

pub fn mat_add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect() }
}

pub fn mat_sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| ring.sub(x, y)).collect() }
}

pub fn mat_scale<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

pub fn mat_trace<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    (0..a.rows.min(a.cols)).fold(ring.zero(), |acc, i| ring.add(&acc, a.get(i, i)))
}

pub fn mat_is_zero<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.data.iter().all(|x| ring.is_zero(x))
}

/// Reduced row echelon form over a field; returns pivot columns.
pub fn row_reduce<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !ring.is_zero(m.get(i, c))) else { continue };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = ring.inv(m.get(r, c)).expect("ring is a field");
        for j in 0..m.cols {
            let v = ring.mul(&inv, m.get(r, j));
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || ring.is_zero(m.get(i, c)) {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in 0..m.cols {
                let v = ring.sub(m.get(i, j), &ring.mul(&f, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    let mut a = m.clone();
    row_reduce(ring, &mut a).len()
}

/// Basis of the right null space `{x : m x = 0}` as column vectors.
pub fn nullspace<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
    let mut a = m.clone();
    let pivots = row_reduce(ring, &mut a);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ring.zero(); m.cols];
            v[f] = ring.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ring.neg(a.get(r, f));
            }
            v
        })
        .collect()
}

pub fn inverse<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(ring, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, ring.one());
    }
    let pivots = row_reduce(ring, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(aug.select(&rows, &cols))
}

pub fn determinant<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    assert!(m.is_square());
    let n = m.rows;
    let mut a = m.clone();
    let mut det = ring.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !ring.is_zero(a.get(i, c))) else { return ring.zero() };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = ring.neg(&det);
        }
        det = ring.mul(&det, a.get(c, c));
        let inv = ring.inv(a.get(c, c)).expect("ring is a field");
        for i in c + 1..n {
            if ring.is_zero(a.get(i, c)) {
                continue;
            }
            let f = ring.mul(a.get(i, c), &inv);
            for j in c..n {
                let v = ring.sub(a.get(i, j), &ring.mul(&f, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

pub fn mat_vec<R: Ring>(ring: &R, m: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(m.cols, v.len());
    (0..m.rows)
        .map(|i| m.row(i).iter().zip(v).fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b))))
        .collect()
}

/// Finite-field matrix product with a fast path for prime fields.
pub fn ff_mat_mul(f: &FiniteField, a: &Matrix<u32>, b: &Matrix<u32>) -> Matrix<u32> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let (n, k, m) = (a.rows, a.cols, b.cols);
    let mut data = vec![0u32; n * m];
    if f.degree() == 1 {
        let p = f.characteristic() as u64;
        // Accumulate in u64, reducing before overflow.
        let bound = (u64::MAX / ((p - 1) * (p - 1)).max(1)).min(1 << 20) as usize;
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut since = 0usize;
            for t in 0..k {
                let x = a.data[i * k + t] as u64;
                if x == 0 {
                    continue;
                }
                let brow = &b.data[t * m..(t + 1) * m];
                for (slot, &y) in acc.iter_mut().zip(brow) {
                    *slot += x * y as u64;
                }
                since += 1;
                if since >= bound {
                    acc.iter_mut().for_each(|x| *x %= p);
                    since = 0;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                data[i * m + j] = (v % p) as u32;
            }
        }
    } else {
        for i in 0..n {
            for t in 0..k {
                let x = a.data[i * k + t];
                if x == 0 {
                    continue;
                }
                for j in 0..m {
                    let y = b.data[t * m + j];
                    if y != 0 {
                        data[i * m + j] = f.add(data[i * m + j], f.mul(x, y));
                    }
                }
            }
        }
    }
    Matrix { rows: n, cols: m, data }
}
