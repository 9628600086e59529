//! Brute-force module oracles over prime fields.
//!
//! Nothing here calls into the meataxe: submodules are found by spinning
//! every vector of the module, and the full lattice is the closure of the
//! cyclic submodules under sums. Only practical for `p^dim` up to ~10^5.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cellblocks::exactalg::matrix::Matrix;

/// Square matrix acting on column vectors, entries reduced mod `p`.
pub type Mat = Vec<Vec<u64>>;

pub fn to_mat(m: &Matrix<u32>) -> Mat {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| *m.get(i, j) as u64).collect()).collect()
}

pub fn apply(m: &Mat, v: &[u64], p: u64) -> Vec<u64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b % p).sum::<u64>() % p).collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|b| a * b % p == 1).expect("nonzero residue")
}

/// Canonical reduced row echelon basis of the span of `vecs`.
pub fn rref(mut vecs: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = vecs.first().map_or(0, |v| v.len());
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut col = 0;
    while col < n && !vecs.is_empty() {
        if let Some(k) = vecs.iter().position(|v| v[col] != 0) {
            let mut piv = vecs.swap_remove(k);
            let inv = inv_mod(piv[col], p);
            piv.iter_mut().for_each(|x| *x = *x * inv % p);
            for v in vecs.iter_mut().chain(out.iter_mut()) {
                let c = v[col];
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(&piv) {
                        *x = (*x + (p - c) * y) % p;
                    }
                }
            }
            out.push(piv);
            vecs.retain(|v| v.iter().any(|&x| x != 0));
        }
        col += 1;
    }
    out.sort_by_key(|v| v.iter().position(|&x| x != 0));
    out
}

/// Coordinates of `v` in the (independent) list `basis`, if it lies in the span.
pub fn coords_in(basis: &[Vec<u64>], v: &[u64], p: u64) -> Option<Vec<u64>> {
    let k = basis.len();
    let n = v.len();
    // Solve Σ c_i basis_i = v: augmented n × (k+1) system.
    let mut rows: Vec<Vec<u64>> = (0..n).map(|r| {
        let mut row: Vec<u64> = basis.iter().map(|b| b[r]).collect();
        row.push(v[r]);
        row
    }).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..n).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        rows[r].iter_mut().for_each(|x| *x = *x * inv % p);
        for i in 0..n {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let piv = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&piv) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[k] != 0) {
        return None;
    }
    let mut out = vec![0; k];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][k];
    }
    Some(out)
}

fn spin(gens: &[Mat], seed: Vec<u64>, p: u64) -> Vec<Vec<u64>> {
    let mut span = rref(vec![seed.clone()], p);
    let mut queue = vec![seed];
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = apply(g, &v, p);
            let mut bigger = span.clone();
            bigger.push(w.clone());
            let bigger = rref(bigger, p);
            if bigger.len() > span.len() {
                span = bigger;
                queue.push(w);
            }
        }
    }
    span
}

fn all_vectors(dim: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(dim as u32);
    (1..total).map(move |mut k| {
        (0..dim).map(|_| {
            let d = k % p;
            k /= p;
            d
        }).collect()
    })
}

/// Every submodule, as canonical echelon bases (including `0` and the whole space).
pub fn submodules(gens: &[Mat], dim: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut cyclic: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    for v in all_vectors(dim, p) {
        // A cyclic submodule is determined by its generator up to scalars;
        // only spin vectors whose first nonzero coordinate is 1.
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            cyclic.insert(spin(gens, v, p));
        }
    }
    let mut all: BTreeSet<Vec<Vec<u64>>> = cyclic.clone();
    all.insert(Vec::new());
    loop {
        let current: Vec<_> = all.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for c in &cyclic {
                let mut both = a.clone();
                both.extend(c.iter().cloned());
                if all.insert(rref(both, p)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    all.into_iter().collect()
}

fn contains(big: &[Vec<u64>], small: &[Vec<u64>], p: u64) -> bool {
    small.iter().all(|v| coords_in(big, v, p).is_some())
}

/// Generator actions on the composition factors of a maximal chain of submodules.
pub fn composition_factors(gens: &[Mat], dim: usize, p: u64) -> Vec<Vec<Mat>> {
    let lattice = submodules(gens, dim, p);
    let mut cur: Vec<Vec<u64>> = Vec::new();
    let mut factors = Vec::new();
    while cur.len() < dim {
        let next = lattice
            .iter()
            .filter(|s| s.len() > cur.len() && contains(s, &cur, p))
            .min_by_key(|s| s.len())
            .expect("whole module contains every submodule")
            .clone();
        // Extend `cur` to a basis of `next`.
        let mut basis = cur.clone();
        let mut complement = Vec::new();
        for v in &next {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if rref(trial, p).len() > basis.len() {
                basis.push(v.clone());
                complement.push(v.clone());
            }
        }
        let k = cur.len();
        let f = complement.len();
        let action: Vec<Mat> = gens
            .iter()
            .map(|g| {
                let mut m = vec![vec![0u64; f]; f];
                for (j, c) in complement.iter().enumerate() {
                    let image = apply(g, c, p);
                    let co = coords_in(&basis, &image, p).expect("submodule is invariant");
                    for i in 0..f {
                        m[i][j] = co[k + i];
                    }
                }
                m
            })
            .collect();
        factors.push(action);
        cur = next;
    }
    factors
}

fn nullspace(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let red = rref(rows, p);
    let pivots: Vec<usize> = red.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (r, &pc) in red.iter().zip(&pivots) {
                v[pc] = (p - r[free]) % p;
            }
            v
        })
        .collect()
}

/// Whether two modules with the same generator count are isomorphic: searches
/// the whole intertwiner space `{X : X A_g = B_g X}` for an invertible element.
pub fn isomorphic(a: &[Mat], b: &[Mat], p: u64) -> bool {
    let d = a[0].len();
    if d != b[0].len() {
        return false;
    }
    // Unknown X[i][j] at index i*d + j. Equation entries (i,k) of X A - B X.
    let mut eqs = Vec::new();
    for (ag, bg) in a.iter().zip(b) {
        for i in 0..d {
            for k in 0..d {
                let mut row = vec![0u64; d * d];
                for j in 0..d {
                    row[i * d + j] = (row[i * d + j] + ag[j][k]) % p;
                    row[j * d + k] = (row[j * d + k] + p - bg[i][j]) % p;
                }
                eqs.push(row);
            }
        }
    }
    let basis = nullspace(eqs, d * d, p);
    let count = p.pow(basis.len() as u32);
    (1..count).any(|mut k| {
        let mut x = vec![0u64; d * d];
        for b in &basis {
            let c = k % p;
            k /= p;
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = (*xi + c * bi) % p;
            }
        }
        let rows: Vec<Vec<u64>> = x.chunks(d).map(|r| r.to_vec()).collect();
        rref(rows, p).len() == d
    })
}

/// Decomposition matrix computed from scratch: columns are the distinct
/// composition factors of `regular` (first-appearance order), rows count
/// factor multiplicities of each module in `rows`.
pub fn decomposition_oracle(rows: &[Vec<Mat>], regular: &[Mat], p: u64) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut simples: Vec<Vec<Mat>> = Vec::new();
    for f in composition_factors(regular, regular[0].len(), p) {
        if !simples.iter().any(|s| isomorphic(s, &f, p)) {
            simples.push(f);
        }
    }
    let dims = simples.iter().map(|s| s[0].len()).collect();
    let entries = rows
        .iter()
        .map(|gens| {
            let mut counts = vec![0usize; simples.len()];
            for f in composition_factors(gens, gens[0].len(), p) {
                let j = simples.iter().position(|s| isomorphic(s, &f, p)).expect("factor of a module is a factor of the regular module");
                counts[j] += 1;
            }
            counts
        })
        .collect();
    (dims, entries)
}

/// Columns as a sorted multiset, for comparing matrices up to column order.
pub fn column_multiset(entries: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let ncols = entries.first().map_or(0, |r| r.len());
    let mut cols: Vec<Vec<usize>> = (0..ncols).map(|j| entries.iter().map(|r| r[j]).collect()).collect();
    cols.sort();
    cols
}
