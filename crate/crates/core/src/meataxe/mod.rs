//! MeatAxe: composition factors of modules over small finite fields.
//!
//! A module is given by square matrices over `F_{l^r}` acting on column
//! vectors. Chopping follows the Holt–Rees recipe: pick a random element of
//! the generated algebra, factor its characteristic polynomial, and spin a
//! null vector of `p(A)` for an irreducible factor `p`. A proper spin gives a
//! submodule; otherwise, when `dim ker p(A) = deg p`, a null vector of the
//! transposed element is spun under the transposed generators (Norton's
//! test). Both spins being full certifies irreducibility.

mod ffpoly;
pub mod linalg;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactalg::matrix::Matrix;
use crate::exactalg::{FfRef, FieldEmbedding, FiniteField};
use linalg::{axpy, char_poly, eval_poly_matrix, identity, kernel, mat_mul, mat_vec, Echelon};

pub use ffpoly::irreducible_factors;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeatAxeError {
    #[error("no certificate found after {0} random algebra elements")]
    RetryCap(usize),
    #[error("module is not certified irreducible")]
    NotIrreducible,
    #[error("modules are over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("generator shapes are inconsistent: {0}")]
    Shape(String),
    #[error("word refers to generator {0}, but the module has {1}")]
    BadWord(usize, usize),
}

const RETRY_CAP: usize = 400;

/// A module over a finite field given by generator matrices.
#[derive(Clone, Debug)]
pub struct FFModule {
    field: FfRef,
    dim: usize,
    gens: Vec<Matrix<u32>>,
    seed: u64,
}

impl FFModule {
    pub fn new(field: &FfRef, gens: Vec<Matrix<u32>>, seed: u64) -> Result<Self, MeatAxeError> {
        let dim = gens.first().map_or(0, |g| g.rows());
        if gens.is_empty() {
            return Err(MeatAxeError::Shape("no generators".into()));
        }
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(MeatAxeError::Shape(format!("expected {dim}x{dim}, found {}x{}", g.rows(), g.cols())));
            }
            if g.data().iter().any(|&x| x >= field.size()) {
                return Err(MeatAxeError::Shape("entry outside the field".into()));
            }
        }
        Ok(Self { field: Arc::clone(field), dim, gens, seed })
    }

    pub fn field(&self) -> &FfRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Matrix<u32>] {
        &self.gens
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// The same module over a larger field.
    pub fn extend_field(&self, target: &FfRef) -> Result<Self, MeatAxeError> {
        let emb = FieldEmbedding::new(&self.field, target)
            .map_err(|_| MeatAxeError::FieldMismatch(self.field.label(), target.label()))?;
        let gens = self.gens.iter().map(|g| g.map(|&x| emb.map(x))).collect();
        Ok(Self { field: Arc::clone(target), dim: self.dim, gens, seed: self.seed })
    }

    /// Action of a word in the generators (applied right to left like matrix products).
    pub fn word_matrix(&self, word: &[usize]) -> Result<Matrix<u32>, MeatAxeError> {
        let f = &*self.field;
        let mut m = identity(self.dim);
        for &g in word {
            let gen = self.gens.get(g).ok_or(MeatAxeError::BadWord(g, self.gens.len()))?;
            m = mat_mul(f, &m, gen);
        }
        Ok(m)
    }

    /// Plain row-major text dump, one matrix per block.
    pub fn to_text(&self) -> String {
        let mut out = format!("field {} dim {} gens {}\n", self.field.label(), self.dim, self.gens.len());
        for g in &self.gens {
            for i in 0..self.dim {
                let row: Vec<String> = g.row(i).iter().map(|x| x.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }

    fn check_field(&self, other: &FFModule) -> Result<(), MeatAxeError> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(MeatAxeError::FieldMismatch(self.field.label(), other.field.label()))
        }
    }

    /// Action on the submodule spanned by the rows of `basis` (reduced echelon).
    fn submodule(&self, basis: &Echelon) -> FFModule {
        let f = &*self.field;
        let k = basis.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = Matrix::filled(k, k, 0u32);
                for (j, b) in basis.rows.iter().enumerate() {
                    let img = mat_vec(f, g, b);
                    for (i, &p) in basis.pivots.iter().enumerate() {
                        m.set(i, j, img[p]);
                    }
                }
                m
            })
            .collect();
        FFModule { field: Arc::clone(&self.field), dim: k, gens, seed: self.seed }
    }

    /// Action on the quotient by the submodule spanned by `basis` (reduced echelon).
    fn quotient(&self, basis: &Echelon) -> FFModule {
        let f = &*self.field;
        let free: Vec<usize> = (0..self.dim).filter(|c| !basis.pivots.contains(c)).collect();
        let k = free.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = Matrix::filled(k, k, 0u32);
                for (j, &c) in free.iter().enumerate() {
                    let mut img: Vec<u32> = (0..self.dim).map(|i| *g.get(i, c)).collect();
                    basis.reduce(f, &mut img);
                    for (i, &r) in free.iter().enumerate() {
                        m.set(i, j, img[r]);
                    }
                }
                m
            })
            .collect();
        FFModule { field: Arc::clone(&self.field), dim: k, gens, seed: self.seed }
    }

    fn transposed(&self) -> Vec<Matrix<u32>> {
        self.gens.iter().map(|g| g.transpose()).collect()
    }
}

/// A random element of the algebra generated by the module generators:
/// a few random products, then a random linear combination (with identity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraWord {
    products: Vec<(usize, usize)>,
    /// Coefficient of the identity, then of each generator and product.
    coeffs: Vec<u32>,
}

impl AlgebraWord {
    fn random<R: Rng>(rng: &mut R, ngens: usize, field_size: u32) -> Self {
        let nprod = 2 + rng.gen_range(0..4);
        let mut products = Vec::with_capacity(nprod);
        for k in 0..nprod {
            let avail = ngens + k;
            products.push((rng.gen_range(0..avail), rng.gen_range(0..avail)));
        }
        let total = 1 + ngens + nprod;
        let mut coeffs: Vec<u32> = (0..total).map(|_| if rng.gen_bool(0.5) { rng.gen_range(0..field_size) } else { 0 }).collect();
        // make sure the last product contributes
        let last = total - 1;
        if coeffs[last] == 0 {
            coeffs[last] = 1 + rng.gen_range(0..field_size - 1);
        }
        Self { products, coeffs }
    }

    pub fn evaluate(&self, f: &FiniteField, gens: &[Matrix<u32>]) -> Matrix<u32> {
        let n = gens[0].rows();
        let mut elems: Vec<Matrix<u32>> = gens.to_vec();
        for &(i, j) in &self.products {
            let p = mat_mul(f, &elems[i], &elems[j]);
            elems.push(p);
        }
        let mut acc = Matrix::filled(n, n, 0u32);
        if self.coeffs[0] != 0 {
            for i in 0..n {
                acc.set(i, i, self.coeffs[0]);
            }
        }
        for (c, m) in self.coeffs[1..].iter().zip(&elems) {
            if *c != 0 {
                linalg::mat_add_scaled(f, &mut acc, *c, m);
            }
        }
        acc
    }
}

/// Witness of irreducibility and data for isomorphism testing.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub word: AlgebraWord,
    /// Irreducible factor `p` of the characteristic polynomial with `dim ker p(A) = deg p`.
    pub factor: Vec<u32>,
    /// Null vector of `p(A)` that spins the module.
    pub vector: Vec<u32>,
}

/// Standard basis obtained by spinning the certificate vector.
#[derive(Clone, Debug)]
struct SpinScript {
    /// `(parent, generator)` for every basis vector after the first.
    steps: Vec<(usize, usize)>,
    /// `B^{-1} G_i B` for every generator: the action in the spun basis.
    action: Vec<Matrix<u32>>,
    /// Basis vectors as columns.
    basis: Matrix<u32>,
}

fn spin_script(f: &FiniteField, gens: &[Matrix<u32>], v: &[u32]) -> SpinScript {
    let n = v.len();
    let mut ech = Echelon::new(n);
    let mut vecs: Vec<Vec<u32>> = Vec::new();
    let mut steps = Vec::new();
    ech.insert(f, v.to_vec());
    vecs.push(v.to_vec());
    let mut i = 0;
    while i < vecs.len() && vecs.len() < n {
        for (g, m) in gens.iter().enumerate() {
            let img = mat_vec(f, m, &vecs[i]);
            if ech.insert(f, img.clone()) {
                vecs.push(img);
                steps.push((i, g));
                if vecs.len() == n {
                    break;
                }
            }
        }
        i += 1;
    }
    assert_eq!(vecs.len(), n, "certificate vector must spin the module");
    let mut basis = Matrix::filled(n, n, 0u32);
    for (j, b) in vecs.iter().enumerate() {
        for (i, &x) in b.iter().enumerate() {
            basis.set(i, j, x);
        }
    }
    let inv = linalg::inverse(f, &basis).expect("spun basis is invertible");
    let action = gens.iter().map(|g| mat_mul(f, &inv, &mat_mul(f, g, &basis))).collect();
    SpinScript { steps, action, basis }
}

/// Replays a spin script starting from `w` using generators `gens`; columns are the images.
fn replay(f: &FiniteField, script: &SpinScript, gens: &[Matrix<u32>], w: &[u32]) -> Matrix<u32> {
    let n = w.len();
    let mut cols: Vec<Vec<u32>> = vec![w.to_vec()];
    for &(parent, g) in &script.steps {
        let img = mat_vec(f, &gens[g], &cols[parent]);
        cols.push(img);
    }
    let mut m = Matrix::filled(n, cols.len(), 0u32);
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// An irreducible module together with its certificate.
#[derive(Clone, Debug)]
pub struct IrreducibleModule {
    module: FFModule,
    cert: Certificate,
    script: SpinScript,
    end_dim: usize,
}

impl IrreducibleModule {
    pub fn module(&self) -> &FFModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn certificate(&self) -> &Certificate {
        &self.cert
    }

    /// Dimension of the endomorphism ring over the base field.
    pub fn endomorphism_dim(&self) -> usize {
        self.end_dim
    }

    pub fn is_absolutely_irreducible(&self) -> bool {
        self.end_dim == 1
    }

    fn build(module: FFModule, cert: Certificate) -> Self {
        let f = Arc::clone(&module.field);
        let script = spin_script(&f, &module.gens, &cert.vector);
        let mut irr = Self { module, cert, script, end_dim: 0 };
        irr.end_dim = if ffpoly::degree(&irr.cert.factor) == Some(1) {
            1
        } else {
            hom_space(&irr, &irr.module).map(|h| h.len()).unwrap_or(0)
        };
        irr
    }
}

/// Basis of `Hom(x, y)` as matrices (`dim y × dim x`) intertwining the actions.
fn hom_space(x: &IrreducibleModule, y: &FFModule) -> Option<Vec<Matrix<u32>>> {
    let f = &*x.module.field;
    if x.module.dim != y.dim || x.module.gens.len() != y.gens.len() {
        return Some(Vec::new());
    }
    let a_y = x.cert.word.evaluate(f, &y.gens);
    let ker = kernel(f, &eval_poly_matrix(f, &x.cert.factor, &a_y));
    let deg = ffpoly::degree(&x.cert.factor).unwrap_or(0);
    if ker.len() != deg {
        return Some(Vec::new());
    }
    let n = y.dim;
    let images: Vec<Matrix<u32>> = ker.iter().map(|k| replay(f, &x.script, &y.gens, k)).collect();
    // Σ_j c_j (C_j M_i - G_i C_j) = 0 for every generator i.
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let conds: Vec<Vec<Matrix<u32>>> = images
        .iter()
        .map(|c| {
            x.script
                .action
                .iter()
                .zip(&y.gens)
                .map(|(m, g)| {
                    let mut d = mat_mul(f, c, m);
                    let gc = mat_mul(f, g, c);
                    linalg::mat_add_scaled(f, &mut d, f.neg(1), &gc);
                    d
                })
                .collect()
        })
        .collect();
    let ngen = y.gens.len();
    for gi in 0..ngen {
        for r in 0..n {
            for c in 0..n {
                let row: Vec<u32> = conds.iter().map(|cj| *cj[gi].get(r, c)).collect();
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() { Matrix::filled(1, deg, 0u32) } else { Matrix::from_rows(rows) };
    let sols = kernel(f, &system);
    let binv = linalg::inverse(f, &x.script.basis)?;
    Some(
        sols.iter()
            .map(|c| {
                let mut phi = Matrix::filled(n, n, 0u32);
                for (cj, img) in c.iter().zip(&images) {
                    linalg::mat_add_scaled(f, &mut phi, *cj, img);
                }
                mat_mul(f, &phi, &binv)
            })
            .collect(),
    )
}

/// Outcome of one irreducibility test.
enum Split {
    Reducible(Echelon),
    Irreducible(Certificate),
}

fn find_split<R: Rng>(m: &FFModule, rng: &mut R) -> Result<Split, MeatAxeError> {
    let f = &*m.field;
    let n = m.dim;
    if n == 1 {
        return Ok(Split::Irreducible(Certificate {
            word: AlgebraWord { products: Vec::new(), coeffs: vec![0; 1 + m.gens.len()] },
            factor: vec![0, 1],
            vector: vec![1],
        }));
    }
    let max_degree = if n <= 64 { n } else { 12 };
    let transposed = m.transposed();
    for _ in 0..RETRY_CAP {
        let word = AlgebraWord::random(rng, m.gens.len(), f.size());
        let a = word.evaluate(f, &m.gens);
        let cp = char_poly(f, &a);
        let factors = irreducible_factors(f, &cp, max_degree, rng);
        for p in factors {
            let pa = eval_poly_matrix(f, &p, &a);
            let ker = kernel(f, &pa);
            let v = ker[0].clone();
            let sub = spin(f, &m.gens, &[v.clone()]);
            if sub.len() < n {
                return Ok(Split::Reducible(sub.into_reduced(f)));
            }
            if ker.len() != ffpoly::degree(&p).unwrap_or(0) {
                continue;
            }
            let kt = kernel(f, &pa.transpose());
            let dual = spin(f, &transposed, &[kt[0].clone()]);
            if dual.len() < n {
                let ann = annihilator(f, &dual, n);
                return Ok(Split::Reducible(ann));
            }
            return Ok(Split::Irreducible(Certificate { word, factor: p, vector: v }));
        }
    }
    Err(MeatAxeError::RetryCap(RETRY_CAP))
}

/// Submodule spanned by the seeds.
pub fn spin(f: &FiniteField, gens: &[Matrix<u32>], seeds: &[Vec<u32>]) -> Echelon {
    let n = gens[0].rows();
    let mut ech = Echelon::new(n);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        let mut v = s.clone();
        ech.reduce(f, &mut v);
        if ech.insert(f, s.clone()) {
            queue.push(s.clone());
        }
    }
    let mut i = 0;
    while i < queue.len() && ech.len() < n {
        for g in gens {
            let img = mat_vec(f, g, &queue[i]);
            if ech.insert(f, img.clone()) {
                queue.push(img);
                if ech.len() == n {
                    break;
                }
            }
        }
        i += 1;
    }
    ech
}

/// `{x : u·x = 0 for all rows u}` in reduced echelon form (as rows).
fn annihilator(f: &FiniteField, space: &Echelon, n: usize) -> Echelon {
    let rows: Vec<Vec<u32>> = space.rows.clone();
    let m = Matrix::from_rows(rows);
    let ker = kernel(f, &m);
    let mut e = Echelon::new(n);
    for v in ker {
        e.insert(f, v);
    }
    e.into_reduced(f)
}

/// Composition factors with multiplicities.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub factors: Vec<(IrreducibleModule, usize)>,
    pub dimension: usize,
}

impl CompositionSeries {
    /// `(dim, multiplicity)` pairs in factor order.
    pub fn summary(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|(m, k)| (m.dim(), *k)).collect()
    }

    pub fn all_absolutely_irreducible(&self) -> bool {
        self.factors.iter().all(|(m, _)| m.is_absolutely_irreducible())
    }

    /// Least common multiple of the endomorphism degrees: extending the field
    /// by this degree splits every factor.
    pub fn splitting_degree(&self) -> u32 {
        self.factors.iter().fold(1u32, |acc, (m, _)| lcm(acc, m.endomorphism_dim() as u32))
    }

    /// Index of the factor isomorphic to `m`, if any.
    pub fn position_of(&self, m: &IrreducibleModule) -> Option<usize> {
        self.factors.iter().position(|(x, _)| is_isomorphic(x, m).map(|r| r.is_some()).unwrap_or(false))
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Chops `m` into composition factors.
pub fn chop(m: &FFModule) -> Result<CompositionSeries, MeatAxeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(m.seed);
    let mut stack = vec![m.clone()];
    let mut factors: Vec<(IrreducibleModule, usize)> = Vec::new();
    while let Some(x) = stack.pop() {
        match find_split(&x, &mut rng)? {
            Split::Reducible(sub) => {
                stack.push(x.quotient(&sub));
                stack.push(x.submodule(&sub));
            }
            Split::Irreducible(cert) => {
                let irr = IrreducibleModule::build(x, cert);
                let mut matched = false;
                for (known, count) in factors.iter_mut() {
                    if known.dim() == irr.dim() && is_isomorphic(known, &irr)?.is_some() {
                        *count += 1;
                        matched = true;
                        break;
                    }
                }
                if !matched {
                    factors.push((irr, 1));
                }
            }
        }
    }
    Ok(CompositionSeries { factors, dimension: m.dim })
}

/// Certifies irreducibility of `m`, returning the certified module or `None`
/// if a proper submodule exists.
pub fn certify_irreducible(m: &FFModule) -> Result<Option<IrreducibleModule>, MeatAxeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(m.seed);
    match find_split(m, &mut rng)? {
        Split::Reducible(_) => Ok(None),
        Split::Irreducible(cert) => Ok(Some(IrreducibleModule::build(m.clone(), cert))),
    }
}

/// Isomorphism test between certified irreducible modules; returns an
/// intertwiner `Φ` with `Φ G_i^M = G_i^N Φ` on success.
pub fn is_isomorphic(m: &IrreducibleModule, n: &IrreducibleModule) -> Result<Option<Matrix<u32>>, MeatAxeError> {
    m.module.check_field(&n.module)?;
    if m.dim() != n.dim() || m.module.gens.len() != n.module.gens.len() {
        return Ok(None);
    }
    let homs = hom_space(m, &n.module).unwrap_or_default();
    let f = &*m.module.field;
    for h in homs {
        if linalg::rank(f, &h) == m.dim() {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Dimension of the common fixed space of the operators given by `words`.
pub fn fixed_vectors(m: &FFModule, words: &[Vec<usize>]) -> Result<usize, MeatAxeError> {
    let f = &*m.field;
    let n = m.dim;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for w in words {
        let mut a = m.word_matrix(w)?;
        for i in 0..n {
            let v = f.sub(*a.get(i, i), 1);
            a.set(i, i, v);
        }
        rows.extend(a.to_rows());
    }
    if rows.is_empty() {
        return Ok(n);
    }
    Ok(kernel(f, &Matrix::from_rows(rows)).len())
}

/// Chops, extending the field until every factor is absolutely irreducible.
/// Returns the series together with the field it was computed over.
pub fn chop_split(m: &FFModule) -> Result<CompositionSeries, MeatAxeError> {
    let mut current = m.clone();
    loop {
        let series = chop(&current)?;
        let d = series.splitting_degree();
        if d == 1 {
            return Ok(series);
        }
        let field = &current.field;
        let target = FiniteField::new(field.characteristic(), field.degree() * d)
            .map_err(|_| MeatAxeError::FieldMismatch(field.label(), format!("degree {}", field.degree() * d)))?;
        current = current.extend_field(&target)?;
    }
}

/// Sum of `c_i v_i` helper exposed for tests.
pub fn combine(f: &FiniteField, coeffs: &[u32], vecs: &[Vec<u32>]) -> Vec<u32> {
    let mut out = vec![0u32; vecs.first().map_or(0, |v| v.len())];
    for (c, v) in coeffs.iter().zip(vecs) {
        axpy(f, &mut out, *c, v);
    }
    out
}
