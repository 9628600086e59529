use std::sync::Arc;

use super::error::ExactError;
use super::finfield::{FfRef, FieldEmbedding, FiniteField};
use super::numfield::{same_field, FieldRef, NumberFieldElem};
use super::rational::{rational_mod, Rational};

/// A ring homomorphism from the `l`-integral elements of a number field `K`
/// into a finite field of characteristic `l`.
///
/// The residue field is `F_{l^r}` where `r` is the smallest degree of an
/// irreducible factor of the minimal polynomial of `K` modulo `l`. Among
/// factors of that degree the smallest coefficient vector (constant term
/// first, compared lexicographically) wins, and the generator of `K` goes to
/// the smallest root of that factor. When a larger target `F_{l^R}` is
/// requested, the image is pushed through the standard subfield embedding,
/// so maps into different targets are compatible.
#[derive(Clone, Debug)]
pub struct ReductionMap {
    source: FieldRef,
    ell: u32,
    residue_degree: u32,
    factor: Vec<u32>,
    target: FfRef,
    image_of_generator: u32,
}

impl ReductionMap {
    pub fn new(source: &FieldRef, ell: u32) -> Result<Self, ExactError> {
        Self::build(source, ell, None)
    }

    /// Reduction into `F_{l^target_degree}`; the residue degree must divide it.
    pub fn with_target_degree(source: &FieldRef, ell: u32, target_degree: u32) -> Result<Self, ExactError> {
        Self::build(source, ell, Some(target_degree))
    }

    fn build(source: &FieldRef, ell: u32, target_degree: Option<u32>) -> Result<Self, ExactError> {
        FiniteField::prime(ell)?;
        let min_poly: Vec<u32> = source
            .min_poly()
            .iter()
            .map(|c| rational_mod(c, ell).ok_or(ExactError::BadDenominator { ell }))
            .collect::<Result<_, _>>()?;
        let deg = source.degree() as u32;
        for r in 1..=deg {
            let field = FiniteField::new(ell, r)?;
            let mut best: Option<Vec<u32>> = None;
            for y in 0..field.size() {
                if field.eval_poly(&min_poly, y) != 0 {
                    continue;
                }
                let g = min_poly_over_prime(&field, y);
                if g.len() as u32 - 1 != r {
                    continue;
                }
                if best.as_ref().is_none_or(|b| g < *b) {
                    best = Some(g);
                }
            }
            let Some(factor) = best else { continue };
            let root = (0..field.size()).find(|&y| field.eval_poly(&factor, y) == 0).expect("factor has a root");
            let (target, image) = match target_degree {
                None => (field, root),
                Some(big) if big % r == 0 => {
                    let target = FiniteField::new(ell, big)?;
                    let emb = FieldEmbedding::new(&field, &target)?;
                    let image = emb.map(root);
                    (target, image)
                }
                Some(big) => return Err(ExactError::ResidueDegree { residue: r, target: big }),
            };
            return Ok(Self { source: Arc::clone(source), ell, residue_degree: r, factor, target, image_of_generator: image });
        }
        unreachable!("a polynomial of degree d has an irreducible factor of degree at most d")
    }

    pub fn source(&self) -> &FieldRef {
        &self.source
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn residue_degree(&self) -> u32 {
        self.residue_degree
    }

    /// The chosen irreducible factor modulo `l`, constant term first.
    pub fn factor(&self) -> &[u32] {
        &self.factor
    }

    pub fn target(&self) -> &FfRef {
        &self.target
    }

    pub fn image_of_generator(&self) -> u32 {
        self.image_of_generator
    }

    pub fn reduce_rational(&self, x: &Rational) -> Result<u32, ExactError> {
        rational_mod(x, self.ell).ok_or(ExactError::BadDenominator { ell: self.ell })
    }

    pub fn reduce_int(&self, n: i64) -> u32 {
        self.target.from_int(n)
    }
}

/// Applies the reduction map to an element of its source field.
pub fn reduce(x: &NumberFieldElem, map: &ReductionMap) -> Result<u32, ExactError> {
    if !same_field(x.field(), &map.source) {
        return Err(ExactError::FieldMismatch { left: x.field().to_string(), right: map.source.to_string() });
    }
    let f = &map.target;
    let mut acc = 0u32;
    let mut power = 1u32;
    for c in x.coords() {
        let v = map.reduce_rational(c)?;
        acc = f.add(acc, f.mul(v, power));
        power = f.mul(power, map.image_of_generator);
    }
    Ok(acc)
}

/// Minimal polynomial over the prime field of `y`, constant term first.
fn min_poly_over_prime(field: &FiniteField, y: u32) -> Vec<u32> {
    let mut conj = vec![y];
    let mut z = field.pow(y, field.characteristic() as u64);
    while z != y {
        conj.push(z);
        z = field.pow(z, field.characteristic() as u64);
    }
    let mut poly = vec![1u32];
    for c in conj {
        let mut next = vec![0u32; poly.len() + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], a);
            next[i] = field.sub(next[i], field.mul(a, c));
        }
        poly = next;
    }
    poly
}
