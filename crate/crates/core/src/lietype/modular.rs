use serde::Serialize;

use crate::exactalg::matrix::Matrix;
use crate::exactalg::FiniteField;
use crate::meataxe::{chop_split, fixed_vectors, FFModule};

use super::{FiniteMatrixGroup, LieTypeError};

/// Largest permutation-module dimension handed to the meataxe.
pub const MODULE_DIMENSION_CAP: usize = 500;

/// Permutation matrices of `elements` acting by left multiplication on the
/// left cosets of `subgroup`; `M e_c = e_{g c}`.
fn coset_action(g: &FiniteMatrixGroup, subgroup: &[usize], elements: &[usize]) -> Vec<Matrix<u32>> {
    let (count, coset_of) = g.left_cosets(subgroup);
    let mut rep = vec![usize::MAX; count];
    for x in 0..g.order() {
        if rep[coset_of[x]] == usize::MAX {
            rep[coset_of[x]] = x;
        }
    }
    elements
        .iter()
        .map(|&e| {
            let mut m = Matrix::filled(count, count, 0u32);
            for (c, &x) in rep.iter().enumerate() {
                m.set(coset_of[g.multiply(e, x)], c, 1);
            }
            m
        })
        .collect()
}

/// `k[G/B]` over `F_{l^r}`. The generators are the two group generators
/// followed by generators of `B`, so that `B`-fixed vectors can be computed
/// with the words `[2], [3], ...`.
pub fn perm_module(g: &FiniteMatrixGroup, ell: u32, r: u32, seed: u64) -> Result<FFModule, LieTypeError> {
    let field = FiniteField::new(ell, r)?;
    let mut elements = g.generators().to_vec();
    elements.extend_from_slice(g.borel_generators());
    let gens = coset_action(g, g.borel(), &elements);
    Ok(FFModule::new(&field, gens, seed)?)
}

/// Words selecting the `B` generators of a [`perm_module`].
pub fn borel_words(g: &FiniteMatrixGroup) -> Vec<Vec<usize>> {
    let offset = g.generators().len();
    (0..g.borel_generators().len()).map(|k| vec![offset + k]).collect()
}

/// Dimensions of the irreducible `kG`-modules, `k` a splitting field of
/// characteristic `l`, sorted ascending (one entry per isomorphism class).
///
/// Every simple module `Y` has `Y^P != 0` for a Sylow `l`-subgroup `P`, so it
/// is a quotient of `k[G/P]`; chopping that permutation module finds all of them.
pub fn modular_irr_dims(g: &FiniteMatrixGroup, ell: u32, r: u32, seed: u64) -> Result<Vec<usize>, LieTypeError> {
    let sylow = g.sylow_subgroup(ell);
    let dim = g.order() / sylow.len();
    if dim > MODULE_DIMENSION_CAP {
        return Err(LieTypeError::SizeCap { order: dim, cap: MODULE_DIMENSION_CAP });
    }
    let field = FiniteField::new(ell, r)?;
    let gens = coset_action(g, &sylow, g.generators());
    let module = FFModule::new(&field, gens, seed)?;
    let series = chop_split(&module)?;
    let mut dims: Vec<usize> = series.factors.iter().map(|(m, _)| m.dim()).collect();
    dims.sort_unstable();
    Ok(dims)
}

/// A composition factor of `k[G/B]` with its `B`-fixed space.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PrincipalSeriesFactor {
    pub dim: usize,
    pub multiplicity: usize,
    pub b_fixed_dim: usize,
    /// Nonzero `B`-fixed vectors: the factor lies in the principal series.
    pub principal: bool,
}

/// Composition factors of `k[G/B]` (over a splitting field) with their
/// `B`-fixed dimensions.
pub fn principal_series_mod(
    g: &FiniteMatrixGroup,
    ell: u32,
    r: u32,
    seed: u64,
) -> Result<(String, Vec<PrincipalSeriesFactor>), LieTypeError> {
    if ell == g.characteristic() {
        return Err(LieTypeError::DefiningCharacteristic { ell, group: g.label() });
    }
    let module = perm_module(g, ell, r, seed)?;
    let series = chop_split(&module)?;
    let words = borel_words(g);
    let mut out = Vec::new();
    for (factor, mult) in &series.factors {
        let fixed = fixed_vectors(factor.module(), &words)?;
        out.push(PrincipalSeriesFactor { dim: factor.dim(), multiplicity: *mult, b_fixed_dim: fixed, principal: fixed > 0 });
    }
    let field = series.factors.first().map(|(m, _)| m.module().field().label()).unwrap_or_default();
    Ok((field, out))
}
