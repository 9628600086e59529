use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::CoxeterSystem;
use crate::exactalg::matrix::Matrix;
use crate::exactalg::{FfRef, FiniteField, ReductionMap};
use crate::kl::{cell_characters, two_sided_cells, CellPartition, KLTable};
use crate::meataxe::{chop, chop_split, is_isomorphic, FFModule, IrreducibleModule};

use super::{irr_char_zero, specialize_reduce, HeckeAlgebra, HeckeError, MatrixRep};

/// Irreducible modules of the Hecke algebra over a finite splitting field.
#[derive(Clone, Debug)]
pub struct ModularIrreducibles {
    pub field: FfRef,
    pub q_bar: u32,
    pub modules: Vec<IrreducibleModule>,
}

/// Chops the regular module of `H_k` at `q mod l` over `F_{l^r}`, extending
/// the field until every composition factor is absolutely irreducible.
pub fn irr_modular(sys: &CoxeterSystem, q: i64, ell: u32, r: u32, seed: u64) -> Result<ModularIrreducibles, HeckeError> {
    let field = FiniteField::new(ell, r)?;
    let q_bar = field.from_int(q);
    let algebra = HeckeAlgebra::new(Arc::new(sys_clone(sys)), (*field).clone(), q_bar);
    let gens: Vec<Matrix<u32>> = (0..sys.rank()).map(|s| algebra.left_regular_matrix(s)).collect();
    let module = FFModule::new(&field, gens, seed)?;
    let series = chop_split(&module)?;
    let field = series.factors[0].0.module().field().clone();
    let q_bar = field.from_int(q);
    Ok(ModularIrreducibles { field, q_bar, modules: series.factors.into_iter().map(|(m, _)| m).collect() })
}

fn sys_clone(sys: &CoxeterSystem) -> CoxeterSystem {
    CoxeterSystem::new(sys.kind())
}

/// Which two-sided cell each irreducible representation of `W` belongs to.
#[derive(Clone, Debug)]
pub struct CellAssignment {
    pub cells: CellPartition,
    /// `cell_of_rep[i]` for the representations in `irr_char_zero` order.
    pub cell_of_rep: Vec<usize>,
}

/// Matches the irreducible representations of `W` (the Hecke representations
/// at `q = 1`) to two-sided cells: `E` lies in cell `F` iff the character of
/// `E` has nonzero inner product with the sign-twisted character of the
/// C′-cell module of `F`. The twist turns the C′-cell modules into the
/// C-cell modules, so that `{w0}` carries the sign representation and `{e}`
/// the trivial one.
pub fn cell_assignment(sys: &CoxeterSystem) -> Result<CellAssignment, HeckeError> {
    let table = KLTable::new(sys);
    let cells = two_sided_cells(sys, &table);
    let elements = sys.enumerate();
    let cell_chars = cell_characters(sys, &table, &cells, &elements);
    let reps = irr_char_zero(sys, 1)?;
    let mut cell_of_rep = Vec::with_capacity(reps.len());
    for rep in &reps {
        let chi = rep.character(sys);
        let hits: Vec<usize> = (0..cells.len())
            .filter(|&f| {
                let mut acc = rep.field.zero();
                for ((x, c), w) in chi.iter().zip(&cell_chars[f]).zip(&elements) {
                    // characters of Coxeter groups are real, so χ(w^{-1}) = χ(w)
                    let sign = if sys.length(*w) % 2 == 0 { 1 } else { -1 };
                    acc = &acc + &(x * &rep.field.from_int(sign * *c));
                }
                !acc.is_zero()
            })
            .collect();
        if hits.len() != 1 {
            return Err(HeckeError::CellAssignment(format!("{} meets cells {:?}", rep.label, hits)));
        }
        cell_of_rep.push(hits[0]);
    }
    Ok(CellAssignment { cells, cell_of_rep })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RowInfo {
    pub label: String,
    pub dim: usize,
    pub a_value: u32,
    pub cell: String,
    #[serde(skip)]
    pub cell_index: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ColumnInfo {
    pub label: String,
    pub dim: usize,
}

/// Decomposition numbers `d_{E,M}` with row metadata.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionMatrix {
    pub type_label: String,
    pub q: i64,
    pub ell: u32,
    pub field: String,
    pub rows: Vec<RowInfo>,
    pub columns: Vec<ColumnInfo>,
    pub entries: Vec<Vec<usize>>,
    /// `cell_less[i][j]`: cell `i` is strictly below cell `j` in `<=_LR`.
    #[serde(skip)]
    pub cell_less: Vec<Vec<bool>>,
}

impl DecompositionMatrix {
    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.columns.len()
            && self.entries.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &d)| d == usize::from(i == j)))
    }

    /// `Σ_M d_{E,M} dim M = dim E` for every row.
    pub fn dimensions_balance(&self) -> bool {
        self.rows
            .iter()
            .zip(&self.entries)
            .all(|(r, e)| e.iter().zip(&self.columns).map(|(d, c)| d * c.dim).sum::<usize>() == r.dim)
    }

    pub fn every_column_nonzero(&self) -> bool {
        (0..self.columns.len()).all(|j| self.entries.iter().any(|r| r[j] != 0))
    }
}

/// Decomposition matrix of the Hecke algebra of `sys` at `(q, l)`.
pub fn decomposition_matrix(sys: &CoxeterSystem, q: i64, ell: u32, seed: u64) -> Result<DecompositionMatrix, HeckeError> {
    if q % ell as i64 == 0 {
        return Err(HeckeError::DefiningCharacteristic { q, ell });
    }
    let reps = irr_char_zero(sys, q)?;
    let assignment = cell_assignment(sys)?;
    // residue degree large enough for every representation field
    let mut r0 = 1u32;
    for rep in &reps {
        let d = ReductionMap::new(&rep.field, ell)?.residue_degree();
        r0 = lcm(r0, d);
    }
    let modular = irr_modular(sys, q, ell, r0, seed)?;
    let r = modular.field.degree();
    let mut entries = vec![vec![0usize; modular.modules.len()]; reps.len()];
    for (i, rep) in reps.iter().enumerate() {
        let reduced = reduce_module(rep, ell, r, seed)?;
        let series = chop(&reduced)?;
        for (factor, mult) in &series.factors {
            let j = modular
                .modules
                .iter()
                .position(|m| m.dim() == factor.dim() && is_isomorphic(m, factor).ok().flatten().is_some())
                .ok_or_else(|| HeckeError::UnmatchedFactor(rep.label.clone()))?;
            entries[i][j] += mult;
        }
    }
    // columns ordered by first row in which they occur, then dimension
    let mut order: Vec<usize> = (0..modular.modules.len()).collect();
    order.sort_by_key(|&j| (entries.iter().position(|r| r[j] != 0).unwrap_or(usize::MAX), modular.modules[j].dim()));
    let entries: Vec<Vec<usize>> = entries.iter().map(|r| order.iter().map(|&j| r[j]).collect()).collect();
    let columns = order
        .iter()
        .enumerate()
        .map(|(k, &j)| ColumnInfo { label: format!("M{k}"), dim: modular.modules[j].dim() })
        .collect();
    let cells = &assignment.cells;
    let rows = reps
        .iter()
        .zip(&assignment.cell_of_rep)
        .map(|(rep, &c)| RowInfo {
            label: rep.label.clone(),
            dim: rep.dim(),
            a_value: cells.a_values[c],
            cell: cells.label(c),
            cell_index: c,
        })
        .collect();
    let cell_less = (0..cells.len()).map(|i| (0..cells.len()).map(|j| cells.less(i, j)).collect()).collect();
    Ok(DecompositionMatrix {
        type_label: sys.label(),
        q,
        ell,
        field: modular.field.label(),
        rows,
        columns,
        entries,
        cell_less,
    })
}

fn reduce_module(rep: &MatrixRep, ell: u32, r: u32, seed: u64) -> Result<FFModule, HeckeError> {
    let reduced = specialize_reduce(rep, ell, r)?;
    Ok(FFModule::new(&reduced.field, reduced.gens, seed)?)
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangularityMode {
    /// Other rows in a column must have strictly larger a-value.
    A,
    /// Other rows in a column must lie in strictly smaller cells.
    Cell,
}

impl std::str::FromStr for TriangularityMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "a" => Ok(Self::A),
            "cell" => Ok(Self::Cell),
            other => Err(format!("unknown triangularity mode {other:?} (expected \"a\" or \"cell\")")),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TriangularityReport {
    pub mode: TriangularityMode,
    pub passed: bool,
    /// `(column, row)` pairs `M -> E_M`.
    pub injection: Vec<(usize, usize)>,
    /// Whether every column has exactly one admissible partner.
    pub unique: bool,
    pub violations: Vec<String>,
}

/// Tries to build the injection `M -> E_M` with `d_{E_M,M} = 1` such that
/// every other row `E` with `d_{E,M} != 0` is strictly dominated in the
/// chosen sense.
pub fn check_triangularity(d: &DecompositionMatrix, mode: TriangularityMode) -> TriangularityReport {
    let below = |e: usize, top: usize| -> bool {
        match mode {
            TriangularityMode::A => d.rows[e].a_value > d.rows[top].a_value,
            TriangularityMode::Cell => d.cell_less[d.rows[e].cell_index][d.rows[top].cell_index],
        }
    };
    let mut injection = Vec::new();
    let mut violations = Vec::new();
    let mut unique = true;
    for (j, col) in d.columns.iter().enumerate() {
        let support: Vec<usize> = (0..d.rows.len()).filter(|&i| d.entries[i][j] != 0).collect();
        let tops: Vec<usize> =
            support.iter().copied().filter(|&t| support.iter().all(|&e| e == t || below(e, t))).collect();
        match tops.as_slice() {
            [t] => {
                if d.entries[*t][j] != 1 {
                    violations.push(format!(
                        "column {} pairs with {} but d = {} != 1",
                        col.label, d.rows[*t].label, d.entries[*t][j]
                    ));
                }
                injection.push((j, *t));
            }
            [] => {
                unique = false;
                let pairs: Vec<String> = support.iter().map(|&i| d.rows[i].label.clone()).collect();
                violations.push(format!("column {} has no dominating row among {:?}", col.label, pairs));
            }
            _ => {
                unique = false;
                violations.push(format!("column {} has several candidate rows", col.label));
            }
        }
    }
    let mut targets: Vec<usize> = injection.iter().map(|&(_, e)| e).collect();
    targets.sort_unstable();
    if targets.windows(2).any(|w| w[0] == w[1]) {
        violations.push("map M -> E_M is not injective".to_string());
    }
    TriangularityReport { mode, passed: violations.is_empty(), injection, unique, violations }
}

