use serde::Serialize;

use crate::combinat::{partitions, Partition};
use crate::exactalg::matrix::{mat_mul, rank, Matrix};
use crate::exactalg::Cyclotomic;

use super::{CharacterTable, FiniteMatrixGroup, LieTypeError};

/// A unipotent class of `GL_n` over an algebraically closed field, labelled by
/// the Jordan type of its elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnipotentClassGLn {
    pub partition: Partition,
    /// `dim B_u = n(λ)`, the dimension of the variety of Borel subgroups containing `u`.
    pub springer_fibre_dim: usize,
    /// `dim O_λ = n² - Σ (λ'_i)²`.
    pub class_dim: usize,
}

impl UnipotentClassGLn {
    pub fn new(partition: Partition) -> Self {
        let n = partition.size();
        let conj = partition.conjugate();
        let class_dim = n * n - conj.parts().iter().map(|c| c * c).sum::<usize>();
        Self { springer_fibre_dim: partition.n_value(), class_dim, partition }
    }

    /// Closure order: `self ⊆ closure(other)` iff dominance `self ⊴ other`.
    pub fn in_closure_of(&self, other: &UnipotentClassGLn) -> bool {
        self.partition.dominated_by(&other.partition)
    }

    /// The component group `A(u)` is trivial in `GL_n`.
    pub fn component_group_order(&self) -> usize {
        1
    }
}

/// All unipotent classes of `GL_n`, regular class `(n)` first.
pub fn unipotent_classes(n: usize) -> Vec<UnipotentClassGLn> {
    partitions(n).into_iter().map(UnipotentClassGLn::new).collect()
}

/// Strict closure relation `less[i][j]`: class `i` lies in the closure of class `j`, `i != j`.
pub fn dominance_poset(n: usize) -> (Vec<UnipotentClassGLn>, Vec<Vec<bool>>) {
    let classes = unipotent_classes(n);
    let less = classes
        .iter()
        .enumerate()
        .map(|(i, a)| classes.iter().enumerate().map(|(j, b)| i != j && a.in_closure_of(b)).collect())
        .collect();
    (classes, less)
}

fn minus_identity(g: &FiniteMatrixGroup, x: usize) -> Matrix<u32> {
    let f = &**g.field();
    let mut m = g.element_matrix(x);
    for i in 0..g.n() {
        let v = f.sub(*m.get(i, i), 1);
        m.set(i, i, v);
    }
    m
}

/// Jordan type of a unipotent element from the ranks of `(u - 1)^k`; `None`
/// if the element is not unipotent.
pub fn jordan_type(g: &FiniteMatrixGroup, x: usize) -> Option<Partition> {
    let f = &**g.field();
    let n = g.n();
    let nil = minus_identity(g, x);
    let mut ranks = vec![n];
    let mut power = nil.clone();
    for _ in 0..n {
        ranks.push(rank(f, &power));
        power = mat_mul(f, &power, &nil);
    }
    if ranks[n] != 0 {
        return None;
    }
    // λ'_k = number of Jordan blocks of size >= k = rank_{k-1} - rank_k
    let conj: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).filter(|&c| c > 0).collect();
    Some(Partition(conj).conjugate())
}

/// The conjugacy classes of `g` contained in each geometric unipotent class,
/// in the order of [`unipotent_classes`].
pub fn unipotent_class_map(g: &FiniteMatrixGroup) -> Vec<(UnipotentClassGLn, Vec<usize>)> {
    let mut out: Vec<(UnipotentClassGLn, Vec<usize>)> = unipotent_classes(g.n()).into_iter().map(|c| (c, Vec::new())).collect();
    for (k, c) in g.classes().iter().enumerate() {
        if let Some(lambda) = jordan_type(g, c.representative) {
            let slot = out.iter_mut().find(|(u, _)| u.partition == lambda).expect("every Jordan type is a partition of n");
            slot.1.push(k);
        }
    }
    out
}

/// `AV = Σ_j [A(u_j):A(u_j)^F] trace(u_j, ρ)` for representatives `u_j`
/// given as element indices with their factors.
pub fn average_value(
    g: &FiniteMatrixGroup,
    table: &CharacterTable,
    chi: usize,
    representatives: &[(usize, i64)],
) -> Result<Cyclotomic, LieTypeError> {
    let mut acc = Cyclotomic::zero(table.exponent);
    for &(u, factor) in representatives {
        if jordan_type(g, u).is_none() {
            return Err(LieTypeError::NotUnipotent(u));
        }
        acc = &acc + &table.value(chi, g.class_of(u)).scale(factor);
    }
    Ok(acc)
}

/// Unipotent support of a character with its average values on every class.
#[derive(Clone, Debug, Serialize)]
pub struct UnipotentSupport {
    pub class: UnipotentClassGLn,
    /// `(partition label, AV as text)` for every unipotent class.
    pub average_values: Vec<(String, String)>,
}

/// The unique class of maximal dimension on which the average value is nonzero.
///
/// Errors if two classes of that dimension both carry nonzero average value,
/// which would contradict the uniqueness of the unipotent support.
pub fn unipotent_support(g: &FiniteMatrixGroup, table: &CharacterTable, chi: usize) -> Result<UnipotentSupport, LieTypeError> {
    let mut nonzero: Vec<UnipotentClassGLn> = Vec::new();
    let mut average_values = Vec::new();
    for (class, members) in unipotent_class_map(g) {
        // one representative per G-class; F acts trivially on A(u), so every factor is 1
        let reps: Vec<(usize, i64)> = members.iter().map(|&k| (g.classes()[k].representative, 1)).collect();
        let av = average_value(g, table, chi, &reps)?;
        average_values.push((class.partition.label(), av.to_string()));
        if !av.is_zero() {
            nonzero.push(class);
        }
    }
    let top = nonzero.iter().map(|c| c.class_dim).max().ok_or_else(|| {
        LieTypeError::SupportNotUnique(format!("character {chi} of {} vanishes on all unipotent classes", g.label()))
    })?;
    let maximal: Vec<&UnipotentClassGLn> = nonzero.iter().filter(|c| c.class_dim == top).collect();
    if maximal.len() != 1 {
        let labels: Vec<String> = maximal.iter().map(|c| c.partition.label()).collect();
        return Err(LieTypeError::SupportNotUnique(format!("character {chi} of {}: {labels:?}", g.label())));
    }
    Ok(UnipotentSupport { class: maximal[0].clone(), average_values })
}

/// Generic degree of the principal-series unipotent character of `GL_n(q)`
/// labelled by `λ`: `q^{n(λ)} Π_{i=1}^n (q^i - 1) / Π_hooks (q^h - 1)`.
pub fn generic_degree(lambda: &Partition, q: i64) -> i64 {
    let n = lambda.size() as u32;
    let num: i128 = (1..=n).map(|i| (q as i128).pow(i) - 1).product();
    let den: i128 = lambda.hook_lengths().iter().map(|&h| (q as i128).pow(h as u32) - 1).product();
    ((q as i128).pow(lambda.n_value() as u32) * num / den) as i64
}

/// The constituents of the permutation character on `G/B`, each labelled by
/// the partition `λ` whose Hecke representation has dimension equal to the
/// multiplicity and whose generic degree equals the character degree.
pub fn unipotent_principal_series(
    g: &FiniteMatrixGroup,
    table: &CharacterTable,
) -> Result<Vec<(Partition, usize)>, LieTypeError> {
    let (count, coset_of) = g.left_cosets(g.borel());
    let perm: Vec<i64> = g
        .classes()
        .iter()
        .map(|c| {
            let x = c.representative;
            let mut seen = vec![false; count];
            let mut fixed = 0;
            for y in 0..g.order() {
                let cy = coset_of[y];
                if !seen[cy] {
                    seen[cy] = true;
                    if coset_of[g.multiply(x, y)] == cy {
                        fixed += 1;
                    }
                }
            }
            fixed
        })
        .collect();
    let pi = table.class_function(&perm);
    let mut out = Vec::new();
    for lambda in partitions(g.n()) {
        let dim = lambda.standard_tableaux().len() as i64;
        let degree = generic_degree(&lambda, g.q() as i64);
        let hits: Vec<usize> = (0..table.len())
            .filter(|&i| table.degrees[i] == degree && table.inner_product(&pi, &table.values[i]) == Some(dim))
            .collect();
        match hits.as_slice() {
            [chi] => out.push((lambda, *chi)),
            _ => {
                return Err(LieTypeError::CharacterTable(format!(
                    "principal series character for {lambda} not uniquely identified ({} candidates)",
                    hits.len()
                )))
            }
        }
    }
    Ok(out)
}
