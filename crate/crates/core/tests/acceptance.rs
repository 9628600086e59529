//! Acceptance suite: twelve criteria, each checked at exact equality and
//! within its runtime budget. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cellblocks::combinat::Partition;
use cellblocks::coxeter::CoxeterSystem;
use cellblocks::degrees::{membership, parse_point, registry_by_name, span_set_a1, Family, PolySet};
use cellblocks::exactalg::{FiniteField, LaurentPoly, LaurentRing, NumberField, Poly};
use cellblocks::hecke::{
    cell_assignment, decomposition_matrix, generic_algebra, irr_char_zero, poincare_value, specialize_reduce,
    HeckeAlgebra,
};
use cellblocks::kl::{two_sided_cells, KLTable};
use cellblocks::lietype::{
    average_value, character_table, modular_irr_dims, unipotent_principal_series, unipotent_support,
    FiniteMatrixGroup, GroupFamily,
};
use cellblocks::verify::{
    dipper_bridge, hecke_grid, verify_cells_vs_dominance, verify_triangularity, GroupScenario, VerifyConfig,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn system(label: &str) -> Arc<CoxeterSystem> {
    Arc::new(CoxeterSystem::from_label(label).unwrap())
}

/// Two-sided cell counts, singleton extremes, a-values of A3.
fn cell_structure() -> Outcome {
    for (label, count) in [("A1", 2), ("A2", 3), ("A3", 5), ("A4", 7), ("C2", 3), ("G2", 3)] {
        let sys = system(label);
        let cells = two_sided_cells(&sys, &KLTable::new(&sys));
        ensure!(cells.len() == count, "{label}: {} cells, expected {count}", cells.len());
        let e = cells.cell_of[sys.identity().index()];
        let w0 = cells.cell_of[sys.longest().index()];
        ensure!(cells.cells[e].len() == 1 && cells.cells[w0].len() == 1, "{label}: {{e}} or {{w0}} is not a singleton cell");
        ensure!(cells.a_constant_on_cells(), "{label}: a-function not constant on cells");
    }
    let sys = system("A3");
    let cells = two_sided_cells(&sys, &KLTable::new(&sys));
    let mut a = cells.a_values.clone();
    a.sort_unstable();
    ensure!(a == vec![0, 1, 2, 3, 6], "A3 a-values {a:?}");
    Ok("cells 2,3,5,7 (A1-A4), 3 (C2, G2); A3 a-values {0,1,2,3,6}".into())
}

/// Cell poset of S_3, S_4 against dominance of partitions, a = n(λ).
fn cells_vs_dominance() -> Outcome {
    for n in [3, 4] {
        let f = verify_cells_vs_dominance(n).map_err(|e| e.to_string())?;
        ensure!(f.isomorphic, "n = {n}: {:?}", f.violations);
        for (a, _, label) in &f.cells {
            let nv = f.partitions.iter().find(|(l, _)| l == label).map(|(_, v)| *v);
            ensure!(nv == Some(*a as usize), "n = {n}: cell with a = {a} matched to {label}");
        }
    }
    Ok("A2 ~ partitions of 3, A3 ~ partitions of 4, a(F) = n(λ)".into())
}

/// Quadratic rule, q = 1 specialization, exhaustive associativity.
fn hecke_relations() -> Outcome {
    let all = ["A1", "A2", "A3", "A4", "B2", "C2", "G2", "I2(5)", "I2(6)", "I2(8)"];
    for label in all {
        let sys = system(label);
        let h = generic_algebra(Arc::clone(&sys));
        for s in 0..sys.rank() {
            let ts = h.basis(sys.generator(s));
            let mut expected = vec![LaurentPoly::zero(); sys.order()];
            expected[sys.identity().index()] = LaurentPoly::monomial(1, 1);
            expected[sys.generator(s).index()] = LaurentPoly::from_coeffs(&[-1, 1]);
            ensure!(h.t_multiply(&ts, &ts).unwrap() == expected, "{label}: T_s T_s != q T_e + (q-1) T_s");
        }
        let h1 = HeckeAlgebra::new(Arc::clone(&sys), LaurentRing, LaurentPoly::constant(1));
        for x in sys.enumerate() {
            for y in sys.enumerate() {
                ensure!(
                    h1.t_multiply(&h1.basis(x), &h1.basis(y)).unwrap() == h1.basis(sys.multiply(x, y)),
                    "{label}: q = 1 product differs from the group product"
                );
            }
        }
    }
    let mut checked = 0;
    for label in all {
        let sys = system(label);
        if sys.order() > 12 {
            continue;
        }
        let h = generic_algebra(Arc::clone(&sys));
        let basis: Vec<_> = sys.enumerate().into_iter().map(|w| h.basis(w)).collect();
        let products: Vec<Vec<Vec<LaurentPoly>>> =
            basis.iter().map(|x| basis.iter().map(|y| h.t_multiply(x, y).unwrap()).collect()).collect();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                for k in 0..basis.len() {
                    let left = h.t_multiply(&products[i][j], &basis[k]).unwrap();
                    let right = h.t_multiply(&basis[i], &products[j][k]).unwrap();
                    ensure!(left == right, "{label}: (T_{i} T_{j}) T_{k} != T_{i} (T_{j} T_{k})");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("quadratic rule and q = 1 on {} types; {checked} basis triples associative", all.len()))
}

/// Triangularity on the default grid with zero violations.
fn triangularity_grid() -> Outcome {
    let (grid, _) = hecke_grid(&VerifyConfig::default()).map_err(|e| e.to_string())?;
    ensure!(!grid.is_empty(), "empty grid");
    for s in &grid {
        let f = verify_triangularity(s).map_err(|e| format!("{}: {e}", s.key()))?;
        ensure!(f.violations.is_empty(), "{}: {:?}", s.key(), f.violations);
        ensure!(f.injection_unique, "{}: injection not unique", s.key());
        ensure!(f.cell_mode.passed && f.a_mode.passed && f.cell_implies_a, "{}: mode verdicts", s.key());
        ensure!(f.injection.len() == f.decomposition.columns.len(), "{}: injection incomplete", s.key());
        for &(m, e) in &f.cell_mode.injection {
            ensure!(f.decomposition.entries[e][m] == 1, "{}: d_(E_M, M) != 1", s.key());
        }
    }
    Ok(format!("{} scenarios (A1, A2, A3, C2, G2; good l != p), zero violations", grid.len()))
}

/// ℓ ∤ P(q) implies the identity matrix. Crystallographic types are checked
/// at every ℓ, good or bad. For I2(m) the reflection representations live over
/// Q(cos 2π/m) and merge modulo primes dividing m, so those ℓ are skipped.
fn semisimple_regression() -> Outcome {
    let mut count = 0;
    for (label, m) in [("A1", 1), ("A2", 1), ("A3", 1), ("B2", 1), ("C2", 1), ("G2", 1), ("I2(5)", 5), ("I2(8)", 8)] {
        let sys = system(label);
        for q in [2i64, 3, 4, 5, 7] {
            for ell in [2u32, 3, 5, 7, 11, 13] {
                if q % ell as i64 == 0 || poincare_value(&sys, q) % ell as i128 == 0 || m % ell == 0 {
                    continue;
                }
                let d = decomposition_matrix(&sys, q, ell, 0).map_err(|e| format!("{label} q={q} l={ell}: {e}"))?;
                ensure!(d.is_identity(), "{label} q={q} l={ell}: not the identity");
                count += 1;
            }
        }
    }
    Ok(format!("{count} semisimple specializations, all identity"))
}

/// A1 at (3, 2) and (3, 5) against the brute-force submodule-lattice oracle.
fn known_small_matrices() -> Outcome {
    for (q, ell, expected) in [(3i64, 2u32, vec![vec![1], vec![1]]), (3, 5, vec![vec![1, 0], vec![0, 1]])] {
        let sys = system("A1");
        let d = decomposition_matrix(&sys, q, ell, 0).map_err(|e| e.to_string())?;
        ensure!(d.entries == expected, "A1 q={q} l={ell}: {:?}", d.entries);
        let f = FiniteField::prime(ell).unwrap();
        let h = HeckeAlgebra::new(Arc::clone(&sys), (*f).clone(), f.from_int(q));
        let regular: Vec<_> = (0..sys.rank()).map(|s| common::to_mat(&h.left_regular_matrix(s))).collect();
        let rows: Vec<Vec<common::Mat>> = irr_char_zero(&sys, q)
            .unwrap()
            .iter()
            .map(|rep| specialize_reduce(rep, ell, 1).unwrap().gens.iter().map(common::to_mat).collect())
            .collect();
        let (_, oracle) = common::decomposition_oracle(&rows, &regular, ell as u64);
        ensure!(
            common::column_multiset(&oracle) == common::column_multiset(&d.entries),
            "A1 q={q} l={ell}: oracle {oracle:?}"
        );
    }
    Ok("A1 (3,2) = (1,1)^T, A1 (3,5) = I, both confirmed by the oracle".into())
}

/// Principal-series factors of k[G/B] against simple Hecke modules.
fn dipper_bridge_check() -> Outcome {
    let mut count = 0;
    for (family, q) in [(GroupFamily::GL, 3u32), (GroupFamily::GL, 5), (GroupFamily::SL, 3)] {
        for ell in [2u32, 3, 5, 7] {
            let s = GroupScenario::new(family, 2, q, ell, 0).map_err(|e| e.to_string())?;
            if !s.admissible() {
                continue;
            }
            let b = dipper_bridge(&s).map_err(|e| format!("{}: {e}", s.key()))?;
            ensure!(b.principal_factors == b.hecke_irreducibles, "{}: counts {} vs {}", s.key(), b.principal_factors, b.hecke_irreducibles);
            ensure!(b.passed, "{}: B-fixed {:?} vs Hecke {:?}", s.key(), b.b_fixed_dims, b.hecke_dims);
            count += 1;
        }
    }
    Ok(format!("{count} gated scenarios of GL2(3), GL2(5), SL2(3)"))
}

/// Supports of 1 and St in GL2(F3).
fn supports_gl2_f3() -> Outcome {
    let g = FiniteMatrixGroup::build(GroupFamily::GL, 2, 3).map_err(|e| e.to_string())?;
    let t = character_table(&g).map_err(|e| e.to_string())?;
    let series = unipotent_principal_series(&g, &t).map_err(|e| e.to_string())?;
    let sys = CoxeterSystem::from_label("A1").unwrap();
    let assignment = cell_assignment(&sys).map_err(|e| e.to_string())?;
    let reps = irr_char_zero(&sys, 1).map_err(|e| e.to_string())?;
    for (label, support, dim) in [("(2)", Partition(vec![2]), 0usize), ("(1,1)", Partition(vec![1, 1]), 1)] {
        let chi = series.iter().find(|(l, _)| l.label() == label).ok_or("missing principal-series character")?.1;
        let s = unipotent_support(&g, &t, chi).map_err(|e| e.to_string())?;
        ensure!(s.class.partition == support, "{label}: support {}", s.class.partition);
        ensure!(s.class.springer_fibre_dim == dim, "{label}: dim B_u = {}", s.class.springer_fibre_dim);
        let i = reps.iter().position(|r| r.label == label).ok_or("missing Hecke representation")?;
        let a = assignment.cells.a_values[assignment.cell_of_rep[i]];
        ensure!(a as usize == dim, "{label}: Hecke a-value {a}");
    }
    let st = series.iter().find(|(l, _)| l.label() == "(1,1)").unwrap().1;
    let regular = g.lookup(&[1, 1, 0, 1]).ok_or("no regular unipotent")?;
    let av = average_value(&g, &t, st, &[(regular, 1)]).map_err(|e| e.to_string())?;
    ensure!(av.is_zero(), "AV(regular, St) = {av}");
    Ok("1 -> (2), St -> (1,1); dim B_u = a = 0, 1; AV(regular, St) = 0".into())
}

/// Ordinary degrees are values of D0(A1,id).
fn ordinary_degrees() -> Outcome {
    let set = registry_by_name("D0(A1,id)").map_err(|e| e.to_string())?;
    let mut total = 0;
    for (family, q) in [(GroupFamily::SL, 3u32), (GroupFamily::SL, 5), (GroupFamily::GL, 3), (GroupFamily::GL, 5)] {
        let g = FiniteMatrixGroup::build(family, 2, q).map_err(|e| e.to_string())?;
        let t = character_table(&g).map_err(|e| e.to_string())?;
        let point = NumberField::rationals().from_int(q as i64);
        for &d in &t.degrees {
            let hits = membership(d, &point, &set).map_err(|e| e.to_string())?;
            ensure!(!hits.is_empty(), "{}: degree {d} is not a member", g.label());
            total += 1;
        }
    }
    Ok(format!("{total} degrees of SL2(3), SL2(5), GL2(3), GL2(5); zero non-members"))
}

/// Registry constants, round-trips and twisted evaluations.
fn registry_constants() -> Outcome {
    let q = NumberField::rationals();
    let a1: Vec<Poly> = ["1", "t", "t+1", "t+-1", "1/2*t+1/2", "1/2*t+-1/2"].iter().map(|s| Poly::parse(s, &q).unwrap()).collect();
    let f = Family::C2Twisted.field();
    let c2: Vec<Poly> = ["1", "t^4", "t^4+1", "1/2*s*t^3+-1/2*s*t", "t^4+s*t^3+-1*s*t+-1", "t^4+-1*s*t^3+s*t+-1"]
        .iter()
        .map(|s| Poly::parse(s, &f).unwrap())
        .collect();
    let mut c2_ext = c2.clone();
    c2_ext.push(Poly::parse("t^4+-1", &f).unwrap());
    for (name, expected) in [("D0(A1,id)", &a1), ("D0(C2,twisted)", &c2), ("Dbar(C2,twisted)", &c2_ext)] {
        let set = registry_by_name(name).map_err(|e| e.to_string())?;
        let back = PolySet::parse_file_text(&set.to_file_text()).map_err(|e| e.to_string())?;
        let polys: Vec<Poly> = back.polys().cloned().collect();
        ensure!(&polys == expected, "{name}: round trip gives {polys:?}");
    }
    let point = parse_point("2*s", &f).map_err(|e| e.to_string())?;
    let values = |name: &str| -> Result<Vec<i64>, String> {
        let set = registry_by_name(name).map_err(|e| e.to_string())?;
        set.evaluate(&point).map_err(|e| e.to_string())?.iter().map(|v| v.to_i64().ok_or(format!("{v} not integral"))).collect()
    };
    let mut base = values("D0(C2,twisted)")?;
    base.sort_unstable();
    ensure!(base == vec![1, 14, 35, 64, 65, 91], "D0(C2,twisted)(2^(3/2)) = {base:?}");
    let ext = values("Dbar(C2,twisted)")?;
    ensure!(ext.len() == 7 && ext[6] == 63, "extension value {:?}", ext.last());
    Ok("sets reproduced; values {1,64,65,14,35,91} and 63 at q = 2^(3/2)".into())
}

/// SL2(F3) in its defining characteristic.
fn defining_control() -> Outcome {
    let g = FiniteMatrixGroup::build(GroupFamily::SL, 2, 3).map_err(|e| e.to_string())?;
    let dims = modular_irr_dims(&g, 3, 1, 0).map_err(|e| e.to_string())?;
    ensure!(dims == vec![1, 2, 3], "dims {dims:?}");
    Ok("SL2(F3), l = 3: dims {1,2,3}".into())
}

/// D0(A1,id) inside the bounded span.
fn span_contains_base() -> Outcome {
    let span = span_set_a1();
    let base = registry_by_name("D0(A1,id)").map_err(|e| e.to_string())?;
    for f in base.polys() {
        ensure!(span.contains(f), "{f} not in the span set");
    }
    Ok(format!("all 6 base polynomials among {} span polynomials", span.len()))
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    check: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "cell structure", budget: Some(Duration::from_secs(10)), check: cell_structure },
        Criterion { name: "cells vs dominance (type A)", budget: Some(Duration::from_secs(5)), check: cells_vs_dominance },
        Criterion { name: "Hecke relations", budget: None, check: hecke_relations },
        Criterion { name: "triangularity grid", budget: Some(Duration::from_secs(120)), check: triangularity_grid },
        Criterion { name: "semisimple regression", budget: None, check: semisimple_regression },
        Criterion { name: "known small matrices", budget: None, check: known_small_matrices },
        Criterion { name: "Dipper bridge", budget: Some(Duration::from_secs(60)), check: dipper_bridge_check },
        Criterion { name: "unipotent supports", budget: None, check: supports_gl2_f3 },
        Criterion { name: "ordinary degrees", budget: None, check: ordinary_degrees },
        Criterion { name: "registry constants", budget: None, check: registry_constants },
        Criterion { name: "defining-characteristic control", budget: None, check: defining_control },
        Criterion { name: "span construction", budget: None, check: span_contains_base },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} ({}) [{elapsed:.2?}]: {detail}", i + 1, c.name),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2} ({}) [{elapsed:.2?}]: {why}", i + 1, c.name);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
