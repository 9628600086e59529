use cellblocks::coxeter::CoxeterSystem;
use cellblocks::hecke::poincare_value;
use cellblocks::lietype::GroupFamily;
use cellblocks::verify::{
    cells_summary, dipper_bridge, hecke_grid, run_verification, verify_cells_vs_dominance, verify_dimension_polynomials,
    verify_support_closure, verify_triangularity, GroupScenario, Scenario, VerifyConfig, VerifyError,
};
use proptest::prelude::*;

fn pairs(v: &[(String, String)]) -> Vec<(&str, &str)> {
    v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

#[test]
fn triangularity_examples() {
    let f = verify_triangularity(&Scenario::new("A1", 3, 2, 0).unwrap()).unwrap();
    assert!(f.violations.is_empty());
    assert_eq!(pairs(&f.injection), vec![("M0", "(2)")]);
    assert!(f.injection_unique && f.cell_implies_a && !f.semisimple);
    assert_eq!(f.decomposition.entries, vec![vec![1], vec![1]]);

    let f = verify_triangularity(&Scenario::new("A2", 2, 5, 0).unwrap()).unwrap();
    assert!(f.semisimple && f.decomposition.is_identity() && f.violations.is_empty());
    assert_eq!(f.poincare_value, 21);

    let f = verify_triangularity(&Scenario::new("C2", 3, 5, 0).unwrap()).unwrap();
    assert!(f.violations.is_empty(), "{:?}", f.violations);
    assert!(f.cell_mode.passed && f.a_mode.passed);
}

#[test]
fn bad_scenarios_are_rejected_or_excluded() {
    assert!(matches!(Scenario::new("A1", 6, 5, 0), Err(VerifyError::NotPrimePower(6))));
    assert!(matches!(Scenario::new("A1", 3, 4, 0), Err(VerifyError::NotPrime(4))));
    assert!(matches!(Scenario::new("F4", 3, 5, 0), Err(VerifyError::Coxeter(_))));
    let config = VerifyConfig { types: vec!["C2".into(), "I2(5)".into()], ..VerifyConfig::default() };
    let (run, excluded) = hecke_grid(&config).unwrap();
    assert!(run.iter().all(|s| s.type_label == "C2" && s.ell != 2));
    assert!(excluded.iter().any(|e| e.key == "C2/q=3/l=2" && e.reason.contains("bad")));
    assert!(excluded.iter().any(|e| e.key.starts_with("I2(5)") && e.reason.contains("non-crystallographic")));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn semisimple_scenarios_give_identity(t in 0usize..5, q in prop::sample::select(vec![2i64, 3, 4, 5]), ell in prop::sample::select(vec![2u32, 3, 5, 7, 11]), seed in 0u64..1000) {
        let label = ["A1", "A2", "A3", "C2", "G2"][t];
        let s = Scenario::new(label, q, ell, seed).unwrap();
        prop_assume!(!s.flags.defining_control);
        let sys = CoxeterSystem::from_label(label).unwrap();
        prop_assume!(poincare_value(&sys, q) % ell as i128 != 0);
        let f = verify_triangularity(&s).unwrap();
        prop_assert!(f.semisimple);
        prop_assert!(f.decomposition.is_identity());
    }

    #[test]
    fn fragments_are_reproducible(t in 0usize..3, q in prop::sample::select(vec![2i64, 3, 5]), ell in prop::sample::select(vec![2u32, 3, 5]), seed in 0u64..1000) {
        let label = ["A1", "A2", "C2"][t];
        let s = Scenario::new(label, q, ell, seed).unwrap();
        prop_assume!(!s.flags.defining_control);
        let a = serde_json::to_string(&verify_triangularity(&s).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_triangularity(&s).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn cells_against_dominance() {
    for (n, sizes) in [(2, 2), (3, 3), (4, 5), (5, 7)] {
        let f = verify_cells_vs_dominance(n).unwrap();
        assert!(f.isomorphic, "{n}: {:?}", f.violations);
        assert_eq!(f.cells.len(), sizes);
    }
    let f = verify_cells_vs_dominance(3).unwrap();
    let a: Vec<(u32, &str)> = f.cells.iter().map(|(a, _, l)| (*a, l.as_str())).collect();
    assert_eq!(a, vec![(0, "(3)"), (1, "(2,1)"), (3, "(1,1,1)")]);
    let mut a4: Vec<u32> = verify_cells_vs_dominance(4).unwrap().cells.iter().map(|c| c.0).collect();
    a4.sort_unstable();
    assert_eq!(a4, vec![0, 1, 2, 3, 6]);
    assert!(matches!(verify_cells_vs_dominance(6), Err(VerifyError::UnsupportedRank(6))));
}

#[test]
fn support_closure_examples() {
    let s = GroupScenario::new(GroupFamily::GL, 2, 3, 2, 0).unwrap();
    let f = verify_support_closure(&s).unwrap();
    assert!(f.violations.is_empty(), "{:?}", f.violations);
    assert_eq!(f.entries, vec![vec![1], vec![1]]);
    assert_eq!(pairs(&f.labelling), vec![("M0", "(2)")]);
    let supports: Vec<&str> = f.characters.iter().map(|c| c.support.as_str()).collect();
    assert_eq!(supports, vec!["(2)", "(1,1)"]);
    assert!(f.diagonal_ones && f.support_drops && f.a_matches_springer && f.bridge.passed);

    let f = verify_support_closure(&GroupScenario::new(GroupFamily::GL, 2, 5, 3, 0).unwrap()).unwrap();
    assert!(f.violations.is_empty());
    assert_eq!(f.entries, vec![vec![1], vec![1]]);

    let f = verify_support_closure(&GroupScenario::new(GroupFamily::GL, 2, 3, 5, 0).unwrap()).unwrap();
    assert!(f.violations.is_empty());
    assert_eq!(f.entries, vec![vec![1, 0], vec![0, 1]]);

    let f = verify_support_closure(&GroupScenario::new(GroupFamily::GL, 3, 2, 7, 0).unwrap()).unwrap();
    assert!(f.violations.is_empty(), "{:?}", f.violations);
    assert_eq!(f.entries, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
}

#[test]
fn bridge_gating() {
    let sl = GroupScenario::new(GroupFamily::SL, 2, 3, 2, 0).unwrap();
    assert!(!sl.centre_condition && !sl.admissible());
    let def = GroupScenario::new(GroupFamily::SL, 2, 3, 3, 0).unwrap();
    assert!(def.flags.defining_control && !def.admissible());
    assert!(dipper_bridge(&def).is_err());
    let b = dipper_bridge(&GroupScenario::new(GroupFamily::SL, 2, 5, 3, 0).unwrap()).unwrap();
    assert!(b.passed);
    assert_eq!(b.hecke_dims, vec![1]);
}

#[test]
fn dimension_polynomials_and_controls() {
    let groups = [(GroupFamily::SL, 2, 3), (GroupFamily::SL, 2, 5), (GroupFamily::GL, 2, 3)];
    let f = verify_dimension_polynomials(&groups, &[2, 5], 0).unwrap();
    assert!(f.violations.is_empty(), "{:?}", f.violations);
    let control = f.controls.iter().find(|t| t.group == "SL2(F3)").unwrap();
    assert_eq!(control.dims, vec![1, 2, 3]);
    assert!(control.defining_control);
    assert_eq!(control.note.as_deref(), Some("defining characteristic: membership not expected"));
    let ordinary = f.ordinary.iter().find(|t| t.group == "SL2(F5)").unwrap();
    assert_eq!(ordinary.dims, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    assert!(ordinary.non_members.is_empty());
    let gl = f.ordinary.iter().find(|t| t.group == "GL2(F3)").unwrap();
    assert!(gl.checks.iter().all(|c| c.matches.iter().any(|m| !m.contains("1/2*t"))));
    // l = 3 is the defining characteristic of SL2(F3) and GL2(F3): no modular rows
    assert!(f.modular.iter().all(|t| !(t.group.ends_with("(F3)") && t.ell == Some(3))));
}

#[test]
fn reports_are_deterministic_and_clean() {
    let config = VerifyConfig {
        types: vec!["A1".into(), "A2".into()],
        q: vec![2, 3],
        ell: vec![2, 3, 5],
        seed: 11,
        output: None,
        groups: vec!["GL2(3)".into(), "SL2(3)".into()],
        type_a_ranks: vec![2, 3],
    };
    let a = run_verification(&config).unwrap();
    let b = run_verification(&config).unwrap();
    assert_eq!(serde_json::to_value(&a).unwrap(), serde_json::to_value(&b).unwrap());
    assert!(a.clean(), "{:?}", a.violations);
    assert_eq!(a.summary.triangularity_scenarios, 8);
    assert_eq!(a.summary.triangularity_passed, 8);
    assert!(a.triangularity.contains_key("A1/q=3/l=2"));
    assert!(a.support_closure.contains_key("GL2(3)/l=2"));
    assert!(!a.support_closure.contains_key("SL2(3)/l=2"));
    assert!(!a.partial_coverage.is_empty());
}

#[test]
fn config_defaults() {
    let c: VerifyConfig = serde_json::from_str("{}").unwrap();
    assert_eq!(c, VerifyConfig::default());
    assert_eq!(c.types, vec!["A1", "A2", "A3", "C2", "G2"]);
    assert!(serde_json::from_str::<VerifyConfig>(r#"{"typo": 1}"#).is_err());
}

#[test]
fn cell_summaries() {
    let s = cells_summary("A2").unwrap();
    assert_eq!(s.order, 6);
    let sizes: Vec<(u32, usize)> = s.cells.iter().map(|(_, a, m)| (*a, m.len())).collect();
    assert_eq!(sizes, vec![(0, 1), (1, 4), (3, 1)]);
    assert_eq!(s.cells[0].2, vec!["e"]);
    assert_eq!(s.hasse.len(), 2);
}
