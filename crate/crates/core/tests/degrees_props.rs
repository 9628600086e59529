use cellblocks::degrees::{
    membership, parse_point, registry, registry_by_name, span_set_a1, DegreesError, Family, PolySet, Provenance,
    RegistryLabel, SetKind,
};
use cellblocks::exactalg::{rat, NumberField, Poly, Rational};
use cellblocks::lietype::{character_table, FiniteMatrixGroup, GroupFamily};
use proptest::prelude::*;

/// The base sets written out by hand, expanded into monomials.
#[test]
fn registries_match_hand_expanded_sets() {
    let q = NumberField::rationals();
    let a1: Vec<Poly> = ["1", "t", "t+1", "t+-1", "1/2*t+1/2", "1/2*t+-1/2"].iter().map(|s| Poly::parse(s, &q).unwrap()).collect();
    let set = registry_by_name("D0(A1,id)").unwrap();
    assert_eq!(set.polys().cloned().collect::<Vec<_>>(), a1);

    let f = Family::C2Twisted.field();
    let c2: Vec<Poly> = [
        "1",
        "t^4",
        "t^4+1",
        "1/2*s*t^3+-1/2*s*t",
        "t^4+s*t^3+-1*s*t+-1",
        "t^4+-1*s*t^3+s*t+-1",
    ]
    .iter()
    .map(|s| Poly::parse(s, &f).unwrap())
    .collect();
    let set = registry_by_name("D0(C2,twisted)").unwrap();
    assert_eq!(set.polys().cloned().collect::<Vec<_>>(), c2);
    assert!(set.entries().iter().all(|e| e.provenance == Provenance::Base));

    let ext = registry_by_name("Dbar(C2,twisted)").unwrap();
    assert_eq!(ext.len(), 7);
    assert_eq!(ext.polys().take(6).cloned().collect::<Vec<_>>(), c2);
    assert_eq!(ext.entries()[6].poly, Poly::parse("t^4+-1", &f).unwrap());
    assert_eq!(ext.entries()[6].provenance, Provenance::Extension);
}

#[test]
fn registries_round_trip_through_file_text() {
    for name in ["D0(A1,id)", "D0(C2,twisted)", "Dbar(C2,twisted)", "span(A1,id)"] {
        let set = registry_by_name(name).unwrap();
        let text = set.to_file_text();
        let back = PolySet::parse_file_text(&text).unwrap();
        assert_eq!(back.label(), set.label());
        assert_eq!(back.field(), set.field());
        assert_eq!(back.entries(), set.entries());
        assert_eq!(back.to_file_text(), text, "{name}");
    }
}

#[test]
fn file_text_errors() {
    assert!(matches!(PolySet::parse_file_text(""), Err(DegreesError::Parse { .. })));
    assert!(matches!(PolySet::parse_file_text("field: Q\n1\n"), Err(DegreesError::Parse { line: 1, .. })));
    assert!(matches!(PolySet::parse_file_text("label: D0(G2,id)\nfield: Q\n"), Err(DegreesError::UnknownLabel(_))));
    assert!(matches!(PolySet::parse_file_text("label: D0(A1,id)\nfield: Q\nt+*\n"), Err(DegreesError::Parse { line: 3, .. })));
    assert!(matches!(
        PolySet::parse_file_text("label: D0(A1,id)\nfield: Q\nt ; borrowed\n"),
        Err(DegreesError::Parse { line: 3, .. })
    ));
    // comments and duplicates
    let set = PolySet::parse_file_text("# header comment\nlabel: D0(A1,id)\nfield: Q\n\nt\nt\n1\n").unwrap();
    assert_eq!(set.len(), 2);
}

#[test]
fn twisted_evaluations() {
    let f = Family::C2Twisted.field();
    let q = parse_point("2*s", &f).unwrap(); // 2^{3/2}
    let values: Vec<i64> =
        registry_by_name("D0(C2,twisted)").unwrap().evaluate(&q).unwrap().iter().map(|v| v.to_i64().unwrap()).collect();
    assert_eq!(values, vec![1, 64, 65, 14, 91, 35]);
    let ext: Vec<i64> =
        registry_by_name("Dbar(C2,twisted)").unwrap().evaluate(&q).unwrap().iter().map(|v| v.to_i64().unwrap()).collect();
    assert_eq!(ext[6], 63);
    // |Sz(8)| = q^4 (q^2 - 1)(q^4 + 1) = 29120 = Σ d^2 with the multiplicities of the ordinary table
    // 1, 14 (x2), 35 (x3), 64, 65 (x3), 91 (x1): 1 + 392 + 3675 + 4096 + 12675 + 8281 = 29120
    let sum: i64 = [(1, 1), (14, 2), (35, 3), (64, 1), (65, 3), (91, 1)].iter().map(|(d, m)| d * d * m).sum();
    assert_eq!(sum, 64 * 7 * 65);
}

#[test]
fn membership_examples() {
    let q5 = NumberField::rationals().from_int(5);
    let a1 = registry_by_name("D0(A1,id)").unwrap();
    let hits = membership(3, &q5, &a1).unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].poly.to_text(), "1/2*t^0+1/2*t^1");

    let f = Family::C2Twisted.field();
    let q = parse_point("2*s", &f).unwrap();
    let c2 = registry_by_name("D0(C2,twisted)").unwrap();
    let hits = membership(14, &q, &c2).unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].poly, Poly::parse("1/2*s*t^3+-1/2*s*t", &f).unwrap());
    assert!(membership(63, &q, &c2).unwrap().is_empty());
    let ext = registry(RegistryLabel { kind: SetKind::Extended, family: Family::C2Twisted });
    let hits = membership(63, &q, &ext).unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].poly, Poly::parse("t^4+-1", &f).unwrap());
}

/// `c0 + c1 q` by hand for the linear base polynomials of `A1`.
fn a1_values_by_hand(q: i64) -> Vec<Rational> {
    let q = rat(q, 1);
    vec![
        rat(1, 1),
        q.clone(),
        &q + rat(1, 1),
        &q - rat(1, 1),
        (&q + rat(1, 1)) / rat(2, 1),
        (&q - rat(1, 1)) / rat(2, 1),
    ]
}

proptest! {
    #[test]
    fn membership_is_sound_and_complete(n in -3i64..60, q in 0i64..60) {
        let set = registry_by_name("D0(A1,id)").unwrap();
        let point = NumberField::rationals().from_int(q);
        let hits: Vec<usize> = membership(n, &point, &set)
            .unwrap()
            .iter()
            .map(|e| set.entries().iter().position(|x| x == *e).unwrap())
            .collect();
        let expected: Vec<usize> =
            a1_values_by_hand(q).iter().enumerate().filter(|(_, v)| **v == rat(n, 1)).map(|(i, _)| i).collect();
        prop_assert_eq!(hits, expected);
    }

    #[test]
    fn extended_sets_round_trip(coeffs in prop::collection::vec((-9i64..10, 1i64..5), 1..5)) {
        let f = Family::C2Twisted.field();
        let s = f.generator();
        let mut extra = Poly::zero(&f);
        for (k, (a, b)) in coeffs.iter().enumerate() {
            let c = &f.from_rational(rat(*a, *b)) * &s.pow(k as u32 % 2);
            extra = &extra + &Poly::monomial(c, k as i64);
        }
        let set = registry_by_name("Dbar(C2,twisted)").unwrap().extended_with([extra]);
        let back = PolySet::parse_file_text(&set.to_file_text()).unwrap();
        prop_assert_eq!(back.entries(), set.entries());
    }
}

/// `f = α(t+1) + β(t-1)` has `α = (c0 + c1)/2`, `β = (c1 - c0)/2`.
fn span_coordinates(f: &Poly) -> Option<(Rational, Rational)> {
    if f.degree().unwrap_or(0) > 1 || f.low_degree().unwrap_or(0) < 0 {
        return None;
    }
    let c0 = f.coeff(0).to_rational().unwrap();
    let c1 = f.coeff(1).to_rational().unwrap();
    Some(((&c0 + &c1) / rat(2, 1), (&c1 - &c0) / rat(2, 1)))
}

fn admissible(c: &Rational) -> bool {
    (-2..=2).any(|a: i64| [-2i64, -1, 1, 2].iter().any(|&b| rat(a, b) == *c))
}

#[test]
fn span_set_contains_base_set() {
    let span = span_set_a1();
    let q = NumberField::rationals();
    assert!(span.contains(&Poly::parse("1", &q).unwrap()));
    assert!(span.contains(&Poly::parse("t", &q).unwrap()));
    let base = registry_by_name("D0(A1,id)").unwrap();
    for f in base.polys() {
        assert!(span.contains(f), "{f}");
        let (alpha, beta) = span_coordinates(f).unwrap();
        assert!(admissible(&alpha) && admissible(&beta));
    }
    // every member is an admissible combination, and every admissible one is a member
    for f in span.polys() {
        let (alpha, beta) = span_coordinates(f).unwrap();
        assert!(admissible(&alpha) && admissible(&beta), "{f}");
    }
    let values = [rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1)];
    assert_eq!(span.len(), values.len() * values.len());
    // t^2 is not a combination of the two linear polynomials
    assert!(!span.contains(&Poly::parse("t^2", &q).unwrap()));
}

#[test]
fn ordinary_degrees_are_base_members() {
    let set = registry_by_name("D0(A1,id)").unwrap();
    for (family, q) in [(GroupFamily::SL, 3), (GroupFamily::SL, 5), (GroupFamily::GL, 3), (GroupFamily::GL, 5), (GroupFamily::SL, 4)] {
        let g = FiniteMatrixGroup::build(family, 2, q).unwrap();
        let t = character_table(&g).unwrap();
        let point = NumberField::rationals().from_int(q as i64);
        for &d in &t.degrees {
            let hits = membership(d, &point, &set).unwrap();
            assert!(!hits.is_empty(), "{} degree {d}", g.label());
            if family == GroupFamily::GL {
                // the half-sums (t±1)/2 are never needed for GL2
                assert!(hits.iter().any(|h| h.poly.coeff(1).to_rational().is_none_or(|c| c == rat(0, 1) || c == rat(1, 1))));
            }
        }
    }
}
