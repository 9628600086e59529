//! Registries of dimension polynomials.
//!
//! A [`PolySet`] is a finite list of polynomials in `t` over `Q` or `Q(√2)`
//! whose values at `t = q` are meant to contain the dimensions of the
//! irreducible representations of a family of finite reductive groups with
//! fixed Weyl group and Frobenius action. Two families are registered
//! explicitly — split `A1` and the twisted `C2` (Suzuki-type, `q` an odd power
//! of `√2`) — together with the one-polynomial extension of the twisted
//! family needed on the modular side. [`span_set_a1`] enumerates the bounded
//! rational span of the Deligne–Lusztig dimension polynomials for `A1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{rat, ExactError, FieldRef, NumberField, NumberFieldElem, Poly, Rational};

#[derive(Debug, Error)]
pub enum DegreesError {
    #[error("unknown registry {0:?} (known: D0(A1,id), D0(C2,twisted), Dbar(C2,twisted), span(A1,id))")]
    UnknownLabel(String),
    #[error("registry file line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("evaluation point {0:?} is not a constant of the registry field")]
    BadPoint(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which family a registry describes: a Weyl type together with the
/// Frobenius twist (`id` or `twisted`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A1Split,
    C2Twisted,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::A1Split => "A1,id",
            Family::C2Twisted => "C2,twisted",
        }
    }

    /// Coefficient field of the registry: `Q` for `A1`, `Q(√2)` for twisted `C2`.
    pub fn field(self) -> FieldRef {
        match self {
            Family::A1Split => NumberField::rationals(),
            Family::C2Twisted => NumberField::quadratic(2).expect("x^2 - 2 is irreducible"),
        }
    }
}

/// The three kinds of set: the base set valid for ordinary characters, its
/// extension for modular representations, and the bounded span construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SetKind {
    Base,
    Extended,
    Span,
}

impl SetKind {
    fn prefix(self) -> &'static str {
        match self {
            SetKind::Base => "D0",
            SetKind::Extended => "Dbar",
            SetKind::Span => "span",
        }
    }
}

/// Registry name such as `D0(A1,id)` or `Dbar(C2,twisted)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RegistryLabel {
    pub kind: SetKind,
    pub family: Family,
}

impl fmt::Display for RegistryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind.prefix(), self.family.label())
    }
}

impl FromStr for RegistryLabel {
    type Err = DegreesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || DegreesError::UnknownLabel(s.to_string());
        let (prefix, rest) = compact.split_once('(').ok_or_else(unknown)?;
        let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
        let kind = match prefix {
            "D0" => SetKind::Base,
            "Dbar" => SetKind::Extended,
            "span" => SetKind::Span,
            _ => return Err(unknown()),
        };
        let family = match inner {
            "A1,id" => Family::A1Split,
            "C2,twisted" => Family::C2Twisted,
            _ => return Err(unknown()),
        };
        match (kind, family) {
            (SetKind::Extended, Family::A1Split) | (SetKind::Span, Family::C2Twisted) => Err(unknown()),
            _ => Ok(Self { kind, family }),
        }
    }
}

/// Where a polynomial of a registry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Listed explicitly in the base set.
    Base,
    /// Produced by the bounded span construction.
    SpanConstruction,
    /// Added to cover modular dimensions.
    Extension,
}

impl Provenance {
    fn tag(self) -> &'static str {
        match self {
            Provenance::Base => "base",
            Provenance::SpanConstruction => "span",
            Provenance::Extension => "extension",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyEntry {
    pub poly: Poly,
    pub provenance: Provenance,
}

/// A finite, duplicate-free set of dimension polynomials.
#[derive(Clone, Debug)]
pub struct PolySet {
    label: RegistryLabel,
    field: FieldRef,
    entries: Vec<PolyEntry>,
}

impl PolySet {
    /// Builds a set, dropping repeated polynomials (first occurrence wins).
    pub fn new(label: RegistryLabel, field: FieldRef, entries: Vec<PolyEntry>) -> Self {
        let mut seen = BTreeSet::new();
        let entries = entries.into_iter().filter(|e| seen.insert(e.poly.to_text())).collect();
        Self { label, field, entries }
    }

    pub fn label(&self) -> RegistryLabel {
        self.label
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn entries(&self) -> &[PolyEntry] {
        &self.entries
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.entries.iter().map(|e| &e.poly)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.polys().any(|p| p == f)
    }

    /// A copy with `extra` appended under [`Provenance::Extension`].
    pub fn extended_with(&self, extra: impl IntoIterator<Item = Poly>) -> PolySet {
        let mut entries = self.entries.clone();
        entries.extend(extra.into_iter().map(|poly| PolyEntry { poly, provenance: Provenance::Extension }));
        PolySet::new(self.label, self.field.clone(), entries)
    }

    /// Values of every polynomial at `q`, in registry order.
    pub fn evaluate(&self, q: &NumberFieldElem) -> Result<Vec<NumberFieldElem>, DegreesError> {
        self.polys().map(|f| Ok(f.eval(q)?)).collect()
    }

    /// Registry file text: a `label:` header, a `field:` header holding the
    /// minimal polynomial of the field generator `s` (written in `t`, or `Q`),
    /// then one polynomial per line with an optional `; provenance` suffix.
    pub fn to_file_text(&self) -> String {
        let mut out = format!("label: {}\nfield: {}\n", self.label, field_header(&self.field));
        for e in &self.entries {
            out.push_str(&e.poly.to_text());
            if e.provenance != Provenance::Base {
                out.push_str(" ; ");
                out.push_str(e.provenance.tag());
            }
            out.push('\n');
        }
        out
    }

    /// Parses [`PolySet::to_file_text`] output. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn parse_file_text(text: &str) -> Result<PolySet, DegreesError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let bad = |line: usize, reason: &str| DegreesError::Parse { line, reason: reason.to_string() };
        let (n, first) = lines.next().ok_or_else(|| bad(0, "missing label header"))?;
        let label: RegistryLabel =
            first.strip_prefix("label:").ok_or_else(|| bad(n, "expected `label:` header"))?.trim().parse()?;
        let (n, second) = lines.next().ok_or_else(|| bad(n, "missing field header"))?;
        let field_text = second.strip_prefix("field:").ok_or_else(|| bad(n, "expected `field:` header"))?.trim();
        let field = parse_field_header(field_text).map_err(|e| bad(n, &e.to_string()))?;
        let mut entries = Vec::new();
        for (n, line) in lines {
            let (poly_text, tag) = match line.split_once(';') {
                Some((p, t)) => (p.trim(), Some(t.trim())),
                None => (line, None),
            };
            let provenance = match tag {
                None | Some("base") => Provenance::Base,
                Some("span") => Provenance::SpanConstruction,
                Some("extension") => Provenance::Extension,
                Some(other) => return Err(bad(n, &format!("unknown provenance {other:?}"))),
            };
            let poly = Poly::parse(poly_text, &field).map_err(|e| bad(n, &e.to_string()))?;
            entries.push(PolyEntry { poly, provenance });
        }
        Ok(PolySet::new(label, field, entries))
    }
}

fn field_header(field: &FieldRef) -> String {
    if field.is_rationals() {
        "Q".to_string()
    } else {
        Poly::from_rationals(&NumberField::rationals(), field.min_poly()).to_text()
    }
}

fn parse_field_header(text: &str) -> Result<FieldRef, ExactError> {
    if text == "Q" {
        return Ok(NumberField::rationals());
    }
    let min_poly = Poly::parse(text, &NumberField::rationals())?;
    crate::exactalg::field_create(&min_poly)
}

/// Parses an evaluation point in `field`, written as a constant of the
/// polynomial text format (`5`, `2*s`, `1/2*s^1`); in `Q(√2)`, `s = √2`.
pub fn parse_point(text: &str, field: &FieldRef) -> Result<NumberFieldElem, DegreesError> {
    let p = Poly::parse(text, field).map_err(|_| DegreesError::BadPoint(text.to_string()))?;
    if p.degree().unwrap_or(0) != 0 || p.low_degree().unwrap_or(0) != 0 {
        return Err(DegreesError::BadPoint(text.to_string()));
    }
    Ok(p.coeff(0))
}

fn q_poly(field: &FieldRef, coeffs: &[Rational]) -> Poly {
    Poly::from_rationals(field, coeffs)
}

fn base_entries(polys: Vec<Poly>) -> Vec<PolyEntry> {
    polys.into_iter().map(|poly| PolyEntry { poly, provenance: Provenance::Base }).collect()
}

/// `{1, t, t+1, t-1, (t+1)/2, (t-1)/2}` over `Q`.
fn base_a1() -> Vec<Poly> {
    let q = NumberField::rationals();
    let r = |n, d| rat(n, d);
    vec![
        q_poly(&q, &[r(1, 1)]),
        q_poly(&q, &[r(0, 1), r(1, 1)]),
        q_poly(&q, &[r(1, 1), r(1, 1)]),
        q_poly(&q, &[r(-1, 1), r(1, 1)]),
        q_poly(&q, &[r(1, 2), r(1, 2)]),
        q_poly(&q, &[r(-1, 2), r(1, 2)]),
    ]
}

/// `{1, t^4, t^4+1, t(t^2-1)/√2, (t^2-1)(t^2+√2 t+1), (t^2-1)(t^2-√2 t+1)}` over `Q(√2)`.
fn base_c2_twisted(field: &FieldRef) -> Vec<Poly> {
    let one = Poly::constant(field.one());
    let t = Poly::t(field);
    let t2 = &t * &t;
    let t4 = &t2 * &t2;
    let sqrt2 = field.generator();
    let inv_sqrt2 = sqrt2.inv().expect("sqrt 2 is nonzero");
    let t2_minus_1 = &t2 - &one;
    let sqrt2_t = t.scale(&sqrt2);
    vec![
        one.clone(),
        t4.clone(),
        &t4 + &one,
        (&t * &t2_minus_1).scale(&inv_sqrt2),
        &t2_minus_1 * &(&(&t2 + &sqrt2_t) + &one),
        &t2_minus_1 * &(&(&t2 - &sqrt2_t) + &one),
    ]
}

/// The one polynomial added to the twisted `C2` base set on the modular side.
pub fn c2_twisted_extension(field: &FieldRef) -> Poly {
    let t = Poly::t(field);
    let t2 = &t * &t;
    &(&t2 * &t2) - &Poly::constant(field.one())
}

/// The registered set named by `label`.
pub fn registry(label: RegistryLabel) -> PolySet {
    let field = label.family.field();
    match (label.kind, label.family) {
        (SetKind::Base, Family::A1Split) => PolySet::new(label, field, base_entries(base_a1())),
        (SetKind::Base, Family::C2Twisted) => {
            let polys = base_c2_twisted(&field);
            PolySet::new(label, field, base_entries(polys))
        }
        (SetKind::Extended, Family::C2Twisted) => {
            let base = registry(RegistryLabel { kind: SetKind::Base, family: Family::C2Twisted });
            let mut set = base.extended_with([c2_twisted_extension(&field)]);
            set.label = label;
            set
        }
        (SetKind::Span, Family::A1Split) => span_set_a1(),
        (SetKind::Extended, Family::A1Split) | (SetKind::Span, Family::C2Twisted) => {
            unreachable!("RegistryLabel parsing rejects {label}")
        }
    }
}

/// [`registry`] by name, e.g. `"D0(A1,id)"`.
pub fn registry_by_name(name: &str) -> Result<PolySet, DegreesError> {
    Ok(registry(name.parse()?))
}

/// All `f` in `set` with `f(q) = n`, in registry order.
pub fn membership<'a>(n: i64, q: &NumberFieldElem, set: &'a PolySet) -> Result<Vec<&'a PolyEntry>, DegreesError> {
    let target = q.field().from_int(n);
    let mut out = Vec::new();
    for e in set.entries() {
        if e.poly.eval(q)? == target {
            out.push(e);
        }
    }
    Ok(out)
}

/// Coefficients `a/b` with `|a| <= 2` and `0 < |b| <= 2`, i.e. the bound
/// `|a_w| <= |W|` for `W` of order 2.
fn span_coefficients() -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for a in -2i64..=2 {
        for b in [-2i64, -1, 1, 2] {
            let c = rat(a, b);
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

/// Every combination `c_e (t+1) + c_s (t-1)` with `c = a/b`, `|a| <= 2`,
/// `0 < |b| <= 2`, deduplicated. `t+1` and `t-1` are the dimension
/// polynomials of the Deligne–Lusztig characters of `GL_2`/`SL_2` for the
/// split and the non-split torus (up to sign).
pub fn span_set_a1() -> PolySet {
    let q = NumberField::rationals();
    let split = q_poly(&q, &[rat(1, 1), rat(1, 1)]);
    let nonsplit = q_poly(&q, &[rat(-1, 1), rat(1, 1)]);
    let coeffs = span_coefficients();
    let mut entries = Vec::new();
    for ce in &coeffs {
        for cs in &coeffs {
            let poly = &split.scale(&q.from_rational(ce.clone())) + &nonsplit.scale(&q.from_rational(cs.clone()));
            entries.push(PolyEntry { poly, provenance: Provenance::SpanConstruction });
        }
    }
    PolySet::new(RegistryLabel { kind: SetKind::Span, family: Family::A1Split }, q, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_parse_and_print() {
        for name in ["D0(A1,id)", "D0(C2,twisted)", "Dbar(C2,twisted)", "span(A1,id)"] {
            assert_eq!(name.parse::<RegistryLabel>().unwrap().to_string(), name);
        }
        for bad in ["Dbar(A1,id)", "D0(B2,id)", "D0 A1", "span(C2,twisted)"] {
            assert!(matches!(bad.parse::<RegistryLabel>(), Err(DegreesError::UnknownLabel(_))));
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(registry_by_name("D0(A1,id)").unwrap().len(), 6);
        assert_eq!(registry_by_name("D0(C2,twisted)").unwrap().len(), 6);
        assert_eq!(registry_by_name("Dbar(C2,twisted)").unwrap().len(), 7);
        assert_eq!(span_set_a1().len(), 49);
    }

    #[test]
    fn evaluation_point_parsing() {
        let f = Family::C2Twisted.field();
        let q = parse_point("2*s", &f).unwrap();
        assert_eq!(&q * &q, f.from_int(8));
        assert!(parse_point("t", &f).is_err());
        assert_eq!(parse_point("5", &NumberField::rationals()).unwrap().to_i64(), Some(5));
    }
}
