use crate::combinat::{partitions, Partition};
use crate::coxeter::{CoxeterSystem, CoxeterType, GroupElement};
use crate::exactalg::matrix::{mat_mul, mat_trace, Matrix};
use crate::exactalg::{rat, FieldRef, NumberField, NumberFieldElem, Rational, Ring};

use super::HeckeError;

/// An exact matrix representation of the Hecke algebra at an integer `q`:
/// images of the generators `T_s` acting on column vectors.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub label: String,
    pub field: FieldRef,
    pub q: i64,
    pub gens: Vec<Matrix<NumberFieldElem>>,
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.gens.first().map_or(0, |g| g.rows())
    }

    /// Image of `T_w`.
    pub fn element_matrix(&self, sys: &CoxeterSystem, w: GroupElement) -> Matrix<NumberFieldElem> {
        sys.word(w)
            .iter()
            .fold(Matrix::identity(&self.field, self.dim()), |acc, &s| mat_mul(&self.field, &acc, &self.gens[s as usize]))
    }

    /// Traces of `T_w` for every group element in enumeration order.
    pub fn character(&self, sys: &CoxeterSystem) -> Vec<NumberFieldElem> {
        sys.enumerate().into_iter().map(|w| mat_trace(&self.field, &self.element_matrix(sys, w))).collect()
    }

    pub fn satisfies_relations(&self, sys: &CoxeterSystem) -> bool {
        check_relations(&self.field, &self.field.from_int(self.q), &self.gens, sys.coxeter_matrix())
    }
}

/// Checks `(T_s - q)(T_s + 1) = 0` and the braid relations for matrices over `ring`.
pub fn check_relations<R: Ring>(ring: &R, q: &R::Elem, gens: &[Matrix<R::Elem>], coxeter: &[Vec<u32>]) -> bool {
    let n = match gens.first() {
        Some(g) => g.rows(),
        None => return true,
    };
    let id = Matrix::identity(ring, n);
    let shift = |m: &Matrix<R::Elem>, c: &R::Elem| -> Matrix<R::Elem> {
        let mut out = m.clone();
        for i in 0..n {
            let v = ring.add(out.get(i, i), c);
            out.set(i, i, v);
        }
        out
    };
    for g in gens {
        let a = shift(g, &ring.neg(q));
        let b = shift(g, &ring.one());
        if !crate::exactalg::matrix::mat_is_zero(ring, &mat_mul(ring, &a, &b)) {
            return false;
        }
    }
    for s in 0..gens.len() {
        for t in s + 1..gens.len() {
            let m = coxeter[s][t] as usize;
            let mut left = id.clone();
            let mut right = id.clone();
            for k in 0..m {
                let (x, y) = if k % 2 == 0 { (s, t) } else { (t, s) };
                left = mat_mul(ring, &left, &gens[x]);
                right = mat_mul(ring, &right, &gens[y]);
            }
            if left != right {
                return false;
            }
        }
    }
    true
}

/// A complete list of pairwise non-isomorphic irreducible representations at
/// the integer parameter `q` (`q = 1` gives the representations of `W`).
pub fn irr_char_zero(sys: &CoxeterSystem, q: i64) -> Result<Vec<MatrixRep>, HeckeError> {
    let reps = match sys.kind() {
        CoxeterType::A(n) if n <= 3 => partitions(n + 1).iter().map(|p| seminormal(p, q)).collect(),
        CoxeterType::A(_) => return Err(HeckeError::UnsupportedType(sys.label())),
        kind => dihedral(kind.dihedral_order().expect("rank two"), q)?,
    };
    for r in &reps {
        if !r.satisfies_relations(sys) {
            return Err(HeckeError::Relations(r.label.clone()));
        }
    }
    Ok(reps)
}

/// `[k]_q = 1 + q + ... + q^{k-1}`.
fn quantum_int(k: i64, q: i64) -> Rational {
    rat((0..k).map(|i| q.pow(i as u32)).sum(), 1)
}

/// Hoefsmit's seminormal form on standard tableaux of `shape`.
fn seminormal(shape: &Partition, q: i64) -> MatrixRep {
    let field = NumberField::rationals();
    let tableaux = shape.standard_tableaux();
    let d = tableaux.len();
    let n = shape.size();
    let index_of = |t: &Vec<(usize, usize)>| tableaux.iter().position(|x| x == t).expect("standard tableau");
    let qr = rat(q, 1);
    let gens = (0..n - 1)
        .map(|i| {
            let mut m = Matrix::zeros(&field, d, d);
            for (j, t) in tableaux.iter().enumerate() {
                let (a, b) = (t[i], t[i + 1]);
                if a.0 == b.0 {
                    m.set(j, j, field.from_int(q));
                } else if a.1 == b.1 {
                    m.set(j, j, field.from_int(-1));
                } else {
                    let content = |c: (usize, usize)| c.1 as i64 - c.0 as i64;
                    let rho = content(b) - content(a);
                    let k = rho.abs();
                    let qk = quantum_int(k, q);
                    let qpow = rat(q.pow(k as u32), 1);
                    let (diag, off) = if rho > 0 {
                        (&qpow / &qk, Rational::from_integer(1.into()))
                    } else {
                        (-(Rational::from_integer(1.into()) / &qk), &qr - &qpow / (&qk * &qk))
                    };
                    let mut swapped = t.clone();
                    swapped.swap(i, i + 1);
                    let jj = index_of(&swapped);
                    m.set(j, j, field.from_rational(diag));
                    m.set(jj, j, field.from_rational(off));
                }
            }
            m
        })
        .collect();
    MatrixRep { label: shape.label(), field, q, gens }
}

/// `2cos(2πj/m)` as a polynomial in the generator `s = 2cos(2π/m)`.
fn two_cos(field: &FieldRef, m: u32, j: u32) -> NumberFieldElem {
    let s = if field.is_rationals() {
        field.from_rational(rat(two_cos_rational(m).expect("rational case"), 1))
    } else {
        field.generator()
    };
    let mut prev = field.from_int(2);
    let mut cur = s.clone();
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        let next = &(&s * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn two_cos_rational(m: u32) -> Option<i64> {
    match m {
        1 => Some(2),
        2 => Some(-2),
        3 => Some(-1),
        4 => Some(0),
        6 => Some(1),
        _ => None,
    }
}

fn dihedral(m: u32, q: i64) -> Result<Vec<MatrixRep>, HeckeError> {
    let field = NumberField::real_cyclotomic(m)?;
    let c = |x: i64| field.from_int(x);
    let one_dim = |label: &str, a: i64, b: i64| MatrixRep {
        label: label.to_string(),
        field: field.clone(),
        q,
        gens: vec![Matrix::from_rows(vec![vec![c(a)]]), Matrix::from_rows(vec![vec![c(b)]])],
    };
    let mut reps = vec![one_dim("index", q, q), one_dim("sign", -1, -1)];
    if m % 2 == 0 {
        reps.push(one_dim("mixed_s", q, -1));
        reps.push(one_dim("mixed_t", -1, q));
    }
    for j in 1..=(m - 1) / 2 {
        let t2 = &(&c(2) + &two_cos(&field, m, j)) * &c(q);
        let ts = Matrix::from_rows(vec![vec![c(-1), c(0)], vec![c(1), c(q)]]);
        let tt = Matrix::from_rows(vec![vec![c(q), t2], vec![c(0), c(-1)]]);
        reps.push(MatrixRep { label: format!("refl_{j}"), field: field.clone(), q, gens: vec![ts, tt] });
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_counts() {
        for (label, dims) in [
            ("A1", vec![1, 1]),
            ("A2", vec![1, 2, 1]),
            ("A3", vec![1, 3, 2, 3, 1]),
            ("C2", vec![1, 1, 1, 1, 2]),
            ("G2", vec![1, 1, 1, 1, 2, 2]),
            ("I2(5)", vec![1, 1, 2, 2]),
        ] {
            let sys = CoxeterSystem::from_label(label).unwrap();
            for q in [1, 2, 3] {
                let reps = irr_char_zero(&sys, q).unwrap();
                let got: Vec<usize> = reps.iter().map(|r| r.dim()).collect();
                assert_eq!(got, dims, "{label} q={q}");
                assert_eq!(got.iter().map(|d| d * d).sum::<usize>(), sys.order());
            }
        }
    }
}
