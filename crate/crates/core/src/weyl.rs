//! The q-Weyl algebra `A_q(A_{r+1})` acting on `P`, the q-Leibniz rule, and
//! the oscillator realization `χ_r` of `U_q(sl_{r+2})`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::operator::{ActionTable, Generator, GeneratorFamily, OperatorExpr, RelationInstance};
use crate::poly::{ExponentVector, QPolynomial};
use crate::scalar::{q_integer, LaurentPoly, ScalarQ};

use GeneratorFamily::{WeylD, WeylM, WeylX};

/// `q - q^-1`.
pub(crate) fn q_minus_q_inv() -> ScalarQ {
    ScalarQ::from(&LaurentPoly::q_pow(1) - &LaurentPoly::q_pow(-1))
}

pub(crate) fn check_index(what: &'static str, index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { what, index, bound })
    }
}

/// Monomial actions of `𝒟_i`, `𝒳_i`, `𝑀_i^{±1}` on `Q(q)[X_0, ..., X_{n-1}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylTable {
    nvars: usize,
}

impl WeylTable {
    pub fn new(nvars: usize) -> Self {
        Self { nvars }
    }

    /// The table for `A_q(A_{r+1})`, on `r + 2` variables.
    pub fn for_rank(r: usize) -> Self {
        Self::new(r + 2)
    }
}

impl ActionTable for WeylTable {
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn act(&self, g: &Generator, a: &ExponentVector) -> Result<QPolynomial> {
        let i = g.index;
        check_index("variable", i, self.nvars)?;
        let ai = a.get(i);
        Ok(match (g.family, g.inverse) {
            (WeylD, false) => match a.decremented(i) {
                Some(b) => QPolynomial::monomial(b, ScalarQ::from(q_integer(i64::from(ai)))),
                None => QPolynomial::zero(self.nvars),
            },
            (WeylX, false) => QPolynomial::monomial(a.incremented(i), ScalarQ::one()),
            (WeylM, inv) => {
                let e = ai as i32;
                QPolynomial::monomial(a.clone(), ScalarQ::q_pow(if inv { -e } else { e }))
            }
            _ => return Err(Error::UnknownSymbol(*g)),
        })
    }
}

/// `𝒟_i f` computed literally as `(f(.., qX_i, ..) - f(.., q^-1 X_i, ..)) / ((q - q^-1) X_i)`.
pub fn d_substitution(i: usize, p: &QPolynomial) -> Result<QPolynomial> {
    check_index("variable", i, p.nvars())?;
    let diff = &p.substitute_q_power(i, 1) - &p.substitute_q_power(i, -1);
    let inv = q_minus_q_inv().inverse().expect("q - q^-1 is nonzero");
    let mut out = QPolynomial::zero(p.nvars());
    for (a, c) in diff.terms() {
        // Terms constant in X_i cancel in the difference.
        let b = a.decremented(i).expect("difference vanishes where a_i = 0");
        out.add_term(b, &(c * &inv))?;
    }
    Ok(out)
}

/// Whether `𝒟_i(fg) = 𝒟_i(f) g(.., q^-1 X_i, ..) + f(.., qX_i, ..) 𝒟_i(g)`.
pub fn leibniz_check(i: usize, f: &QPolynomial, g: &QPolynomial) -> Result<bool> {
    let lhs = d_substitution(i, &f.checked_mul(g)?)?;
    let left = d_substitution(i, f)?.checked_mul(&g.substitute_q_power(i, -1))?;
    let right = f.substitute_q_power(i, 1).checked_mul(&d_substitution(i, g)?)?;
    Ok(lhs == left.checked_add(&right)?)
}

/// The image of a `U_q(sl_{r+2})` generator under `χ_r`.
pub fn chi_r(r: usize, g: &Generator) -> Result<OperatorExpr> {
    check_index("U_q(sl) generator", g.index, r + 1)?;
    let i = g.index;
    let w = match (g.family, g.inverse) {
        (GeneratorFamily::E, false) => vec![Generator::new(WeylX, i), Generator::new(WeylD, i + 1)],
        (GeneratorFamily::F, false) => vec![Generator::new(WeylX, i + 1), Generator::new(WeylD, i)],
        (GeneratorFamily::K, false) => vec![Generator::new(WeylM, i), Generator::inv(WeylM, i + 1)],
        (GeneratorFamily::K, true) => vec![Generator::inv(WeylM, i), Generator::new(WeylM, i + 1)],
        _ => return Err(Error::UnknownSymbol(*g)),
    };
    Ok(OperatorExpr::word(w))
}

fn gen(g: Generator) -> OperatorExpr {
    OperatorExpr::generator(g)
}

fn prod(gs: &[Generator]) -> OperatorExpr {
    OperatorExpr::word(gs.to_vec())
}

/// The five relation groups of a q-Weyl algebra with deformation
/// parameters `xi` (all ones for the classical algebra), written in the
/// symbol families `(d, x, m)`.
pub(crate) fn q_weyl_relations(
    d: GeneratorFamily,
    x: GeneratorFamily,
    m: GeneratorFamily,
    xi: &[i32],
) -> Vec<RelationInstance> {
    let n = xi.len();
    let one = OperatorExpr::identity();
    let (dd, xx, mm) = (|i| Generator::new(d, i), |i| Generator::new(x, i), |i| Generator::new(m, i));
    let mi = |i| Generator::inv(m, i);
    let mut out = Vec::new();
    for i in 0..n {
        out.push(RelationInstance::new("m_inv", &[i], prod(&[mm(i), mi(i)]), one.clone()));
        out.push(RelationInstance::new("inv_m", &[i], prod(&[mi(i), mm(i)]), one.clone()));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(RelationInstance::new("mm", &[i, j], prod(&[mm(i), mm(j)]), prod(&[mm(j), mm(i)])));
        }
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            out.push(RelationInstance::new("dm", &[i, j], prod(&[dd(i), mm(j)]), prod(&[mm(j), dd(i)])));
            out.push(RelationInstance::new("xm", &[i, j], prod(&[xx(i), mm(j)]), prod(&[mm(j), xx(i)])));
            out.push(RelationInstance::new("dx", &[i, j], prod(&[dd(i), xx(j)]), prod(&[xx(j), dd(i)])));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(RelationInstance::new("dd", &[i, j], prod(&[dd(i), dd(j)]), prod(&[dd(j), dd(i)])));
            out.push(RelationInstance::new("xx", &[i, j], prod(&[xx(i), xx(j)]), prod(&[xx(j), xx(i)])));
        }
    }
    let inv_qq = q_minus_q_inv().inverse().expect("q - q^-1 is nonzero");
    for (i, &k) in xi.iter().enumerate() {
        let rhs = prod(&[mm(i), dd(i)]).scale(&ScalarQ::q_pow(k));
        out.push(RelationInstance::new("dm_twist", &[i], prod(&[dd(i), mm(i)]), rhs));
        let rhs = prod(&[mm(i), xx(i)]).scale(&ScalarQ::q_pow(-k));
        out.push(RelationInstance::new("xm_twist", &[i], prod(&[xx(i), mm(i)]), rhs));
        let rhs = (&gen(mm(i)).scale(&ScalarQ::q_pow(k)) - &gen(mi(i)).scale(&ScalarQ::q_pow(-k))).scale(&inv_qq);
        out.push(RelationInstance::new("d_x", &[i], prod(&[dd(i), xx(i)]), rhs));
        let rhs = (&gen(mm(i)) - &gen(mi(i))).scale(&inv_qq);
        out.push(RelationInstance::new("x_d", &[i], prod(&[xx(i), dd(i)]), rhs));
    }
    out
}

/// Every defining relation of `A_q(A_{r+1})`, instantiated over all index pairs.
pub fn weyl_relation_instances(r: usize) -> Vec<RelationInstance> {
    q_weyl_relations(WeylD, WeylX, WeylM, &vec![1; r + 2])
}

/// `𝚌_ij = 2δ_ij - δ_{i,j+1} - δ_{i+1,j}`.
fn cartan_a(i: usize, j: usize) -> i32 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// Every defining relation of `U_q(sl_{r+2})`, in the symbols `E_i, F_i, K_i^{±1}`.
pub fn uqsl_relation_instances(r: usize) -> Vec<RelationInstance> {
    use GeneratorFamily::{E, F, K};
    let n = r + 1;
    let (e, f, k, ki) =
        (|i| Generator::new(E, i), |i| Generator::new(F, i), |i| Generator::new(K, i), |i| Generator::inv(K, i));
    let one = OperatorExpr::identity();
    let zero = OperatorExpr::zero();
    let mut out = Vec::new();
    for i in 0..n {
        out.push(RelationInstance::new("k_inv", &[i], prod(&[k(i), ki(i)]), one.clone()));
        out.push(RelationInstance::new("inv_k", &[i], prod(&[ki(i), k(i)]), one.clone()));
        for j in i + 1..n {
            out.push(RelationInstance::new("kk", &[i, j], prod(&[k(i), k(j)]), prod(&[k(j), k(i)])));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let c = cartan_a(i, j);
            let rhs = gen(e(j)).scale(&ScalarQ::q_pow(c));
            out.push(RelationInstance::new("kek", &[i, j], prod(&[k(i), e(j), ki(i)]), rhs));
            let rhs = gen(f(j)).scale(&ScalarQ::q_pow(-c));
            out.push(RelationInstance::new("kfk", &[i, j], prod(&[k(i), f(j), ki(i)]), rhs));
        }
    }
    let inv_qq = q_minus_q_inv().inverse().expect("q - q^-1 is nonzero");
    for i in 0..n {
        for j in 0..n {
            let lhs = &prod(&[e(i), f(j)]) - &prod(&[f(j), e(i)]);
            let rhs = if i == j { (&gen(k(i)) - &gen(ki(i))).scale(&inv_qq) } else { zero.clone() };
            out.push(RelationInstance::new("ef", &[i, j], lhs, rhs));
        }
    }
    for i in 0..n {
        for j in i + 2..n {
            out.push(RelationInstance::new("ee", &[i, j], prod(&[e(i), e(j)]), prod(&[e(j), e(i)])));
            out.push(RelationInstance::new("ff", &[i, j], prod(&[f(i), f(j)]), prod(&[f(j), f(i)])));
        }
    }
    let two = ScalarQ::from(q_integer(2));
    for i in 0..n {
        for j in (0..n).filter(|&j| i.abs_diff(j) == 1) {
            for (name, g) in [("serre_e", &e as &dyn Fn(usize) -> Generator), ("serre_f", &f)] {
                let lhs =
                    &(&prod(&[g(i), g(i), g(j)]) - &prod(&[g(i), g(j), g(i)]).scale(&two)) + &prod(&[g(j), g(i), g(i)]);
                out.push(RelationInstance::new(name, &[i, j], lhs, zero.clone()));
            }
        }
    }
    out
}

/// The `U_q(sl_{r+2})` relations pushed through `χ_r` into Weyl symbols.
pub fn uqsl_relations_through_chi(r: usize) -> Result<Vec<RelationInstance>> {
    uqsl_relation_instances(r).iter().map(|rel| rel.substitute(|g| chi_r(r, g))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{apply, failing_relations};
    use crate::poly::monomials_up_to_degree;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn d_substitution_examples() {
        let x0_cubed = QPolynomial::monomial(ev(&[3, 0]), ScalarQ::one());
        let expect = QPolynomial::monomial(ev(&[2, 0]), ScalarQ::from(q_integer(3)));
        assert_eq!(d_substitution(0, &x0_cubed).unwrap(), expect);
        assert!(d_substitution(0, &QPolynomial::one(2)).unwrap().is_zero());
        let x1_sq = QPolynomial::monomial(ev(&[0, 2]), ScalarQ::one());
        assert!(d_substitution(0, &x1_sq).unwrap().is_zero());
        assert!(d_substitution(2, &x1_sq).is_err());
    }

    #[test]
    fn substitution_agrees_with_monomial_rule() {
        for r in 0..=2usize {
            let t = WeylTable::for_rank(r);
            for a in monomials_up_to_degree(r + 2, 6) {
                let p = QPolynomial::monomial(a.clone(), ScalarQ::one());
                for i in 0..r + 2 {
                    let direct = apply(&gen(Generator::new(WeylD, i)), &p, &t).unwrap();
                    assert_eq!(d_substitution(i, &p).unwrap(), direct, "r={r} i={i} a={a}");
                }
            }
        }
    }

    #[test]
    fn leibniz_examples() {
        let x0 = QPolynomial::variable(2, 0);
        assert!(leibniz_check(0, &x0, &x0).unwrap());
        let lhs = d_substitution(0, &(&x0 * &x0)).unwrap();
        assert_eq!(lhs, x0.scale(&ScalarQ::from(q_integer(2))));
        let g = &QPolynomial::variable(2, 1) + &x0;
        assert!(leibniz_check(0, &QPolynomial::one(2), &g).unwrap());
    }

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32) -> QPolynomial {
        let mut p = QPolynomial::zero(nvars);
        for _ in 0..rng.gen_range(1..5) {
            let deg = rng.gen_range(0..=max_deg);
            let mut a = vec![0u32; nvars];
            for _ in 0..deg {
                a[rng.gen_range(0..nvars)] += 1;
            }
            let c =
                ScalarQ::from(LaurentPoly::q_pow(rng.gen_range(-2..3))) * ScalarQ::from_integer(rng.gen_range(-3..4));
            p.add_term(ExponentVector::new(a), &c).unwrap();
        }
        p
    }

    #[test]
    fn leibniz_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1e1b);
        for _ in 0..200 {
            let f = random_poly(&mut rng, 3, 5);
            let g = random_poly(&mut rng, 3, 5);
            let i = rng.gen_range(0..3);
            assert!(leibniz_check(i, &f, &g).unwrap());
        }
    }

    #[test]
    fn chi_images() {
        let e0 = chi_r(1, &Generator::new(GeneratorFamily::E, 0)).unwrap();
        assert_eq!(e0, prod(&[Generator::new(WeylX, 0), Generator::new(WeylD, 1)]));
        let kinv = chi_r(1, &Generator::inv(GeneratorFamily::K, 1)).unwrap();
        assert_eq!(kinv, prod(&[Generator::inv(WeylM, 1), Generator::new(WeylM, 2)]));
        let fr = chi_r(2, &Generator::new(GeneratorFamily::F, 2)).unwrap();
        assert_eq!(fr, prod(&[Generator::new(WeylX, 3), Generator::new(WeylD, 2)]));
        assert!(matches!(chi_r(1, &Generator::new(GeneratorFamily::E, 2)), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn relation_counts() {
        for r in 0..=3usize {
            let n = r + 2;
            let expected = 6 * n + 9 * n * (n - 1) / 2;
            assert_eq!(weyl_relation_instances(r).len(), expected);
        }
        // r = 0: k_inv, inv_k, kek, kfk, ef, no distant or Serre pairs.
        assert_eq!(uqsl_relation_instances(0).len(), 5);
        let names: Vec<_> = uqsl_relation_instances(2).iter().map(|r| r.id()).collect();
        assert!(names.contains(&"ee(0,2)".into()));
        assert!(names.contains(&"serre_f(1,0)".into()));
    }

    #[test]
    fn weyl_relations_hold() {
        for r in 0..=2 {
            let t = WeylTable::for_rank(r);
            let rels = weyl_relation_instances(r);
            let bad = failing_relations(&rels, &t, 4).unwrap();
            assert!(bad.is_empty(), "r={r}: {:?}", bad.iter().map(|b| b.0.id()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn uqsl_relations_hold_through_chi() {
        for r in 0..=2 {
            let t = WeylTable::for_rank(r);
            let rels = uqsl_relations_through_chi(r).unwrap();
            let bad = failing_relations(&rels, &t, 4).unwrap();
            assert!(bad.is_empty(), "r={r}: {:?}", bad.iter().map(|b| b.0.id()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn chi_images_preserve_degree() {
        let r = 2;
        let t = WeylTable::for_rank(r);
        use GeneratorFamily::{E, F, K};
        let gens = (0..=r)
            .flat_map(|i| [Generator::new(E, i), Generator::new(F, i), Generator::new(K, i), Generator::inv(K, i)]);
        for g in gens {
            let img = chi_r(r, &g).unwrap();
            for a in monomials_up_to_degree(r + 2, 4) {
                let out = apply(&img, &QPolynomial::monomial(a.clone(), ScalarQ::one()), &t).unwrap();
                assert!(out.is_zero() || out.homogeneous_degree() == Some(a.degree()));
            }
        }
    }

    #[test]
    fn mutated_relation_is_detected() {
        let t = WeylTable::for_rank(0);
        let rel = weyl_relation_instances(0).into_iter().find(|r| r.group == "dm_twist").unwrap();
        let broken = RelationInstance { rhs: rel.rhs.scale(&ScalarQ::q_pow(1)), ..rel };
        assert!(!broken.check(&t, 2).unwrap().is_equal());
    }
}
