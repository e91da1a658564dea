//! The modified q-Weyl algebra `A_q(S)`: its direct action on `P`, the
//! embedding `ι` into the classical q-Weyl algebra, and the
//! constant-reduction witness behind irreducibility of `P`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::operator::{apply, ActionTable, Generator, GeneratorFamily, OperatorExpr, RelationInstance, Word};
use crate::poly::{monomials_up_to_degree, ExponentVector, QPolynomial};
use crate::satake::SatakeDiagram;
use crate::scalar::{q_factorial, q_integer, ScalarQ};
use crate::weyl::{check_index, q_weyl_relations, WeylTable};

use GeneratorFamily::{ModD, ModM, ModX, WeylD, WeylM, WeylX};

/// Monomial actions `𝔡_i X^a = [ξ_i a_i] X^{a-e_i}`, `𝔵_i X^a = X^{a+e_i}`,
/// `𝔪_i^{±1} X^a = q^{±ξ_i a_i} X^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModWeylTable {
    xi: Vec<i32>,
}

impl ModWeylTable {
    pub fn new(xi: &[i32]) -> Self {
        Self { xi: xi.to_vec() }
    }

    pub fn for_diagram(d: &SatakeDiagram) -> Self {
        Self::new(d.xi())
    }

    pub fn xi(&self) -> &[i32] {
        &self.xi
    }
}

impl ActionTable for ModWeylTable {
    fn nvars(&self) -> usize {
        self.xi.len()
    }

    fn act(&self, g: &Generator, a: &ExponentVector) -> Result<QPolynomial> {
        let i = g.index;
        check_index("variable", i, self.xi.len())?;
        let k = self.xi[i];
        let ai = a.get(i) as i32;
        Ok(match (g.family, g.inverse) {
            (ModD, false) => match a.decremented(i) {
                Some(b) => QPolynomial::monomial(b, ScalarQ::from(q_integer(i64::from(k * ai)))),
                None => QPolynomial::zero(self.xi.len()),
            },
            (ModX, false) => QPolynomial::monomial(a.incremented(i), ScalarQ::one()),
            (ModM, inv) => QPolynomial::monomial(a.clone(), ScalarQ::q_pow(if inv { -k * ai } else { k * ai })),
            _ => return Err(Error::UnknownSymbol(*g)),
        })
    }
}

/// Every defining relation of `A_q(S)` for the given `ξ`.
pub fn modweyl_relations_for_xi(xi: &[i32]) -> Vec<RelationInstance> {
    q_weyl_relations(ModD, ModX, ModM, xi)
}

pub fn modweyl_relation_instances(d: &SatakeDiagram) -> Vec<RelationInstance> {
    modweyl_relations_for_xi(d.xi())
}

/// `𝑀_i^e` as a word.
fn weyl_m_power(i: usize, e: i32) -> Word {
    (0..e.unsigned_abs()).map(|_| Generator::signed(WeylM, i, e)).collect()
}

/// The image of a modified-Weyl symbol under `ι`, in classical Weyl symbols.
pub fn iota_for_xi(xi: &[i32], g: &Generator) -> Result<OperatorExpr> {
    let i = g.index;
    check_index("variable", i, xi.len())?;
    let k = xi[i];
    if k == 0 {
        return Err(Error::InvalidDiagram("xi must be nonzero".into()));
    }
    Ok(match (g.family, g.inverse) {
        (ModD, false) => {
            let n = k.abs();
            let mut sum = OperatorExpr::zero();
            for j in 0..n {
                let mut w = alloc::vec![Generator::new(WeylD, i)];
                w.extend(weyl_m_power(i, n - 1 - 2 * j));
                sum = &sum + &OperatorExpr::word(w);
            }
            if k < 0 {
                -sum
            } else {
                sum
            }
        }
        (ModX, false) => OperatorExpr::generator(Generator::new(WeylX, i)),
        (ModM, inv) => OperatorExpr::word(weyl_m_power(i, if inv { -k } else { k })),
        _ => return Err(Error::UnknownSymbol(*g)),
    })
}

pub fn iota(d: &SatakeDiagram, g: &Generator) -> Result<OperatorExpr> {
    iota_for_xi(d.xi(), g)
}

/// Modified-Weyl symbols acting through `ι` and the classical Weyl table.
#[derive(Clone, Debug)]
pub struct IotaTable {
    weyl: WeylTable,
    /// Images of `𝔡_i, 𝔵_i, 𝔪_i, 𝔪_i^-1` for each `i`.
    images: Vec<[OperatorExpr; 4]>,
}

impl IotaTable {
    pub fn new(xi: &[i32]) -> Result<Self> {
        let images = (0..xi.len())
            .map(|i| {
                Ok([
                    iota_for_xi(xi, &Generator::new(ModD, i))?,
                    iota_for_xi(xi, &Generator::new(ModX, i))?,
                    iota_for_xi(xi, &Generator::new(ModM, i))?,
                    iota_for_xi(xi, &Generator::inv(ModM, i))?,
                ])
            })
            .collect::<Result<_>>()?;
        Ok(Self { weyl: WeylTable::new(xi.len()), images })
    }

    pub fn for_diagram(d: &SatakeDiagram) -> Result<Self> {
        Self::new(d.xi())
    }
}

impl ActionTable for IotaTable {
    fn nvars(&self) -> usize {
        self.images.len()
    }

    fn act(&self, g: &Generator, a: &ExponentVector) -> Result<QPolynomial> {
        check_index("variable", g.index, self.images.len())?;
        let slot = match (g.family, g.inverse) {
            (ModD, false) => 0,
            (ModX, false) => 1,
            (ModM, false) => 2,
            (ModM, true) => 3,
            _ => return Err(Error::UnknownSymbol(*g)),
        };
        let p = QPolynomial::monomial(a.clone(), ScalarQ::one());
        apply(&self.images[g.index][slot], &p, &self.weyl)
    }
}

/// A generator and monomial on which the direct and `ι`-pulled-back actions differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaDiscrepancy {
    pub generator: Generator,
    pub monomial: ExponentVector,
    pub direct: QPolynomial,
    pub via_iota: QPolynomial,
}

/// The generators `𝔡_i, 𝔵_i, 𝔪_i^{±1}` of `A_q(S)` on `n` variables.
pub fn modweyl_generators(n: usize) -> Vec<Generator> {
    (0..n)
        .flat_map(|i| {
            [Generator::new(ModD, i), Generator::new(ModX, i), Generator::new(ModM, i), Generator::inv(ModM, i)]
        })
        .collect()
}

/// Compares the direct action with the `ι`-image action on all monomials
/// of degree at most `max_s`; an empty result means they agree.
pub fn iota_consistency(d: &SatakeDiagram, max_s: u32) -> Result<Vec<IotaDiscrepancy>> {
    let direct = ModWeylTable::for_diagram(d);
    let via = IotaTable::for_diagram(d)?;
    let mut out = Vec::new();
    for g in modweyl_generators(d.nvars()) {
        for a in monomials_up_to_degree(d.nvars(), max_s) {
            let x = direct.act(&g, &a)?;
            let y = via.act(&g, &a)?;
            if x != y {
                out.push(IotaDiscrepancy { generator: g, monomial: a, direct: x, via_iota: y });
            }
        }
    }
    Ok(out)
}

/// A `𝔡`-word reducing a nonzero polynomial to a nonzero constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionWitness {
    /// The lexicographically largest exponent vector of the input.
    pub k: ExponentVector,
    /// `𝔡_0^{k_0} 𝔡_1^{k_1} ... 𝔡_{r+1}^{k_{r+1}}`.
    pub word: Word,
    /// `c_k Π [k_i]^{ξ_i}!`.
    pub predicted: ScalarQ,
}

/// Builds the constant-reduction witness for `p` under deformation `ξ`.
///
/// Only the leading term survives the word: any other exponent `b` with
/// `b >= k` entrywise would be lexicographically larger than `k`.
pub fn constant_reduction_witness_for_xi(xi: &[i32], p: &QPolynomial) -> Result<ReductionWitness> {
    if p.nvars() != xi.len() {
        return Err(Error::LengthMismatch { expected: xi.len(), found: p.nvars() });
    }
    let (k, c) = p.leading_term().ok_or(Error::ZeroPolynomial)?;
    let mut word = Word::new();
    let mut predicted = c.clone();
    for (i, (&ki, &x)) in k.entries().iter().zip(xi).enumerate() {
        word.extend((0..ki).map(|_| Generator::new(ModD, i)));
        predicted = &predicted * &ScalarQ::from(q_factorial(i64::from(ki), i64::from(x))?);
    }
    Ok(ReductionWitness { k: k.clone(), word, predicted })
}

pub fn constant_reduction_witness(d: &SatakeDiagram, p: &QPolynomial) -> Result<ReductionWitness> {
    constant_reduction_witness_for_xi(d.xi(), p)
}
