//! iquantum group presentations, the realization `Φ_S` in the modified
//! q-Weyl algebra, the oscillator action on `P` and the witnesses showing
//! that each `P_s` is irreducible.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::modweyl::ModWeylTable;
use crate::operator::{
    apply, apply_word, ActionTable, EqualityReport, Generator, GeneratorFamily, OperatorExpr, RelationInstance, Word,
};
use crate::poly::{ExponentVector, QPolynomial};
use crate::satake::{DiagramKind, SatakeDiagram};
use crate::scalar::{q_binomial, q_factorial, q_integer, q_pochhammer, ScalarQ};
use crate::weyl::q_minus_q_inv;

use GeneratorFamily::{AliasE, AliasF, AliasK, AliasT, ModD, ModM, ModX, B, H};

fn b(i: usize) -> OperatorExpr {
    OperatorExpr::generator(Generator::new(B, i))
}

fn h(i: usize) -> OperatorExpr {
    OperatorExpr::generator(Generator::new(H, i))
}

fn sign(odd: bool) -> ScalarQ {
    ScalarQ::from_integer(if odd { -1 } else { 1 })
}

/// Every defining relation of the iquantum group of `d`, in the symbols
/// `B_i, H_i`. Divided powers are `B^(n) = B^n / [n]!`.
pub fn relation_instances(d: &SatakeDiagram) -> Vec<RelationInstance> {
    let n = d.num_nodes();
    let tau = |i| d.tau(i);
    let dot = |i, j| d.dot(i, j);
    let varsigma = |i| d.varsigma(i).expect("node in range").clone();
    let mut out = Vec::new();

    for i in 0..n {
        out.push(RelationInstance::new("hh_inv", &[i], &h(i) * &h(tau(i)), OperatorExpr::identity()));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(RelationInstance::new("hh", &[i, j], &h(i) * &h(j), &h(j) * &h(i)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let c = ScalarQ::q_pow(dot(i, tau(j)) - dot(i, j));
            out.push(RelationInstance::new("hb", &[i, j], &h(j) * &b(i), (&b(i) * &h(j)).scale(&c)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && dot(i, j) == 0 && tau(i) != j {
                out.push(RelationInstance::new("bb", &[i, j], &b(i) * &b(j), &b(j) * &b(i)));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && j != tau(i) && tau(i) != i {
                let top = (1 - dot(i, j)) as u32;
                let mut lhs = OperatorExpr::zero();
                for k in 0..=top {
                    let t = &(&b(i).divided_power(k) * &b(j)) * &b(i).divided_power(top - k);
                    lhs = &lhs + &t.scale(&sign(k % 2 == 1));
                }
                out.push(RelationInstance::new("serre", &[i, j], lhs, OperatorExpr::zero()));
            }
        }
    }
    let t0 = tau(0);
    let delta_00 = i32::from(dot(0, t0) == -1);
    for i in 0..n {
        let ti = tau(i);
        if ti == i {
            continue;
        }
        let it = dot(i, ti);
        let top = (1 - it) as u32;
        let mut lhs = OperatorExpr::zero();
        for k in 0..=top {
            let t = &(&b(i).divided_power(k) * &b(ti)) * &b(i).divided_power(top - k);
            lhs = &lhs + &t.scale(&sign((k as i32 + it).rem_euclid(2) == 1));
        }
        let (di0, dit0) = (i32::from(i == 0), i32::from(i == t0));
        let e1 = it + 3 * (di0 - dit0) * delta_00;
        let e2 = 3 * (dit0 - di0) * delta_00;
        let m = i64::from(-it);
        let bp = b(i).divided_power((-it) as u32);
        let (qm2, q2) = (ScalarQ::q_pow(-2), ScalarQ::q_pow(2));
        let c1 = &(&ScalarQ::q_pow(e1) * &q_pochhammer(&qm2, &qm2, m).expect("m >= 0")) * &varsigma(ti);
        let c2 = &(&ScalarQ::q_pow(e2) * &q_pochhammer(&q2, &q2, m).expect("m >= 0")) * &varsigma(i);
        let rhs = &(&bp * &h(i)).scale(&c1) - &(&bp * &h(ti)).scale(&c2);
        let rhs = rhs.scale(&q_minus_q_inv().inverse().expect("q - q^-1 is nonzero"));
        out.push(RelationInstance::new("tau_serre", &[i], lhs, rhs));
    }
    for i in 0..n {
        for j in 0..n {
            if tau(i) == i && i != j {
                let top = 1 - dot(i, j);
                let mut lhs = OperatorExpr::zero();
                for k in 0..=top {
                    let c = &sign(k % 2 == 1) * &ScalarQ::from(q_binomial(i64::from(top), i64::from(k)));
                    let t = &(&b(i).pow(k as u32) * &b(j)) * &b(i).pow((top - k) as u32);
                    lhs = &lhs + &t.scale(&c);
                }
                let rhs = if dot(i, j) == -1 {
                    b(j).scale(&(&ScalarQ::q_pow(1) * &varsigma(i)))
                } else {
                    OperatorExpr::zero()
                };
                out.push(RelationInstance::new("fixed_serre", &[i, j], lhs, rhs));
            }
        }
    }
    out
}

/// Images of the alias generators `e_i, f_i, k_i^{±1}, t_j` under `Φ_S`,
/// in modified-Weyl symbols, together with the direct action of those symbols.
///
/// Acting on `P`, the table accepts aliases, `B_i`/`H_i` (resolved through
/// the alias dictionary) and raw `𝔡_i, 𝔵_i, 𝔪_i^{±1}`.
#[derive(Clone, Debug)]
pub struct PhiTable {
    images: BTreeMap<Generator, OperatorExpr>,
    tau: Vec<usize>,
    modweyl: ModWeylTable,
}

fn x(i: usize) -> Generator {
    Generator::new(ModX, i)
}

fn dd(i: usize) -> Generator {
    Generator::new(ModD, i)
}

fn m(i: usize, e: i32) -> Generator {
    Generator::signed(ModM, i, e)
}

fn word(ws: &[Generator], c: ScalarQ) -> OperatorExpr {
    OperatorExpr::term(ws.to_vec(), c)
}

/// `Φ_S` for the diagram `d`.
pub fn phi(d: &SatakeDiagram) -> PhiTable {
    let r = d.r();
    let mut images = BTreeMap::new();
    let mut put = |fam, i, inverse, e: OperatorExpr| {
        images.insert(Generator { family: fam, index: i, inverse }, e);
    };
    let one = ScalarQ::one();
    for i in d.representatives() {
        let s: i32 = match d.kind() {
            DiagramKind::II | DiagramKind::IV | DiagramKind::VI if i == r => -1,
            DiagramKind::V if i == 1 => -1,
            _ => 1,
        };
        let c = match d.kind() {
            // Diagram I with r = 0 is A_1 with 0.tau0 = -1; the k-image carries q^-3.
            DiagramKind::I if r == 0 => ScalarQ::q_pow(-3),
            DiagramKind::III | DiagramKind::IV if i == 0 => ScalarQ::q_pow(-2),
            DiagramKind::A1Aff => ScalarQ::q_pow(-1),
            _ => one.clone(),
        };
        let sc = &ScalarQ::from_integer(i64::from(s)) * &c;
        let sc_inv = &ScalarQ::from_integer(i64::from(s)) * &c.inverse().expect("nonzero");
        if d.kind() == DiagramKind::V {
            put(AliasE, i, false, word(&[x(i - 1), dd(i)], one.clone()));
            put(AliasF, i, false, word(&[x(i), dd(i - 1)], one.clone()));
            put(AliasK, i, false, word(&[m(i - 1, s), m(i, -1)], sc));
            put(AliasK, i, true, word(&[m(i - 1, -s), m(i, 1)], sc_inv));
        } else {
            put(AliasE, i, false, word(&[x(i), dd(i + 1)], one.clone()));
            put(AliasF, i, false, word(&[x(i + 1), dd(i)], one.clone()));
            put(AliasK, i, false, word(&[m(i, 1), m(i + 1, -s)], sc));
            put(AliasK, i, true, word(&[m(i, -1), m(i + 1, s)], sc_inv));
        }
    }
    for j in d.fixed_nodes() {
        let v = match (d.kind(), j) {
            (DiagramKind::VI, 0) => 1,
            _ => j,
        };
        put(AliasT, j, false, word(&[x(v), dd(v)], one.clone()));
    }
    PhiTable { images, tau: (0..d.num_nodes()).map(|i| d.tau(i)).collect(), modweyl: ModWeylTable::for_diagram(d) }
}

impl PhiTable {
    /// The alias naming `B_i` or `H_i`, per `f_i=B_i, e_i=B_{τi}, k_i=H_i,
    /// k_i^{-1}=H_{τi}` (`τi != i`) and `t_i=B_i` (`τi = i`). `H_i` at a
    /// fixed node has no alias and yields `None`.
    pub fn alias_of(&self, g: &Generator) -> Result<Option<Generator>> {
        let i = g.index;
        crate::weyl::check_index("node", i, self.tau.len())?;
        let ti = self.tau[i];
        Ok(match (g.family, g.inverse) {
            (B, false) if ti == i => Some(Generator::new(AliasT, i)),
            (B, false) if i < ti => Some(Generator::new(AliasF, i)),
            (B, false) => Some(Generator::new(AliasE, ti)),
            (H, false) if ti == i => None,
            (H, false) if i < ti => Some(Generator::new(AliasK, i)),
            (H, false) => Some(Generator::inv(AliasK, ti)),
            _ => return Err(Error::UnknownSymbol(*g)),
        })
    }

    /// `Φ_S(g)` for an alias or a `B_i`/`H_i` symbol. `H` at a fixed node
    /// maps to the identity.
    pub fn image(&self, g: &Generator) -> Result<OperatorExpr> {
        let alias = match g.family {
            B | H => match self.alias_of(g)? {
                Some(a) => a,
                None => return Ok(OperatorExpr::identity()),
            },
            _ => *g,
        };
        self.images.get(&alias).cloned().ok_or(Error::UnknownSymbol(*g))
    }

    /// All alias generators with an image, in symbol order.
    pub fn aliases(&self) -> impl Iterator<Item = &Generator> + '_ {
        self.images.keys()
    }

    pub fn xi(&self) -> &[i32] {
        self.modweyl.xi()
    }
}

impl ActionTable for PhiTable {
    fn nvars(&self) -> usize {
        self.modweyl.nvars()
    }

    fn act(&self, g: &Generator, a: &ExponentVector) -> Result<QPolynomial> {
        match g.family {
            ModD | ModX | ModM => self.modweyl.act(g, a),
            _ => apply(&self.image(g)?, &QPolynomial::monomial(a.clone(), ScalarQ::one()), &self.modweyl),
        }
    }
}

/// The relations of [`relation_instances`] rewritten through `Φ_S` into
/// modified-Weyl symbols.
pub fn phi_relations(d: &SatakeDiagram) -> Result<Vec<RelationInstance>> {
    let table = phi(d);
    relation_instances(d).iter().map(|rel| rel.substitute(|g| table.image(g))).collect()
}

/// Checks every relation through `Φ_S` on `P_{<= max_s}`; returns one
/// report per relation, in instantiation order.
pub fn verify_homomorphism(d: &SatakeDiagram, max_s: u32) -> Result<Vec<(RelationInstance, EqualityReport)>> {
    let table = phi(d);
    relation_instances(d)
        .into_iter()
        .map(|rel| {
            let pushed = rel.substitute(|g| table.image(g))?;
            let rep = pushed.check(&table.modweyl, max_s)?;
            Ok((rel, rep))
        })
        .collect()
}

/// The closed-form oscillator action of the aliases `e_i, f_i, k_i^{±1}, t_j`,
/// written out per diagram family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OscillatorTable {
    kind: DiagramKind,
    r: usize,
    nvars: usize,
}

impl OscillatorTable {
    pub fn new(d: &SatakeDiagram) -> Self {
        Self { kind: d.kind(), r: d.r(), nvars: d.nvars() }
    }

    fn valid(&self, g: &Generator) -> bool {
        let (i, r) = (g.index, self.r);
        let rep = match self.kind {
            DiagramKind::V => (1..=r + 1).contains(&i),
            DiagramKind::VI => (1..=r).contains(&i),
            _ => i <= r,
        };
        match g.family {
            AliasE | AliasF => rep && !g.inverse,
            AliasK => rep,
            AliasT if g.inverse => false,
            AliasT => match self.kind {
                DiagramKind::II | DiagramKind::IV => i == r + 1,
                DiagramKind::V => i == 0,
                DiagramKind::VI => i == 0 || i == r + 1,
                _ => false,
            },
            _ => false,
        }
    }
}

fn qi(n: i64) -> ScalarQ {
    ScalarQ::from(q_integer(n))
}

impl ActionTable for OscillatorTable {
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn act(&self, g: &Generator, a: &ExponentVector) -> Result<QPolynomial> {
        use DiagramKind as K;
        if !self.valid(g) {
            return Err(Error::UnknownSymbol(*g));
        }
        let (i, r) = (g.index, self.r);
        let av = |j: usize| i64::from(a.get(j));
        let two_if = |c: bool| if c { 2 } else { 1 };
        let neg_if = |c: bool| if c { -1 } else { 1 };
        let d = |p: usize, q: usize| i64::from(p == q);
        // (coefficient, exponent moves)
        let (coef, moves): (ScalarQ, Vec<(usize, i64)>) = match (g.family, self.kind) {
            (AliasE, K::I | K::III) => (qi(two_if(i == r) * av(i + 1)), vec![(i, 1), (i + 1, -1)]),
            (AliasE, K::II) => (qi(neg_if(i == r) * av(i + 1)), vec![(i, 1), (i + 1, -1)]),
            (AliasE, K::A1Aff) => (qi(3 * av(1)), vec![(0, 1), (1, -1)]),
            (AliasE, K::IV | K::VI) => (&sign(i == r) * &qi(av(i + 1)), vec![(i, 1), (i + 1, -1)]),
            (AliasE, K::V) => (qi(two_if(i == r + 1) * av(i)), vec![(i - 1, 1), (i, -1)]),
            (AliasF, K::I | K::II | K::VI | K::A1Aff) => (qi(av(i)), vec![(i, -1), (i + 1, 1)]),
            (AliasF, K::III | K::IV) => (qi(two_if(i == 0) * av(i)), vec![(i, -1), (i + 1, 1)]),
            (AliasF, K::V) => (qi(neg_if(i == 1) * av(i - 1)), vec![(i - 1, -1), (i, 1)]),
            (AliasK, kind) => {
                let (s, e) = match kind {
                    K::I => {
                        let shift = if r == 0 { -3 } else { 0 };
                        (false, av(i) - two_if(i == r) * av(i + 1) + shift)
                    }
                    K::II | K::VI => (i == r, av(i) - av(i + 1)),
                    K::III => (false, two_if(i == 0) * av(i) - two_if(i == r) * av(i + 1) - 2 * d(i, 0)),
                    K::A1Aff => (false, av(0) - 3 * av(1) - 1),
                    K::IV => (i == r, two_if(i == 0) * av(i) - av(i + 1) - 2 * d(i, 0)),
                    K::V => (i == 1, av(i - 1) - two_if(i == r + 1) * av(i)),
                };
                let c = &sign(s) * &ScalarQ::q_pow(e as i32);
                let c = if g.inverse { c.inverse()? } else { c };
                (c, Vec::new())
            }
            (AliasT, K::VI) if i == 0 => (qi(av(1)), Vec::new()),
            (AliasT, _) => (-qi(av(i)), Vec::new()),
            _ => return Err(Error::UnknownSymbol(*g)),
        };
        if coef.is_zero() {
            return Ok(QPolynomial::zero(self.nvars));
        }
        let target = a
            .shifted(&moves)
            .ok_or_else(|| Error::NotApplicable(format!("{g} moved a zero exponent with nonzero coefficient")))?;
        Ok(QPolynomial::monomial(target, coef))
    }
}

/// A word in alias generators carrying `X^source` to `predicted · X^target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleWitness {
    pub word: Word,
    pub predicted: ScalarQ,
    pub source: ExponentVector,
    pub target: ExponentVector,
}

impl ModuleWitness {
    /// Applies the word to `X^source` and compares with the prediction.
    pub fn verify<T: ActionTable + ?Sized>(&self, table: &T) -> Result<bool> {
        let p = QPolynomial::monomial(self.source.clone(), ScalarQ::one());
        let out = apply_word(&self.word, &p, table)?;
        Ok(out == QPolynomial::monomial(self.target.clone(), self.predicted.clone()))
    }
}

/// Index offset of the `e_i`/`f_i` chain: `e_{i+shift}` moves weight from
/// slot `i+1` to slot `i`.
fn chain_shift(d: &SatakeDiagram) -> Result<usize> {
    match d.kind() {
        DiagramKind::V => Ok(1),
        DiagramKind::VI => Err(Error::NotApplicable(format!(
            "{}: the realization never changes the degree in X_0, so P_s is reducible and no witness exists",
            d.spec()
        ))),
        _ => Ok(0),
    }
}

fn check_len(d: &SatakeDiagram, a: &ExponentVector) -> Result<()> {
    if a.len() == d.nvars() {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected: d.nvars(), found: a.len() })
    }
}

/// The `e`-word carrying `X^a` to a multiple of `X_0^s`.
pub fn irreducibility_witness(d: &SatakeDiagram, a: &ExponentVector) -> Result<ModuleWitness> {
    check_len(d, a)?;
    let shift = chain_shift(d)?;
    let r = d.r();
    let xi = d.xi();
    let tail = |i: usize| -> u32 { a.entries()[i..].iter().sum() };
    let mut word = Word::new();
    for i in 0..=r {
        word.extend((0..tail(i + 1)).map(|_| Generator::new(AliasE, i + shift)));
    }
    let mut predicted = ScalarQ::one();
    for (i, &k) in xi.iter().enumerate().take(r + 2).skip(1) {
        predicted = &predicted * &ScalarQ::from(q_factorial(i64::from(tail(i)), i64::from(k))?);
    }
    let mut target = ExponentVector::zero(d.nvars()).entries().to_vec();
    target[0] = tail(0);
    Ok(ModuleWitness { word, predicted, source: a.clone(), target: ExponentVector::new(target) })
}

/// The `f`-word carrying `X_0^s` to a multiple of `X^b`, `s = Σ b_j`.
pub fn spanning_witness(d: &SatakeDiagram, bv: &ExponentVector) -> Result<ModuleWitness> {
    check_len(d, bv)?;
    let shift = chain_shift(d)?;
    let r = d.r();
    let xi = d.xi();
    let s: u32 = bv.entries().iter().sum();
    let head = |i: usize| -> u32 { bv.entries()[..=i].iter().sum() };
    let mut word = Word::new();
    for i in (0..=r).rev() {
        word.extend((0..s - head(i)).map(|_| Generator::new(AliasF, i + shift)));
    }
    let mut predicted = ScalarQ::one();
    for (i, &k) in xi.iter().enumerate().take(r + 1) {
        let have = i64::from(s - if i == 0 { 0 } else { head(i - 1) });
        let keep = i64::from(bv.get(i));
        let k = i64::from(k);
        let ratio = ScalarQ::from(q_factorial(have, k)?).checked_div(&ScalarQ::from(q_factorial(keep, k)?))?;
        predicted = &predicted * &ratio;
    }
    let mut source = vec![0u32; d.nvars()];
    source[0] = s;
    Ok(ModuleWitness { word, predicted, source: ExponentVector::new(source), target: bv.clone() })
}
