//! Formal operator expressions: `Q(q)`-linear combinations of words in
//! generator symbols. An expression means nothing until it is applied
//! through an [`ActionTable`], which says how each symbol acts on monomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, ExponentVector, QPolynomial};
use crate::scalar::{q_factorial, LaurentPoly, ScalarQ};

/// The symbol families used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorFamily {
    /// Classical q-difference operator `𝒟_i`.
    WeylD,
    /// Classical multiplication `𝒳_i`.
    WeylX,
    /// Classical scaling `𝑀_i`.
    WeylM,
    /// Modified q-difference operator `𝔡_i`.
    ModD,
    /// Modified multiplication `𝔵_i`.
    ModX,
    /// Modified scaling `𝔪_i`.
    ModM,
    /// iquantum group generator `B_i`.
    B,
    /// iquantum group generator `H_i`.
    H,
    /// `U_q(sl)` generators.
    E,
    F,
    K,
    /// Aliases `e_i, f_i, k_i, t_i` of the iquantum group generators.
    AliasE,
    AliasF,
    AliasK,
    AliasT,
}

impl GeneratorFamily {
    pub const ALL: [GeneratorFamily; 15] = [
        GeneratorFamily::WeylD,
        GeneratorFamily::WeylX,
        GeneratorFamily::WeylM,
        GeneratorFamily::ModD,
        GeneratorFamily::ModX,
        GeneratorFamily::ModM,
        GeneratorFamily::B,
        GeneratorFamily::H,
        GeneratorFamily::E,
        GeneratorFamily::F,
        GeneratorFamily::K,
        GeneratorFamily::AliasE,
        GeneratorFamily::AliasF,
        GeneratorFamily::AliasK,
        GeneratorFamily::AliasT,
    ];

    /// The family printed as `symbol`.
    pub fn from_symbol(symbol: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.symbol() == symbol)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            GeneratorFamily::WeylD => "D",
            GeneratorFamily::WeylX => "X",
            GeneratorFamily::WeylM => "M",
            GeneratorFamily::ModD => "d",
            GeneratorFamily::ModX => "x",
            GeneratorFamily::ModM => "m",
            GeneratorFamily::B => "B",
            GeneratorFamily::H => "H",
            GeneratorFamily::E => "E",
            GeneratorFamily::F => "F",
            GeneratorFamily::K => "K",
            GeneratorFamily::AliasE => "e",
            GeneratorFamily::AliasF => "f",
            GeneratorFamily::AliasK => "k",
            GeneratorFamily::AliasT => "t",
        }
    }

    /// Whether the family has formal inverses.
    pub fn invertible(self) -> bool {
        matches!(self, GeneratorFamily::WeylM | GeneratorFamily::ModM | GeneratorFamily::K | GeneratorFamily::AliasK)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub family: GeneratorFamily,
    pub index: usize,
    pub inverse: bool,
}

impl Generator {
    pub const fn new(family: GeneratorFamily, index: usize) -> Self {
        Self { family, index, inverse: false }
    }

    pub const fn inv(family: GeneratorFamily, index: usize) -> Self {
        Self { family, index, inverse: true }
    }

    /// `self` or its inverse, according to the sign of `e` (which must be ±1).
    pub const fn signed(family: GeneratorFamily, index: usize, e: i32) -> Self {
        Self { family, index, inverse: e < 0 }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.index)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A word `g_1 g_2 ... g_n`; it acts on `P` rightmost letter first.
pub type Word = Vec<Generator>;

/// A finite `Q(q)`-linear combination of words. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct OperatorExpr {
    terms: BTreeMap<Word, ScalarQ>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(ScalarQ::one())
    }

    pub fn scalar(c: ScalarQ) -> Self {
        Self::term(Word::new(), c)
    }

    pub fn term(w: Word, c: ScalarQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, ScalarQ::one())
    }

    pub fn generator(g: Generator) -> Self {
        Self::word(alloc::vec![g])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ScalarQ)> + '_ {
        self.terms.iter()
    }

    /// Every symbol that occurs in some word.
    pub fn symbols(&self) -> impl Iterator<Item = &Generator> + '_ {
        self.terms.keys().flatten()
    }

    fn add_term(&mut self, w: Word, c: &ScalarQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| &acc * self)
    }

    /// `self^n / [n]!`.
    pub fn divided_power(&self, n: u32) -> Self {
        let fact = q_factorial(i64::from(n), 1).expect("n is nonnegative");
        let inv = ScalarQ::from(fact).inverse().expect("[n]! is nonzero in Q(q)");
        self.pow(n).scale(&inv)
    }

    /// Substitutes an expression for every symbol, extending multiplicatively
    /// and linearly (an algebra homomorphism out of the free algebra).
    pub fn substitute<F>(&self, mut image: F) -> Result<Self>
    where
        F: FnMut(&Generator) -> Result<OperatorExpr>,
    {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut prod = Self::scalar(c.clone());
            for g in w {
                prod = &prod * &image(g)?;
                if prod.is_zero() {
                    break;
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Returns `(D, D * self)` where `D` is a nonzero Laurent polynomial
    /// such that every coefficient of `D * self` has denominator 1.
    pub fn clear_denominators(&self) -> (ScalarQ, Self) {
        let mut dens: Vec<&LaurentPoly> = Vec::new();
        for c in self.terms.values() {
            let d = c.denominator();
            if !d.is_one() && !dens.contains(&d) {
                dens.push(d);
            }
        }
        let factor = dens.into_iter().fold(LaurentPoly::one(), |acc, d| &acc * d);
        let factor = ScalarQ::from(factor);
        let scaled = self.scale(&factor);
        (factor, scaled)
    }
}

impl From<Generator> for OperatorExpr {
    fn from(g: Generator) -> Self {
        Self::generator(g)
    }
}

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        OperatorExpr { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Add for &OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: &OperatorExpr) -> OperatorExpr {
        self + &-rhs
    }
}

/// Word concatenation, extended bilinearly.
impl Mul for &OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: OperatorExpr) -> OperatorExpr {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        -&self
    }
}

impl fmt::Display for OperatorExpr {
    /// `(c)*g1*g2 + ...`; the identity word prints as the bare coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for g in w {
                write!(f, "*{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorExpr({self})")
    }
}

/// Interprets generator symbols as linear endomorphisms of `P`, given on monomials.
pub trait ActionTable {
    /// Number of variables of the polynomial ring acted on.
    fn nvars(&self) -> usize;

    /// The image of `X^a` under `g`.
    fn act(&self, g: &Generator, a: &ExponentVector) -> Result<QPolynomial>;
}

impl<T: ActionTable + ?Sized> ActionTable for &T {
    fn nvars(&self) -> usize {
        (**self).nvars()
    }
    fn act(&self, g: &Generator, a: &ExponentVector) -> Result<QPolynomial> {
        (**self).act(g, a)
    }
}

fn check_ring<T: ActionTable + ?Sized>(table: &T, p: &QPolynomial) -> Result<()> {
    if p.nvars() == table.nvars() {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected: table.nvars(), found: p.nvars() })
    }
}

/// Applies a single word, rightmost letter first.
pub fn apply_word<T: ActionTable + ?Sized>(w: &[Generator], p: &QPolynomial, table: &T) -> Result<QPolynomial> {
    check_ring(table, p)?;
    let mut cur = p.clone();
    for g in w.iter().rev() {
        if cur.is_zero() {
            break;
        }
        let mut next = QPolynomial::zero(cur.nvars());
        for (a, c) in cur.terms() {
            for (b, d) in table.act(g, a)?.into_terms() {
                next.add_term(b, &(c * &d))?;
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Applies an expression to a polynomial.
pub fn apply<T: ActionTable + ?Sized>(expr: &OperatorExpr, p: &QPolynomial, table: &T) -> Result<QPolynomial> {
    check_ring(table, p)?;
    let mut out = QPolynomial::zero(p.nvars());
    for (w, c) in expr.terms() {
        let img = apply_word(w, p, table)?;
        for (b, d) in img.into_terms() {
            out.add_term(b, &(c * &d))?;
        }
    }
    Ok(out)
}

/// A monomial on which two operators disagree, with `(e1 - e2) X^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub monomial: ExponentVector,
    pub image: QPolynomial,
}

/// Outcome of comparing two operators on `P_{<= max_s}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EqualityReport {
    pub monomials_checked: usize,
    pub residuals: Vec<Residual>,
}

impl EqualityReport {
    pub fn is_equal(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// `e1 - e2` prepared for repeated application: the denominators are
/// cleared once so that per-monomial work stays in `Q[q, q^-1]`.
#[derive(Clone, Debug)]
pub struct PreparedDifference {
    factor: ScalarQ,
    cleared: OperatorExpr,
}

impl PreparedDifference {
    pub fn new(e1: &OperatorExpr, e2: &OperatorExpr) -> Self {
        let (factor, cleared) = (e1 - e2).clear_denominators();
        Self { factor, cleared }
    }

    pub fn is_formally_zero(&self) -> bool {
        self.cleared.is_zero()
    }

    /// `None` when `(e1 - e2) X^a = 0`.
    pub fn residual_at<T: ActionTable + ?Sized>(&self, a: &ExponentVector, table: &T) -> Result<Option<Residual>> {
        let p = QPolynomial::monomial(a.clone(), ScalarQ::one());
        let img = apply(&self.cleared, &p, table)?;
        if img.is_zero() {
            return Ok(None);
        }
        let inv = self.factor.inverse().expect("clearing factor is nonzero");
        Ok(Some(Residual { monomial: a.clone(), image: img.scale(&inv) }))
    }
}

/// Checks `e1 = e2` on every monomial of degree at most `max_s`.
pub fn operator_equal_on_degrees<T: ActionTable + ?Sized>(
    e1: &OperatorExpr,
    e2: &OperatorExpr,
    table: &T,
    max_s: u32,
) -> Result<EqualityReport> {
    let diff = PreparedDifference::new(e1, e2);
    let mut report = EqualityReport::default();
    for s in 0..=max_s {
        for a in monomials_of_degree(table.nvars(), s) {
            report.monomials_checked += 1;
            if diff.is_formally_zero() {
                continue;
            }
            if let Some(r) = diff.residual_at(&a, table)? {
                report.residuals.push(r);
            }
        }
    }
    Ok(report)
}

/// One instantiated defining relation `lhs = rhs`, tagged with its group
/// name and the indices it was instantiated at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub group: &'static str,
    pub indices: Vec<usize>,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
}

impl RelationInstance {
    pub fn new(group: &'static str, indices: &[usize], lhs: OperatorExpr, rhs: OperatorExpr) -> Self {
        Self { group, indices: indices.to_vec(), lhs, rhs }
    }

    /// A stable identifier such as `serre(0,1)`.
    pub fn id(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(|i| format!("{i}")).collect();
        format!("{}({})", self.group, idx.join(","))
    }

    /// Rewrites both sides through a substitution of symbols.
    pub fn substitute<F>(&self, mut image: F) -> Result<Self>
    where
        F: FnMut(&Generator) -> Result<OperatorExpr>,
    {
        Ok(Self {
            group: self.group,
            indices: self.indices.clone(),
            lhs: self.lhs.substitute(&mut image)?,
            rhs: self.rhs.substitute(&mut image)?,
        })
    }

    pub fn check<T: ActionTable + ?Sized>(&self, table: &T, max_s: u32) -> Result<EqualityReport> {
        operator_equal_on_degrees(&self.lhs, &self.rhs, table, max_s)
    }
}

/// Checks every relation and returns the failing ones with their reports.
pub fn failing_relations<'a, T: ActionTable + ?Sized>(
    rels: &'a [RelationInstance],
    table: &T,
    max_s: u32,
) -> Result<Vec<(&'a RelationInstance, EqualityReport)>> {
    let mut out = Vec::new();
    for rel in rels {
        let rep = rel.check(table, max_s)?;
        if !rep.is_equal() {
            out.push((rel, rep));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_integer;
    use alloc::vec;
    use proptest::prelude::*;

    /// `d_i X^a = [a_i] X^{a-e_i}`, `x_i X^a = X^{a+e_i}`, `m_i^{±1} X^a = q^{±a_i} X^a`.
    struct Toy(usize);

    impl ActionTable for Toy {
        fn nvars(&self) -> usize {
            self.0
        }
        fn act(&self, g: &Generator, a: &ExponentVector) -> Result<QPolynomial> {
            let i = g.index;
            Ok(match g.family {
                GeneratorFamily::ModD => match a.decremented(i) {
                    Some(b) => QPolynomial::monomial(b, ScalarQ::from(q_integer(i64::from(a.get(i))))),
                    None => QPolynomial::zero(self.0),
                },
                GeneratorFamily::ModX => QPolynomial::monomial(a.incremented(i), ScalarQ::one()),
                GeneratorFamily::ModM => {
                    let e = a.get(i) as i32;
                    QPolynomial::monomial(a.clone(), ScalarQ::q_pow(if g.inverse { -e } else { e }))
                }
                _ => return Err(Error::UnknownSymbol(*g)),
            })
        }
    }

    fn d(i: usize) -> Generator {
        Generator::new(GeneratorFamily::ModD, i)
    }
    fn x(i: usize) -> Generator {
        Generator::new(GeneratorFamily::ModX, i)
    }
    fn m(i: usize) -> Generator {
        Generator::new(GeneratorFamily::ModM, i)
    }

    #[test]
    fn powers_and_concatenation() {
        let b = OperatorExpr::generator(Generator::new(GeneratorFamily::B, 0));
        assert_eq!(b.pow(0), OperatorExpr::identity());
        let dp = b.divided_power(2);
        let fact = ScalarQ::from(q_integer(2));
        assert_eq!(dp, b.pow(2).scale(&fact.inverse().unwrap()));
        let w = &OperatorExpr::generator(x(1)) * &OperatorExpr::generator(d(0));
        assert_eq!(w, OperatorExpr::word(vec![x(1), d(0)]));
        assert!((&b - &b).is_zero());
    }

    #[test]
    fn application_order() {
        let t = Toy(2);
        let p = QPolynomial::variable(2, 1);
        assert_eq!(apply(&OperatorExpr::identity(), &p, &t).unwrap(), p);
        let w = OperatorExpr::word(vec![x(0), d(1)]);
        assert_eq!(apply(&w, &p, &t).unwrap(), QPolynomial::variable(2, 0));
        let unknown = OperatorExpr::generator(Generator::new(GeneratorFamily::B, 0));
        assert_eq!(apply(&unknown, &p, &t), Err(Error::UnknownSymbol(Generator::new(GeneratorFamily::B, 0))));
        assert!(apply(&w, &QPolynomial::variable(3, 0), &t).is_err());
    }

    #[test]
    fn equality_reports() {
        let t = Toy(2);
        let e = OperatorExpr::word(vec![x(0), d(1), m(0)]);
        assert!(operator_equal_on_degrees(&e, &e, &t, 3).unwrap().is_equal());
        let mm = OperatorExpr::word(vec![m(0), Generator::inv(GeneratorFamily::ModM, 0)]);
        let rep = operator_equal_on_degrees(&mm, &OperatorExpr::identity(), &t, 3).unwrap();
        assert!(rep.is_equal());
        assert_eq!(rep.monomials_checked, 1 + 2 + 3 + 4);
        let dx = OperatorExpr::word(vec![d(0), x(0)]);
        let xd = OperatorExpr::word(vec![x(0), d(0)]);
        let rep = operator_equal_on_degrees(&dx, &xd, &t, 2).unwrap();
        assert!(!rep.is_equal());
        // ([a+1] - [a]) X^a is nonzero on every monomial.
        assert_eq!(rep.residuals.len(), 6);
    }

    #[test]
    fn cleared_residual_matches_direct() {
        let t = Toy(1);
        let qq = ScalarQ::from(&LaurentPoly::q_pow(1) - &LaurentPoly::q_pow(-1));
        let e1 = OperatorExpr::word(vec![d(0), x(0)]).scale(&qq.inverse().unwrap());
        let e2 = OperatorExpr::zero();
        let rep = operator_equal_on_degrees(&e1, &e2, &t, 1).unwrap();
        let direct = apply(&e1, &QPolynomial::variable(1, 0), &t).unwrap();
        assert_eq!(rep.residuals[1].image, direct);
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, 0usize..2, any::<bool>()), 0..4).prop_map(|v| {
            v.into_iter()
                .map(|(f, i, inv)| match f {
                    0 => d(i),
                    1 => x(i),
                    _ => Generator { family: GeneratorFamily::ModM, index: i, inverse: inv },
                })
                .collect()
        })
    }

    fn poly_strategy() -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec(((0u32..4, 0u32..4), -3i64..4), 0..5).prop_map(|ts| {
            QPolynomial::from_terms(
                2,
                ts.into_iter().map(|((a, b), c)| (ExponentVector::new(vec![a, b]), ScalarQ::from_integer(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn apply_is_linear(w in word_strategy(), p in poly_strategy(), r in poly_strategy(), a in -3i64..4, b in -3i64..4) {
            let t = Toy(2);
            let e = OperatorExpr::word(w);
            let (a, b) = (ScalarQ::from_integer(a), ScalarQ::from_integer(b));
            let lhs = apply(&e, &(&p.scale(&a) + &r.scale(&b)), &t).unwrap();
            let rhs = &apply(&e, &p, &t).unwrap().scale(&a) + &apply(&e, &r, &t).unwrap().scale(&b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn apply_respects_products(w1 in word_strategy(), w2 in word_strategy(), p in poly_strategy()) {
            let t = Toy(2);
            let (e1, e2) = (OperatorExpr::word(w1), OperatorExpr::word(w2));
            let lhs = apply(&(&e1 * &e2), &p, &t).unwrap();
            let rhs = apply(&e1, &apply(&e2, &p, &t).unwrap(), &t).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
