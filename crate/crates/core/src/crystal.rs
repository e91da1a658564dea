//! Divided-power basis, Kashiwara operators and crystal graphs of `P_s` for
//! diagrams I, III and A1AFF.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::iqg::OscillatorTable;
use crate::operator::{apply_word, Generator, GeneratorFamily};
use crate::poly::{monomials_of_degree, ExponentVector, QPolynomial};
use crate::satake::{DiagramSpec, SatakeDiagram};
use crate::scalar::{is_regular_at_zero, q_factorial, ScalarQ};

/// `Π_i [a_i]^{ξ_i}!`, the factor between `X^a` and `X^(a)`.
fn divided_factor(xi: &[i32], a: &ExponentVector) -> Result<ScalarQ> {
    if a.len() != xi.len() {
        return Err(Error::LengthMismatch { expected: xi.len(), found: a.len() });
    }
    let mut c = ScalarQ::one();
    for (&e, &k) in a.entries().iter().zip(xi) {
        c = &c * &ScalarQ::from(q_factorial(i64::from(e), i64::from(k))?);
    }
    Ok(c)
}

/// An element of `P` in divided coordinates: `Σ c_a X^(a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeElement {
    coordinates: BTreeMap<ExponentVector, ScalarQ>,
}

impl LatticeElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(a: ExponentVector) -> Self {
        let mut e = Self::new();
        e.add(a, ScalarQ::one());
        e
    }

    pub fn add(&mut self, a: ExponentVector, c: ScalarQ) {
        let slot = self.coordinates.entry(a.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.coordinates.remove(&a);
        }
    }

    pub fn coordinates(&self) -> &BTreeMap<ExponentVector, ScalarQ> {
        &self.coordinates
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.is_empty()
    }

    /// Membership in the `A_0`-lattice spanned by the divided monomials.
    pub fn in_lattice(&self) -> bool {
        self.coordinates.values().all(is_regular_at_zero)
    }

    /// The single basis element this equals, if it is one with coefficient exactly 1.
    pub fn as_basis_element(&self) -> Option<&ExponentVector> {
        match self.coordinates.iter().next() {
            Some((a, c)) if self.coordinates.len() == 1 && c.is_one() => Some(a),
            _ => None,
        }
    }
}

/// Coefficient of `X^(a)` is the coefficient of `X^a` times `Π[a_i]^{ξ_i}!`.
pub fn to_divided(xi: &[i32], p: &QPolynomial) -> Result<LatticeElement> {
    let mut out = LatticeElement::new();
    for (a, c) in p.terms() {
        out.add(a.clone(), c * &divided_factor(xi, a)?);
    }
    Ok(out)
}

pub fn from_divided(xi: &[i32], e: &LatticeElement) -> Result<QPolynomial> {
    let mut out = QPolynomial::zero(xi.len());
    for (a, c) in e.coordinates() {
        out.add_term(a.clone(), &c.checked_div(&divided_factor(xi, a)?)?)?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `ẽ_i`
    Raise,
    /// `f̃_i`
    Lower,
}

/// The closed form of the Kashiwara operators on exponent vectors.
pub fn combinatorial_rule(i: usize, a: &ExponentVector, dir: Direction) -> Option<ExponentVector> {
    if i + 1 >= a.len() {
        return None;
    }
    match dir {
        Direction::Lower => a.shifted(&[(i, -1), (i + 1, 1)]),
        Direction::Raise => a.shifted(&[(i, 1), (i + 1, -1)]),
    }
}

/// Kashiwara operators of a crystal-bearing diagram, computed from the
/// defining formula through the oscillator action.
#[derive(Clone, Debug)]
pub struct Crystal {
    diagram: SatakeDiagram,
    oscillator: OscillatorTable,
}

impl Crystal {
    pub fn new(d: &SatakeDiagram) -> Result<Self> {
        if !d.kind().has_crystal() {
            return Err(Error::UnsupportedDiagram(d.kind()));
        }
        Ok(Self { diagram: d.clone(), oscillator: OscillatorTable::new(d) })
    }

    pub fn diagram(&self) -> &SatakeDiagram {
        &self.diagram
    }

    /// Number of colors `i = 0..=r`.
    pub fn colors(&self) -> usize {
        self.diagram.r() + 1
    }

    /// `Λ_s`, lexicographically descending.
    pub fn nodes(&self, s: u32) -> Vec<ExponentVector> {
        monomials_of_degree(self.diagram.nvars(), s)
    }

    fn check(&self, i: usize, a: &ExponentVector) -> Result<()> {
        crate::weyl::check_index("color", i, self.colors())?;
        if a.len() != self.diagram.nvars() {
            return Err(Error::LengthMismatch { expected: self.diagram.nvars(), found: a.len() });
        }
        Ok(())
    }

    /// `ẽ_i X^(a)` or `f̃_i X^(a)` in divided coordinates, straight from
    /// `f_i^{(n)_{ξ_{i+1}}} X^(a + a_{i+1}(e_i - e_{i+1}))` with `n = a_{i+1} ± 1`.
    /// A negative divided power is zero.
    pub fn apply_raw(&self, i: usize, a: &ExponentVector, dir: Direction) -> Result<LatticeElement> {
        self.check(i, a)?;
        let xi = self.diagram.xi();
        let top = i64::from(a.get(i + 1));
        let n = match dir {
            Direction::Lower => top + 1,
            Direction::Raise => top - 1,
        };
        if n < 0 {
            return Ok(LatticeElement::new());
        }
        let base = a.shifted(&[(i, top), (i + 1, -top)]).expect("moving a_{i+1} into slot i");
        let start = from_divided(xi, &LatticeElement::basis(base))?;
        let f = Generator::new(GeneratorFamily::AliasF, i);
        let word = alloc::vec![f; n as usize];
        let out = apply_word(&word, &start, &self.oscillator)?;
        let scale = ScalarQ::from(q_factorial(n, i64::from(xi[i + 1]))?).inverse()?;
        to_divided(xi, &out.scale(&scale))
    }

    /// The operator as a partial map on `Λ_s`; errors if the defining formula
    /// leaves the divided basis.
    pub fn apply(&self, i: usize, a: &ExponentVector, dir: Direction) -> Result<Option<ExponentVector>> {
        let raw = self.apply_raw(i, a, dir)?;
        if raw.is_zero() {
            return Ok(None);
        }
        raw.as_basis_element()
            .cloned()
            .map(Some)
            .ok_or_else(|| Error::NotApplicable(format!("{dir:?}_{i} of {a} is not a divided basis element")))
    }

    pub fn kashiwara_f(&self, i: usize, a: &ExponentVector) -> Result<Option<ExponentVector>> {
        self.apply(i, a, Direction::Lower)
    }

    pub fn kashiwara_e(&self, i: usize, a: &ExponentVector) -> Result<Option<ExponentVector>> {
        self.apply(i, a, Direction::Raise)
    }

    /// Linear extension to a lattice element.
    pub fn apply_element(&self, i: usize, e: &LatticeElement, dir: Direction) -> Result<LatticeElement> {
        let mut out = LatticeElement::new();
        for (a, c) in e.coordinates() {
            for (b, d) in self.apply_raw(i, a, dir)?.coordinates() {
                out.add(b.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// All `f̃`-edges leaving `a`, by color.
    pub fn edges_from(&self, a: &ExponentVector) -> Result<Vec<CrystalEdge>> {
        let mut out = Vec::new();
        for i in 0..self.colors() {
            if let Some(to) = self.kashiwara_f(i, a)? {
                out.push(CrystalEdge { from: a.clone(), color: i, to });
            }
        }
        Ok(out)
    }

    pub fn graph(&self, s: u32) -> Result<CrystalGraph> {
        let nodes = self.nodes(s);
        let mut edges = Vec::new();
        for a in &nodes {
            edges.extend(self.edges_from(a)?);
        }
        Ok(CrystalGraph::new(self.diagram.spec(), s, nodes, edges))
    }

    /// Exhaustive lattice and basis checks on `Λ_s`.
    pub fn axioms_check(&self, s: u32) -> Result<AxiomReport> {
        let nodes = self.nodes(s);
        let mut report = AxiomReport {
            nodes: nodes.len(),
            expected_rank: binomial(u64::from(s) + self.diagram.nvars() as u64 - 1, self.diagram.nvars() as u64 - 1),
            ..AxiomReport::default()
        };
        let mut images: BTreeMap<(Direction, usize, &ExponentVector), Option<ExponentVector>> = BTreeMap::new();
        for a in &nodes {
            for i in 0..self.colors() {
                for dir in [Direction::Lower, Direction::Raise] {
                    let raw = self.apply_raw(i, a, dir)?;
                    let image = if raw.is_zero() { None } else { raw.as_basis_element().cloned() };
                    if !raw.is_zero() && image.is_none() {
                        report.closure.push((dir, i, a.clone()));
                        continue;
                    }
                    if image != combinatorial_rule(i, a, dir) {
                        report.rule.push((dir, i, a.clone()));
                    }
                    if let Some(b) = &image {
                        let sign = if dir == Direction::Lower { 1 } else { -1 };
                        if a.shifted(&[(i, -sign), (i + 1, sign)]).as_ref() != Some(b) {
                            report.weight.push((dir, i, a.clone()));
                        }
                    }
                    images.insert((dir, i, a), image);
                }
            }
        }
        let image = |dir, i, a| images.get(&(dir, i, a)).cloned().flatten();
        for i in 0..self.colors() {
            for a in &nodes {
                for b in &nodes {
                    let fwd = image(Direction::Lower, i, a).as_ref() == Some(b);
                    let back = image(Direction::Raise, i, b).as_ref() == Some(a);
                    if fwd != back {
                        report.b5.push((i, a.clone(), b.clone()));
                    }
                }
            }
        }
        Ok(report)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    num_integer::binomial(n, k)
}

/// Failures found by [`Crystal::axioms_check`]; empty lists mean the axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub nodes: usize,
    pub expected_rank: u64,
    /// Images that are neither zero nor a divided basis element with coefficient 1.
    pub closure: Vec<(Direction, usize, ExponentVector)>,
    /// Pairs violating `f̃_i a = b ⟺ ẽ_i b = a`.
    pub b5: Vec<(usize, ExponentVector, ExponentVector)>,
    /// Images whose weight is not shifted by `∓(e_i - e_{i+1})`.
    pub weight: Vec<(Direction, usize, ExponentVector)>,
    /// Disagreements with [`combinatorial_rule`].
    pub rule: Vec<(Direction, usize, ExponentVector)>,
}

impl AxiomReport {
    pub fn rank_ok(&self) -> bool {
        self.nodes as u64 == self.expected_rank
    }

    pub fn is_ok(&self) -> bool {
        self.rank_ok()
            && self.closure.is_empty()
            && self.b5.is_empty()
            && self.weight.is_empty()
            && self.rule.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrystalEdge {
    pub from: ExponentVector,
    pub color: usize,
    pub to: ExponentVector,
}

/// Nodes lexicographically descending; edges sorted by `(from desc, color, to desc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    pub diagram: DiagramSpec,
    pub s: u32,
    pub nodes: Vec<ExponentVector>,
    pub edges: Vec<CrystalEdge>,
}

impl CrystalGraph {
    pub fn new(diagram: DiagramSpec, s: u32, mut nodes: Vec<ExponentVector>, mut edges: Vec<CrystalEdge>) -> Self {
        nodes.sort_by(|a, b| b.cmp(a));
        nodes.dedup();
        edges.sort_by(|x, y| y.from.cmp(&x.from).then(x.color.cmp(&y.color)).then(y.to.cmp(&x.to)));
        edges.dedup();
        Self { diagram, s, nodes, edges }
    }

    pub fn edges_of_color(&self, i: usize) -> impl Iterator<Item = &CrystalEdge> + '_ {
        self.edges.iter().filter(move |e| e.color == i)
    }
}

/// Compact node label: `300` for single-digit entries, `3,0,0` otherwise.
pub fn node_label(a: &ExponentVector) -> alloc::string::String {
    use fmt::Write;
    let mut out = alloc::string::String::new();
    if a.entries().iter().all(|&e| e < 10) {
        for e in a.entries() {
            let _ = write!(out, "{e}");
        }
    } else {
        let _ = write!(out, "{a}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satake::{all_specs, DiagramKind};
    use crate::scalar::{q_integer, LaurentPoly};
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn crystal(kind: DiagramKind, r: usize) -> Crystal {
        Crystal::new(&SatakeDiagram::build(kind, r).unwrap()).unwrap()
    }

    fn crystal_specs() -> Vec<DiagramSpec> {
        all_specs(2).into_iter().filter(|s| s.kind.has_crystal()).collect()
    }

    #[test]
    fn divided_coordinates() {
        let d = SatakeDiagram::build(DiagramKind::I, 1).unwrap();
        let x0 = QPolynomial::variable(3, 0);
        assert_eq!(to_divided(d.xi(), &x0).unwrap(), LatticeElement::basis(ev(&[1, 0, 0])));
        let x2 = QPolynomial::monomial(ev(&[0, 0, 2]), ScalarQ::one());
        let e = to_divided(d.xi(), &x2).unwrap();
        assert_eq!(e.coordinates()[&ev(&[0, 0, 2])], ScalarQ::from(&q_integer(4) * &q_integer(2)));
    }

    #[test]
    fn divided_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in all_specs(2) {
            let d = SatakeDiagram::from_spec(spec).unwrap();
            for _ in 0..100 / 8 + 1 {
                let mut p = QPolynomial::zero(d.nvars());
                for _ in 0..rng.gen_range(0..5) {
                    let a = ExponentVector::new((0..d.nvars()).map(|_| rng.gen_range(0..4)).collect());
                    let c = LaurentPoly::from_terms((0..3).map(|_| {
                        (rng.gen_range(-3..4), num_rational::BigRational::from_integer(rng.gen_range(-5..6).into()))
                    }));
                    p.add_term(a, &ScalarQ::from(c)).unwrap();
                }
                let back = from_divided(d.xi(), &to_divided(d.xi(), &p).unwrap()).unwrap();
                assert_eq!(back, p);
            }
        }
    }

    #[test]
    fn example_graph() {
        let g = crystal(DiagramKind::I, 1).graph(3).unwrap();
        assert_eq!(g.nodes.len(), 10);
        let pairs = |i| -> Vec<(alloc::string::String, alloc::string::String)> {
            g.edges_of_color(i).map(|e| (node_label(&e.from), node_label(&e.to))).collect()
        };
        let want = |v: &[(&str, &str)]| -> Vec<_> { v.iter().map(|(a, b)| ((*a).into(), (*b).into())).collect() };
        assert_eq!(
            pairs(0),
            want(&[("300", "210"), ("210", "120"), ("201", "111"), ("120", "030"), ("111", "021"), ("102", "012")])
        );
        assert_eq!(
            pairs(1),
            want(&[("210", "201"), ("120", "111"), ("111", "102"), ("030", "021"), ("021", "012"), ("012", "003")])
        );
    }

    #[test]
    fn operator_examples() {
        let c = crystal(DiagramKind::I, 1);
        assert_eq!(c.kashiwara_f(0, &ev(&[3, 0, 0])).unwrap(), Some(ev(&[2, 1, 0])));
        assert_eq!(c.kashiwara_f(0, &ev(&[0, 3, 0])).unwrap(), None);
        assert_eq!(c.kashiwara_e(1, &ev(&[3, 0, 0])).unwrap(), None);
        assert_eq!(c.kashiwara_f(1, &ev(&[1, 1, 1])).unwrap(), Some(ev(&[1, 0, 2])));
        assert_eq!(c.kashiwara_e(1, &ev(&[1, 0, 2])).unwrap(), Some(ev(&[1, 1, 1])));
        assert_eq!(combinatorial_rule(1, &ev(&[0, 3, 0]), Direction::Lower), Some(ev(&[0, 2, 1])));
        assert!(c.kashiwara_f(2, &ev(&[1, 0, 0])).is_err());
        let g = crystal(DiagramKind::I, 2).graph(0).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (1, 0));
        let a = crystal(DiagramKind::A1Aff, 0);
        let g = a.graph(2).unwrap();
        let path: Vec<_> = g.edges.iter().map(|e| (node_label(&e.from), node_label(&e.to))).collect();
        assert_eq!(path, vec![("20".into(), "11".into()), ("11".into(), "02".into())]);
    }

    #[test]
    fn unsupported_kinds() {
        for kind in [DiagramKind::II, DiagramKind::IV, DiagramKind::V, DiagramKind::VI] {
            let d = SatakeDiagram::build(kind, 1).unwrap();
            assert_eq!(Crystal::new(&d).unwrap_err(), Error::UnsupportedDiagram(kind));
        }
    }

    #[test]
    fn axioms_hold() {
        for spec in crystal_specs() {
            let c = Crystal::new(&SatakeDiagram::from_spec(spec).unwrap()).unwrap();
            for s in 0..=5 {
                let rep = c.axioms_check(s).unwrap();
                assert!(rep.is_ok(), "{spec} s={s}: {rep:?}");
            }
        }
    }

    #[test]
    fn lattice_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let specs = crystal_specs();
        for n in 0..100 {
            let c = Crystal::new(&SatakeDiagram::from_spec(specs[n % specs.len()]).unwrap()).unwrap();
            let s = rng.gen_range(0..=4);
            let nodes = c.nodes(s);
            let mut e = LatticeElement::new();
            for _ in 0..3 {
                let a = nodes[rng.gen_range(0..nodes.len())].clone();
                let coef = LaurentPoly::from_terms((0..2).map(|_| {
                    (rng.gen_range(0..4), num_rational::BigRational::from_integer(rng.gen_range(-4..5).into()))
                }));
                let den = &LaurentPoly::one() + &LaurentPoly::q_pow(rng.gen_range(1..3));
                e.add(a, ScalarQ::new(coef, den).unwrap());
            }
            assert!(e.in_lattice());
            for i in 0..c.colors() {
                for dir in [Direction::Lower, Direction::Raise] {
                    assert!(c.apply_element(i, &e, dir).unwrap().in_lattice());
                }
            }
        }
        let mut outside = LatticeElement::new();
        outside.add(ev(&[1, 0]), ScalarQ::q_pow(-1));
        assert!(!outside.in_lattice());
    }
}
