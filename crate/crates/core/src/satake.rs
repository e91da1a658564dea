//! Quasi-split Satake diagrams of type A and affine type A: nodes, Cartan
//! pairing, the diagram involution `τ`, orbit labels, `ξ` and `ς`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::ScalarQ;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagramKind {
    I,
    II,
    III,
    A1Aff,
    IV,
    V,
    VI,
}

impl DiagramKind {
    pub const ALL: [DiagramKind; 7] = [
        DiagramKind::I,
        DiagramKind::II,
        DiagramKind::III,
        DiagramKind::A1Aff,
        DiagramKind::IV,
        DiagramKind::V,
        DiagramKind::VI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiagramKind::I => "I",
            DiagramKind::II => "II",
            DiagramKind::III => "III",
            DiagramKind::A1Aff => "A1AFF",
            DiagramKind::IV => "IV",
            DiagramKind::V => "V",
            DiagramKind::VI => "VI",
        }
    }

    /// Smallest admissible `r`.
    pub fn min_rank(self) -> usize {
        match self {
            DiagramKind::III | DiagramKind::VI => 1,
            _ => 0,
        }
    }

    /// Whether the kind carries a rank parameter (A1AFF does not).
    pub fn has_rank(self) -> bool {
        self != DiagramKind::A1Aff
    }

    /// Whether crystal bases are constructed for this kind.
    pub fn has_crystal(self) -> bool {
        matches!(self, DiagramKind::I | DiagramKind::III | DiagramKind::A1Aff)
    }
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DiagramKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DiagramKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidDiagram(format!("unknown diagram kind `{s}`")))
    }
}

/// A diagram kind together with its rank, as written on the command line:
/// `I:r=2`, `A1AFF`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramSpec {
    pub kind: DiagramKind,
    pub r: usize,
}

impl DiagramSpec {
    pub fn new(kind: DiagramKind, r: usize) -> Result<Self> {
        if !kind.has_rank() && r != 0 {
            return Err(Error::InvalidDiagram(format!("{kind} takes no rank parameter")));
        }
        if r < kind.min_rank() {
            return Err(Error::InvalidDiagram(format!("{kind} requires r >= {}", kind.min_rank())));
        }
        Ok(Self { kind, r })
    }

    /// Number of variables of `P`, always `r + 2`.
    pub fn nvars(&self) -> usize {
        self.r + 2
    }
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.has_rank() {
            write!(f, "{}:r={}", self.kind, self.r)
        } else {
            write!(f, "{}", self.kind)
        }
    }
}

impl FromStr for DiagramSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rank) = match s.split_once(':') {
            Some((k, rest)) => (k, Some(rest.trim())),
            None => (s, None),
        };
        let kind: DiagramKind = kind.trim().parse()?;
        let r = match rank {
            None if kind.has_rank() => {
                return Err(Error::InvalidDiagram(format!("{kind} needs a rank, e.g. `{kind}:r=1`")))
            }
            None => 0,
            Some(rest) => {
                let v = rest
                    .strip_prefix("r=")
                    .ok_or_else(|| Error::InvalidDiagram(format!("expected `r=<n>`, got `{rest}`")))?;
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidDiagram(format!("r must be a nonnegative integer, got `{v}`")))?
            }
        };
        DiagramSpec::new(kind, r)
    }
}

/// A fully populated Satake diagram.
///
/// Variables of `P` are indexed by `0..nvars()`; every τ-orbit controls one
/// variable slot (its orbit label) whose `ξ` equals `1 - i·τi`. Diagrams
/// I, III and A1AFF have one slot more than orbits; that extra slot has `ξ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeDiagram {
    spec: DiagramSpec,
    edges: Vec<(usize, usize)>,
    tau: Vec<usize>,
    orbit_label: Vec<usize>,
    xi: Vec<i32>,
    varsigma: Vec<ScalarQ>,
}

impl SatakeDiagram {
    pub fn build(kind: DiagramKind, r: usize) -> Result<Self> {
        Self::from_spec(DiagramSpec::new(kind, r)?)
    }

    pub fn from_spec(spec: DiagramSpec) -> Result<Self> {
        let r = spec.r;
        let path = |n: usize| (0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
        let cycle = |n: usize| {
            let mut e = path(n);
            e.push((0, n - 1));
            e
        };
        let (n, edges): (usize, Vec<(usize, usize)>) = match spec.kind {
            DiagramKind::I => (2 * r + 2, path(2 * r + 2)),
            DiagramKind::II => (2 * r + 3, path(2 * r + 3)),
            DiagramKind::III => (2 * r + 2, cycle(2 * r + 2)),
            DiagramKind::A1Aff => (2, vec![(0, 1), (0, 1)]),
            DiagramKind::IV | DiagramKind::V => (2 * r + 3, cycle(2 * r + 3)),
            DiagramKind::VI => (2 * r + 2, cycle(2 * r + 2)),
        };
        let tau: Vec<usize> = (0..n)
            .map(|i| match spec.kind {
                DiagramKind::V if i == 0 => 0,
                DiagramKind::V => 2 * r + 3 - i,
                DiagramKind::VI if i == 0 || i == r + 1 => i,
                DiagramKind::VI => 2 * r + 2 - i,
                _ => n - 1 - i,
            })
            .collect();
        // Diagrams with an extra free slot put the middle orbit on slot r+1.
        let extra_slot = matches!(spec.kind, DiagramKind::I | DiagramKind::III | DiagramKind::A1Aff);
        let orbit_label: Vec<usize> = (0..n)
            .map(|i| {
                let rep = i.min(tau[i]);
                if extra_slot && rep == r {
                    r + 1
                } else {
                    rep
                }
            })
            .collect();
        let mut d =
            SatakeDiagram { spec, edges, tau, orbit_label, xi: vec![1; r + 2], varsigma: vec![ScalarQ::one(); n] };
        for i in 0..n {
            d.xi[d.orbit_label[i]] = 1 - d.pair(i, d.tau[i]);
        }
        for i in 0..n {
            let p = d.pair(i, d.tau[i]);
            let is_rep = i <= d.tau[i];
            d.varsigma[i] = match (p, is_rep) {
                (2, _) => ScalarQ::q_pow(-1),
                (0, _) => ScalarQ::one(),
                (-1, true) => ScalarQ::q_pow(1),
                (-1, false) => ScalarQ::one(),
                // (q, q) is the only choice for which the relations hold under the
                // oscillator realization; (q, -q^-3) fails.
                (-2, _) => ScalarQ::q_pow(1),
                _ => return Err(Error::InvalidDiagram(format!("unexpected i.tau(i) = {p}"))),
            };
        }
        if d.xi.contains(&0) {
            return Err(Error::InvalidDiagram("xi must be nonzero".to_string()));
        }
        Ok(d)
    }

    pub fn spec(&self) -> DiagramSpec {
        self.spec
    }

    pub fn kind(&self) -> DiagramKind {
        self.spec.kind
    }

    pub fn r(&self) -> usize {
        self.spec.r
    }

    pub fn num_nodes(&self) -> usize {
        self.tau.len()
    }

    /// Number of variables of `P`, always `r + 2`.
    pub fn nvars(&self) -> usize {
        self.xi.len()
    }

    fn pair(&self, i: usize, j: usize) -> i32 {
        if i == j {
            return 2;
        }
        -(self.edges.iter().filter(|&&(a, b)| (a, b) == (i, j) || (b, a) == (i, j)).count() as i32)
    }

    fn check_node(&self, i: usize) -> Result<()> {
        crate::weyl::check_index("node", i, self.num_nodes())
    }

    /// The Cartan pairing `i·j`.
    pub fn pairing(&self, i: usize, j: usize) -> Result<i32> {
        self.check_node(i)?;
        self.check_node(j)?;
        Ok(self.pair(i, j))
    }

    /// Panicking variant of [`SatakeDiagram::pairing`] for indices known to be valid.
    pub fn dot(&self, i: usize, j: usize) -> i32 {
        assert!(i < self.num_nodes() && j < self.num_nodes(), "node out of range");
        self.pair(i, j)
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    pub fn orbit_label(&self, i: usize) -> usize {
        self.orbit_label[i]
    }

    pub fn xi(&self) -> &[i32] {
        &self.xi
    }

    pub fn varsigma(&self, i: usize) -> Result<&ScalarQ> {
        self.check_node(i)?;
        Ok(&self.varsigma[i])
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Orbit representatives `i < τi`, where the aliases `e_i, f_i, k_i` live.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.num_nodes()).filter(|&i| i < self.tau[i]).collect()
    }

    /// τ-fixed nodes, where the alias `t_i` lives.
    pub fn fixed_nodes(&self) -> Vec<usize> {
        (0..self.num_nodes()).filter(|&i| i == self.tau[i]).collect()
    }

    /// The τ-orbits, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        (0..self.num_nodes())
            .filter(|&i| i <= self.tau[i])
            .map(|i| if i == self.tau[i] { vec![i] } else { vec![i, self.tau[i]] })
            .collect()
    }

    /// A copy with `ς_i` replaced; used to check that the relation engine
    /// notices a wrong parameter.
    pub fn with_varsigma(&self, i: usize, value: ScalarQ) -> Result<Self> {
        self.check_node(i)?;
        let mut d = self.clone();
        d.varsigma[i] = value;
        Ok(d)
    }

    /// A copy with `ξ_k` replaced (same purpose as [`SatakeDiagram::with_varsigma`]).
    pub fn with_xi(&self, k: usize, value: i32) -> Result<Self> {
        crate::weyl::check_index("variable", k, self.nvars())?;
        if value == 0 {
            return Err(Error::InvalidDiagram("xi must be nonzero".to_string()));
        }
        let mut d = self.clone();
        d.xi[k] = value;
        Ok(d)
    }
}

/// Every supported `(kind, r)` with `r <= max_r`, in a fixed order.
pub fn all_specs(max_r: usize) -> Vec<DiagramSpec> {
    let mut out = Vec::new();
    for kind in DiagramKind::ALL {
        if kind.has_rank() {
            for r in kind.min_rank()..=max_r {
                out.push(DiagramSpec { kind, r });
            }
        } else {
            out.push(DiagramSpec { kind, r: 0 });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn d(kind: DiagramKind, r: usize) -> SatakeDiagram {
        SatakeDiagram::build(kind, r).unwrap()
    }

    #[test]
    fn xi_values() {
        assert_eq!(d(DiagramKind::I, 2).xi(), &[1, 1, 1, 2]);
        assert_eq!(d(DiagramKind::II, 1).xi(), &[1, 1, -1]);
        assert_eq!(d(DiagramKind::III, 2).xi(), &[2, 1, 1, 2]);
        assert_eq!(d(DiagramKind::A1Aff, 0).xi(), &[1, 3]);
        assert_eq!(d(DiagramKind::IV, 2).xi(), &[2, 1, 1, -1]);
        assert_eq!(d(DiagramKind::IV, 0).xi(), &[2, -1]);
        assert_eq!(d(DiagramKind::V, 1).xi(), &[-1, 1, 2]);
        assert_eq!(d(DiagramKind::VI, 2).xi(), &[-1, 1, 1, -1]);
    }

    #[test]
    fn pairing_examples() {
        let iii = d(DiagramKind::III, 1);
        assert_eq!(iii.pairing(0, 0).unwrap(), 2);
        assert_eq!(iii.pairing(0, iii.num_nodes() - 1).unwrap(), -1);
        assert_eq!(iii.pairing(0, 2).unwrap(), 0);
        assert_eq!(d(DiagramKind::A1Aff, 0).pairing(0, 1).unwrap(), -2);
        assert!(matches!(iii.pairing(0, 9), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn varsigma_table() {
        let ii = d(DiagramKind::II, 1);
        assert_eq!(ii.varsigma(2).unwrap(), &ScalarQ::q_pow(-1));
        assert_eq!(ii.varsigma(0).unwrap(), &ScalarQ::one());
        assert_eq!(ii.varsigma(4).unwrap(), &ScalarQ::one());
        let i1 = d(DiagramKind::I, 1);
        assert_eq!(i1.varsigma(1).unwrap(), &ScalarQ::q_pow(1));
        assert_eq!(i1.varsigma(2).unwrap(), &ScalarQ::one());
        let a = d(DiagramKind::A1Aff, 0);
        assert_eq!(a.varsigma(0).unwrap(), &ScalarQ::q_pow(1));
        assert_eq!(a.varsigma(1).unwrap(), &ScalarQ::q_pow(1));
    }

    #[test]
    fn structural_invariants() {
        for spec in all_specs(3) {
            let dg = SatakeDiagram::from_spec(spec).unwrap();
            let n = dg.num_nodes();
            let mut seen = vec![false; dg.nvars()];
            for i in 0..n {
                assert_eq!(dg.tau(dg.tau(i)), i, "{spec}");
                assert_eq!(dg.tau(i) == i, dg.pairing(i, dg.tau(i)).unwrap() == 2);
                assert_eq!(dg.xi()[dg.orbit_label(i)], 1 - dg.dot(i, dg.tau(i)), "{spec} node {i}");
                assert_eq!(dg.orbit_label(i), dg.orbit_label(dg.tau(i)));
                seen[dg.orbit_label(i)] = true;
                if dg.dot(i, dg.tau(i)) == 0 {
                    assert_eq!(dg.varsigma(i).unwrap(), dg.varsigma(dg.tau(i)).unwrap());
                }
                for j in 0..n {
                    assert_eq!(dg.dot(i, j), dg.dot(j, i));
                    assert_eq!(dg.dot(dg.tau(i), dg.tau(j)), dg.dot(i, j), "{spec} ({i},{j})");
                }
            }
            let orbits = dg.orbits();
            assert!(orbits.iter().all(|o| o.len() == 1 || o.len() == 2));
            assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), n);
            let labels: Vec<_> = orbits.iter().map(|o| dg.orbit_label(o[0])).collect();
            let mut sorted = labels.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), labels.len(), "distinct labels for {spec}");
            let expected_orbits = if matches!(spec.kind, DiagramKind::I | DiagramKind::III | DiagramKind::A1Aff) {
                spec.r + 1
            } else {
                spec.r + 2
            };
            assert_eq!(orbits.len(), expected_orbits, "{spec}");
            // The one unlabeled slot, if any, is free with xi = 1.
            for (k, s) in seen.iter().enumerate() {
                if !s {
                    assert_eq!(dg.xi()[k], 1);
                }
            }
        }
    }

    #[test]
    fn spec_strings() {
        for spec in all_specs(2) {
            assert_eq!(spec.to_string().parse::<DiagramSpec>().unwrap(), spec);
        }
        assert_eq!("I:r=2".parse::<DiagramSpec>().unwrap(), DiagramSpec { kind: DiagramKind::I, r: 2 });
        assert!("I:r=-1".parse::<DiagramSpec>().is_err());
        assert!("III:r=0".parse::<DiagramSpec>().is_err());
        assert!("I".parse::<DiagramSpec>().is_err());
        assert!("VII:r=1".parse::<DiagramSpec>().is_err());
        assert!("A1AFF:r=1".parse::<DiagramSpec>().is_err());
    }

    #[test]
    fn mutations() {
        let a = d(DiagramKind::A1Aff, 0);
        let m = a.with_varsigma(1, ScalarQ::q_pow(-3)).unwrap();
        assert_ne!(a, m);
        assert!(a.with_xi(1, 0).is_err());
        assert_eq!(d(DiagramKind::I, 1).with_xi(2, -2).unwrap().xi(), &[1, 1, -2]);
    }
}
