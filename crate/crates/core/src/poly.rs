//! The polynomial ring `P = Q(q)[X_0, ..., X_{n-1}]`, stored sparsely.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::ScalarQ;

/// An exponent vector `a = (a_0, ..., a_{n-1})`, naming the monomial `X^a`.
///
/// The derived order is lexicographic: the leftmost differing entry decides.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    /// The unit vector `e_i`.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut v = Self::zero(nvars);
        v.0[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.len() != other.len() {
            return None;
        }
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<_>>().map(Self)
    }

    /// `self + e_i`.
    pub fn incremented(&self, i: usize) -> Self {
        let mut v = self.clone();
        v.0[i] += 1;
        v
    }

    /// `self - e_i`, or `None` when `a_i = 0`.
    pub fn decremented(&self, i: usize) -> Option<Self> {
        let mut v = self.clone();
        v.0[i] = v.0[i].checked_sub(1)?;
        Some(v)
    }

    /// `self + k e_from - k e_to` style moves; `None` if an entry would go negative.
    pub fn shifted(&self, deltas: &[(usize, i64)]) -> Option<Self> {
        let mut v = self.clone();
        for &(i, d) in deltas {
            let e = i64::from(v.0[i]) + d;
            v.0[i] = u32::try_from(e).ok()?;
        }
        Some(v)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.len(), found: other.len() })
        }
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExponentVector {
    /// Comma separated, e.g. `3,0,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// All exponent vectors of length `nvars` and total degree `s` (the set
/// `Λ_s`), in lexicographically descending order.
pub fn monomials_of_degree(nvars: usize, s: u32) -> Vec<ExponentVector> {
    fn rec(prefix: &mut Vec<u32>, left: usize, s: u32, out: &mut Vec<ExponentVector>) {
        if left == 1 {
            prefix.push(s);
            out.push(ExponentVector(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=s).rev() {
            prefix.push(a);
            rec(prefix, left - 1, s - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if s == 0 {
            out.push(ExponentVector::default());
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, s, &mut out);
    out
}

/// All exponent vectors of total degree at most `max_s`, degree by degree.
pub fn monomials_up_to_degree(nvars: usize, max_s: u32) -> Vec<ExponentVector> {
    (0..=max_s).flat_map(|s| monomials_of_degree(nvars, s)).collect()
}

/// A polynomial in `P`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, ScalarQ>,
}

impl QPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(ExponentVector::zero(nvars), ScalarQ::one())
    }

    /// `c X^a`.
    pub fn monomial(a: ExponentVector, c: ScalarQ) -> Self {
        let mut p = Self::zero(a.len());
        if !c.is_zero() {
            p.terms.insert(a, c);
        }
        p
    }

    /// The variable `X_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, i), ScalarQ::one())
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, ScalarQ)>,
    {
        let mut p = Self::zero(nvars);
        for (a, c) in terms {
            p.add_term(a, &c)?;
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &ScalarQ)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl DoubleEndedIterator<Item = (ExponentVector, ScalarQ)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, a: &ExponentVector) -> ScalarQ {
        self.terms.get(a).cloned().unwrap_or_else(ScalarQ::zero)
    }

    /// The lexicographically largest exponent with nonzero coefficient.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &ScalarQ)> {
        self.terms.iter().next_back()
    }

    /// `Some(s)` when every term has total degree `s`; the zero polynomial
    /// is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(ExponentVector::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add_term(&mut self, a: ExponentVector, c: &ScalarQ) -> Result<()> {
        if a.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: a.len() });
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(a) {
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
        Ok(())
    }

    fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.nvars, found: other.nvars })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.checked_add(b)?, &(c * d))?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect() }
    }

    /// Multiplies by the monomial `X^b`.
    pub fn mul_monomial(&self, b: &ExponentVector) -> Result<Self> {
        if b.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: b.len() });
        }
        let terms = self.terms.iter().map(|(a, c)| Ok((a.checked_add(b)?, c.clone()))).collect::<Result<_>>()?;
        Ok(Self { nvars: self.nvars, terms })
    }

    /// Substitutes `X_i -> q^k X_i`.
    pub fn substitute_q_power(&self, i: usize, k: i32) -> Self {
        let terms = self.terms.iter().map(|(a, c)| (a.clone(), c * &ScalarQ::q_pow(k * a.get(i) as i32))).collect();
        Self { nvars: self.nvars, terms }
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect() }
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

/// Panics when the rings differ; use [`QPolynomial::checked_add`] to get an error instead.
impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        self.checked_add(rhs).expect("polynomials over different rings")
    }
}

/// Panics when the rings differ; use [`QPolynomial::checked_sub`] to get an error instead.
impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self.checked_sub(rhs).expect("polynomials over different rings")
    }
}

/// Panics when the rings differ; use [`QPolynomial::checked_mul`] to get an error instead.
impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        self.checked_mul(rhs).expect("polynomials over different rings")
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, a: &ExponentVector) -> fmt::Result {
    for (i, &e) in a.entries().iter().enumerate() {
        match e {
            0 => {}
            1 => write!(f, "*X{i}")?,
            _ => write!(f, "*X{i}^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for QPolynomial {
    /// `(c)*X0^2*X3 + (c')*X1 + ...`, lexicographically largest monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            fmt_monomial(f, a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial[{}]({self})", self.nvars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_integer;
    use alloc::format;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn lambda_s_size_and_order() {
        for n in 1..=5usize {
            for s in 0..=6u32 {
                let ms = monomials_of_degree(n, s);
                assert_eq!(ms.len() as u64, binomial(u64::from(s) + n as u64 - 1, n as u64 - 1));
                assert!(ms.windows(2).all(|w| w[0] > w[1]));
                assert!(ms.iter().all(|m| m.degree() == u64::from(s)));
            }
        }
        assert_eq!(monomials_of_degree(3, 1), [ev(&[1, 0, 0]), ev(&[0, 1, 0]), ev(&[0, 0, 1])]);
    }

    #[test]
    fn arithmetic() {
        let x0 = QPolynomial::variable(3, 0);
        let zero = QPolynomial::zero(3);
        assert_eq!(&x0 + &zero, x0);
        let scaled = x0.scale(&ScalarQ::from(q_integer(2)));
        assert_eq!(scaled.coefficient(&ev(&[1, 0, 0])), ScalarQ::from(q_integer(2)));
        let m = QPolynomial::monomial(ev(&[1, 1, 0]), ScalarQ::one());
        assert_eq!(m.mul_monomial(&ev(&[0, 1, 0])).unwrap(), QPolynomial::monomial(ev(&[1, 2, 0]), ScalarQ::one()));
        assert!((&x0 - &x0).is_zero());
        assert_eq!(x0.checked_add(&QPolynomial::variable(2, 0)), Err(Error::LengthMismatch { expected: 3, found: 2 }));
        assert!(m.mul_monomial(&ev(&[1])).is_err());
    }

    #[test]
    fn product_and_degree() {
        let x0 = QPolynomial::variable(2, 0);
        let x1 = QPolynomial::variable(2, 1);
        let s = &x0 + &x1;
        let sq = &s * &s;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&ev(&[1, 1])), ScalarQ::from_integer(2));
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert_eq!((&sq + &x0).homogeneous_degree(), None);
        assert_eq!(sq.leading_term().unwrap().0, &ev(&[2, 0]));
    }

    #[test]
    fn display() {
        let p = QPolynomial::from_terms(
            4,
            [
                (ev(&[0, 1, 0, 0]), ScalarQ::from(q_integer(2))),
                (ev(&[2, 0, 0, 1]), ScalarQ::from_integer(-1)),
                (ev(&[0, 0, 0, 0]), ScalarQ::from_integer(3)),
            ],
        )
        .unwrap();
        assert_eq!(format!("{p}"), "(-1)*X0^2*X3 + ([2])*X1 + (3)");
        assert_eq!(format!("{}", QPolynomial::zero(2)), "0");
        assert_eq!(format!("{}", ev(&[3, 0, 0])), "3,0,0");
    }

    #[test]
    fn substitution() {
        let p = QPolynomial::monomial(ev(&[3, 1]), ScalarQ::one());
        let s = p.substitute_q_power(0, -1);
        assert_eq!(s.coefficient(&ev(&[3, 1])), ScalarQ::q_pow(-3));
    }

    #[test]
    fn exponent_moves() {
        let a = ev(&[2, 0, 1]);
        assert_eq!(a.decremented(1), None);
        assert_eq!(a.shifted(&[(0, -2), (1, 2)]), Some(ev(&[0, 2, 1])));
        assert_eq!(a.shifted(&[(2, -2)]), None);
        assert_eq!(a.checked_sub(&ev(&[1, 0, 1])), Some(ev(&[1, 0, 0])));
        assert_eq!(a.checked_sub(&ev(&[0, 1, 0])), None);
    }
}
