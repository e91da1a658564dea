//! Exact arithmetic in `Z[q, q^-1]` (with rational coefficients) and in the
//! field `Q(q)`, together with the q-combinatorial primitives used
//! throughout the crate.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::upoly::{self, Dense};

/// A Laurent polynomial in `q` with rational coefficients, stored sparsely.
/// Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    pub fn monomial(c: BigRational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    /// `Some((c, e))` when the polynomial is the single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub fn coefficient(&self, e: i32) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q = 1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Substitutes `q -> q^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    fn to_dense(&self) -> (i32, Dense) {
        let Some(low) = self.min_exponent() else {
            return (0, Vec::new());
        };
        let high = self.max_exponent().unwrap_or(low);
        let mut dense = alloc::vec![BigRational::zero(); (high - low) as usize + 1];
        for (e, c) in &self.terms {
            dense[(e - low) as usize] = c.clone();
        }
        (low, dense)
    }

    fn from_dense(low: i32, dense: &Dense) -> Self {
        Self {
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (low + k as i32, c.clone()))
                .collect(),
        }
    }

    /// Exact division in `Q[q, q^-1]`; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (nl, n) = self.to_dense();
        let (dl, d) = divisor.to_dense();
        let (quot, rem) = upoly::div_rem(&n, &d);
        rem.is_empty().then(|| Self::from_dense(nl - dl, &quot))
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(LaurentPoly, Add, add);
forward_owned_binop!(LaurentPoly, Sub, sub);
forward_owned_binop!(LaurentPoly, Mul, mul);

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

fn fmt_exponent(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => f.write_str("q"),
        _ => write!(f, "q^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `3*q^2 - 1 + 1/2*q^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_exponent(f, *e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// An element of `Q(q)` in canonical form.
///
/// The denominator is an ordinary polynomial with nonzero constant term,
/// coprime integer coefficients and positive leading coefficient; all powers
/// of `q` and rational content live in the numerator. Canonical forms make
/// structural equality coincide with field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ScalarQ {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    pub fn q_pow(e: i32) -> Self {
        Self::from(LaurentPoly::q_pow(e))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from(LaurentPoly::from_integer(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from(LaurentPoly::constant(c))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a Laurent polynomial, when the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = den.as_monomial() {
            let inv = c.recip();
            return Self { num: num.shift(-e).scale(&inv), den: LaurentPoly::one() };
        }
        let (nl, mut n) = num.to_dense();
        let (dl, mut d) = den.to_dense();
        let g = upoly::gcd(&n, &d);
        if g.len() > 1 {
            n = upoly::div_rem(&n, &g).0;
            d = upoly::div_rem(&d, &g).0;
        }
        let c = upoly::content(&d);
        if !c.is_one() {
            for v in n.iter_mut() {
                *v /= &c;
            }
            for v in d.iter_mut() {
                *v /= &c;
            }
        }
        // `d` has a nonzero constant term, so the q-power moves to the numerator.
        let den = LaurentPoly::from_dense(0, &d);
        let num = LaurentPoly::from_dense(nl - dl, &n);
        Self { num, den }
    }

    pub fn checked_div(&self, rhs: &ScalarQ) -> Result<ScalarQ> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn inverse(&self) -> Result<ScalarQ> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: i32) -> Result<ScalarQ> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        Ok(Self::normalized(base.num.pow(n.unsigned_abs()), base.den.pow(n.unsigned_abs())))
    }

    /// Substitutes `q = 1`; `None` when the denominator vanishes there.
    pub fn eval_at_one(&self) -> Option<BigRational> {
        let d = self.den.eval_at_one();
        (!d.is_zero()).then(|| self.num.eval_at_one() / d)
    }
}

impl From<LaurentPoly> for ScalarQ {
    fn from(num: LaurentPoly) -> Self {
        Self { num, den: LaurentPoly::one() }
    }
}

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Default for ScalarQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { num: -self.num, den: self.den }
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        if self.den == rhs.den {
            if self.den.is_one() {
                return ScalarQ::from(&self.num + &rhs.num);
            }
            return ScalarQ::normalized(&self.num + &rhs.num, self.den.clone());
        }
        ScalarQ::normalized(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        self + &-rhs
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() || rhs.is_zero() {
            return ScalarQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarQ::from(&self.num * &rhs.num);
        }
        ScalarQ::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

forward_owned_binop!(ScalarQ, Add, add);
forward_owned_binop!(ScalarQ, Sub, sub);
forward_owned_binop!(ScalarQ, Mul, mul);

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, rhs: &ScalarQ) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&ScalarQ> for ScalarQ {
    fn sub_assign(&mut self, rhs: &ScalarQ) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num -= &rhs.num;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&ScalarQ> for ScalarQ {
    fn mul_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self * rhs;
    }
}

impl ScalarQ {
    /// `Some(n)` when this is exactly the q-integer `[n]`, `n != 0, ±1`.
    pub fn as_q_integer(&self) -> Option<i64> {
        if !self.den.is_one() || self.num.is_zero() {
            return None;
        }
        let n = i64::from(self.num.max_exponent()?) + 1;
        if n < 2 {
            return None;
        }
        [n, -n].into_iter().find(|&m| self.num == q_integer(m))
    }
}

/// Exact q-integers print as `([n])`; everything else as `(num)` or `(num)/(den)`.
impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_q_integer() {
            if n < 0 {
                write!(f, "(-[{}])", -n)
            } else {
                write!(f, "([{n}])")
            }
        } else if self.den.is_one() {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarQ{self}")
    }
}

/// The q-integer `[a] = (q^a - q^-a)/(q - q^-1)`, as the balanced sum
/// `q^(a-1) + q^(a-3) + ... + q^(1-a)`; `[-a] = -[a]`.
pub fn q_integer(a: i64) -> LaurentPoly {
    let n = a.unsigned_abs() as i32;
    let sign = if a < 0 { -BigRational::one() } else { BigRational::one() };
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, sign.clone())))
}

/// `[a]^k! = [ka][k(a-1)]...[k]`, with `[0]^k! = 1`.
pub fn q_factorial(a: i64, k: i64) -> Result<LaurentPoly> {
    if a < 0 {
        return Err(Error::NegativeArgument { what: "factorial argument", value: a });
    }
    Ok((1..=a).fold(LaurentPoly::one(), |acc, j| &acc * &q_integer(k * j)))
}

/// Gaussian binomial: `[n][n-1]...[n-d+1] / [d]!` for `d > 0`, `1` for
/// `d = 0` and `0` for `d < 0`.
pub fn q_binomial(n: i64, d: i64) -> LaurentPoly {
    if d < 0 {
        return LaurentPoly::zero();
    }
    let num = (0..d).fold(LaurentPoly::one(), |acc, j| &acc * &q_integer(n - j));
    let den = q_factorial(d, 1).expect("d is nonnegative");
    num.div_exact(&den).expect("Gaussian binomial division must be exact in Z[q, q^-1]")
}

/// `(a; x)_n = (1 - a)(1 - ax)...(1 - ax^(n-1))`, with `(a; x)_0 = 1`.
pub fn q_pochhammer(a: &ScalarQ, x: &ScalarQ, n: i64) -> Result<ScalarQ> {
    if n < 0 {
        return Err(Error::NegativeArgument { what: "Pochhammer length", value: n });
    }
    let one = ScalarQ::one();
    let mut acc = ScalarQ::one();
    let mut factor = a.clone();
    for _ in 0..n {
        acc = &acc * &(&one - &factor);
        factor = &factor * x;
    }
    Ok(acc)
}

/// Membership in the local ring `A_0`: `f/g` with `f, g` in `Q[q]` and
/// `g(0) != 0`.
pub fn is_regular_at_zero(s: &ScalarQ) -> bool {
    // The canonical denominator already has nonzero constant term; clearing
    // negative powers from the numerator would put a factor q below.
    s.is_zero() || s.num.min_exponent().is_some_and(|e| e >= 0)
}

/// The ratio `([n]^k!) / ([m]^k!)` for `0 <= m <= n`, computed as the
/// product `[kn][k(n-1)]...[k(m+1)]`.
pub fn q_factorial_ratio(n: i64, m: i64, k: i64) -> LaurentPoly {
    (m + 1..=n).fold(LaurentPoly::one(), |acc, j| &acc * &q_integer(k * j))
}
