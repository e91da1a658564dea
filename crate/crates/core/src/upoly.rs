//! Dense univariate polynomials over `Q`, coefficients stored lowest degree
//! first. Only what `ScalarQ` normalization needs: division with remainder
//! and Euclidean gcd.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Dense = Vec<BigRational>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &Dense) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Returns `(quotient, remainder)`; `d` must be nonzero and trimmed.
pub(crate) fn div_rem(n: &Dense, d: &Dense) -> (Dense, Dense) {
    let dd = degree(d).expect("division by the zero polynomial");
    let lead = &d[dd];
    let mut rem = n.clone();
    trim(&mut rem);
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while let Some(rd) = degree(&rem) {
        if rd < dd {
            break;
        }
        let c = &rem[rd] / lead;
        let shift = rd - dd;
        for (k, dk) in d.iter().enumerate() {
            if !dk.is_zero() {
                rem[shift + k] -= &c * dk;
            }
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Monic gcd of two polynomials (zero if both are zero).
pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &lead;
        }
    }
    x
}

/// The positive rational `c` such that `p / c` has coprime integer
/// coefficients with positive leading coefficient (sign folded into `c`).
pub(crate) fn content(p: &Dense) -> BigRational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in p.iter().filter(|c| !c.is_zero()) {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return BigRational::one();
    }
    let mut c = BigRational::new(num_gcd, den_lcm);
    if p.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    c
}
