//! Exact computation with modified q-Weyl algebras attached to quasi-split
//! Satake diagrams of type A and affine type A.
//!
//! Everything here is pure algebra over the field `Q(q)`:
//!
//! - [`scalar`]: Laurent polynomials in `q`, the rational function field
//!   `Q(q)` and the usual q-combinatorics (`[a]`, `[a]^k!`, Gaussian
//!   binomials, Pochhammer symbols).
//! - [`poly`]: the polynomial ring `P = Q(q)[X_0, ..., X_{r+1}]`.
//! - [`operator`]: formal words in generator symbols, interpreted through
//!   pluggable [`operator::ActionTable`]s, and degree-by-degree equality
//!   checks on `P`.
//! - [`weyl`]: the classical q-Weyl algebra, the q-Leibniz rule and the
//!   oscillator realization of `U_q(sl_{r+2})`.
//! - [`satake`]: the diagram families and their Cartan/involution data.
//! - [`modweyl`]: the modified q-Weyl algebra, its embedding into the
//!   classical one and the constant-reduction witness.
//! - [`iqg`]: iquantum group presentations, the homomorphism into the
//!   modified q-Weyl algebra, oscillator actions and module witnesses.
//! - [`crystal`]: divided powers, Kashiwara operators and crystal graphs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod crystal;
pub mod error;
pub mod iqg;
pub mod modweyl;
pub mod operator;
pub mod poly;
pub mod satake;
pub mod scalar;
pub mod weyl;

mod upoly;

pub use crystal::{Crystal, CrystalEdge, CrystalGraph, Direction, LatticeElement};
pub use error::{Error, Result};
pub use iqg::{ModuleWitness, OscillatorTable, PhiTable};
pub use operator::{ActionTable, EqualityReport, Generator, GeneratorFamily, OperatorExpr, Residual, Word};
pub use poly::{ExponentVector, QPolynomial};
pub use satake::{DiagramKind, DiagramSpec, SatakeDiagram};
pub use scalar::{LaurentPoly, ScalarQ};
