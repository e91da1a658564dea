use alloc::string::String;
use core::fmt;

use crate::operator::Generator;
use crate::satake::DiagramKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    /// An argument that must be nonnegative was negative.
    NegativeArgument {
        what: &'static str,
        value: i64,
    },
    /// Exponent vectors (or polynomials) from rings with different numbers of variables.
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    /// An action table was asked to interpret a symbol it does not define.
    UnknownSymbol(Generator),
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    InvalidDiagram(String),
    ZeroPolynomial,
    /// Crystal bases are only constructed for diagrams I, III and A1AFF.
    UnsupportedDiagram(DiagramKind),
    /// A witness construction does not exist for this diagram.
    NotApplicable(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => f.write_str("division by zero in Q(q)"),
            Error::NegativeArgument { what, value } => {
                write!(f, "{what} must be nonnegative, got {value}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "exponent vector length mismatch: expected {expected}, found {found}")
            }
            Error::UnknownSymbol(g) => write!(f, "no action defined for symbol `{g}`"),
            Error::IndexOutOfRange { what, index, bound } => {
                write!(f, "{what} index {index} out of range (must be < {bound})")
            }
            Error::InvalidDiagram(msg) => write!(f, "invalid diagram: {msg}"),
            Error::ZeroPolynomial => f.write_str("polynomial must be nonzero"),
            Error::UnsupportedDiagram(kind) => {
                write!(f, "crystal bases are only constructed for diagrams I, III and A1AFF, not {kind}")
            }
            Error::NotApplicable(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
