//! Text formats: scalars in `Q(q)`, polynomials in `P`, generator words and
//! exponent vectors. Everything the core types print parses back.
//!
//! Scalar and polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := int | 'q' | 'X' int | '[' '-'? int ']' | '(' expr ')'
//! ```
//!
//! `[n]` is the q-integer. Division is only by scalars.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use qweyl_core::{ExponentVector, Generator, GeneratorFamily, LaurentPoly, QPolynomial, ScalarQ, Word};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset} in `{input}`")]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
    pub input: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Q,
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let err = |offset, message: &str| ParseError { message: message.into(), offset, input: input.into() };
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let digits = |mut j: usize| {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                i = digits(i);
                Tok::Int(input[start..i].parse().expect("ascii digits"))
            }
            b'q' => {
                i += 1;
                Tok::Q
            }
            b'X' => {
                i = digits(i + 1);
                if i == start + 1 {
                    return Err(err(start, "expected a variable index after `X`"));
                }
                Tok::Var(input[start + 1..i].parse().map_err(|_| err(start, "variable index out of range"))?)
            }
            _ => {
                i += 1;
                match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b'[' => Tok::LBracket,
                    b']' => Tok::RBracket,
                    _ => return Err(err(start, &format!("unexpected character `{}`", c as char))),
                }
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(ScalarQ),
    Poly(QPolynomial),
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nvars: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, nvars: Option<usize>) -> Result<Self, ParseError> {
        Ok(Self { input, toks: lex(input)?, pos: 0, nvars })
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.input.len(), |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { message: message.into(), offset: self.offset(), input: self.input.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn core<T>(&self, r: qweyl_core::Result<T>) -> Result<T, ParseError> {
        r.or_else(|e| self.err(e.to_string()))
    }

    fn lift(&self, v: Value) -> Result<QPolynomial, ParseError> {
        match v {
            Value::Poly(p) => Ok(p),
            Value::Scalar(c) => match self.nvars {
                Some(n) => Ok(QPolynomial::one(n).scale(&c)),
                None => self.err("variables are not allowed here"),
            },
        }
    }

    fn as_scalar(v: &Value) -> Option<ScalarQ> {
        match v {
            Value::Scalar(c) => Some(c.clone()),
            Value::Poly(p) if p.terms().all(|(a, _)| a.degree() == 0) => {
                Some(p.terms().next().map_or_else(ScalarQ::zero, |(_, c)| c.clone()))
            }
            Value::Poly(_) => None,
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(&Tok::Minus);
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let n: i64 = match i64::try_from(&n) {
                    Ok(n) => n,
                    Err(_) => return self.err("integer too large"),
                };
                Ok(if neg { -n } else { n })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sub = if self.eat(&Tok::Plus) {
                false
            } else if self.eat(&Tok::Minus) {
                true
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            let rhs = if sub { self.neg(rhs) } else { rhs };
            acc = match (acc, rhs) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a + &b),
                (a, b) => {
                    let (a, b) = (self.lift(a)?, self.lift(b)?);
                    Value::Poly(self.core(a.checked_add(&b))?)
                }
            };
        }
    }

    fn neg(&self, v: Value) -> Value {
        match v {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Poly(p) => Value::Poly(p.scale(&ScalarQ::from_integer(-1))),
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value, ParseError> {
        Ok(match (a, b) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a * &b),
            (Value::Scalar(c), Value::Poly(p)) | (Value::Poly(p), Value::Scalar(c)) => Value::Poly(p.scale(&c)),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(self.core(a.checked_mul(&b))?),
        })
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs)?;
            } else if self.eat(&Tok::Slash) {
                let rhs = self.unary()?;
                let Some(c) = Self::as_scalar(&rhs) else {
                    return self.err("division by a non-constant polynomial");
                };
                let inv = self.core(c.inverse())?;
                acc = self.mul(acc, Value::Scalar(inv))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.eat(&Tok::Minus) {
            let v = self.unary()?;
            return Ok(self.neg(v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let e = self.int()?;
        if let Some(c) = Self::as_scalar(&base) {
            let Ok(e) = i32::try_from(e) else {
                return self.err("exponent too large");
            };
            return Ok(Value::Scalar(self.core(c.pow(e))?));
        }
        let Ok(e) = u32::try_from(e) else {
            return self.err("negative power of a polynomial");
        };
        let mut acc = Value::Scalar(ScalarQ::one());
        for _ in 0..e {
            acc = self.mul(acc, base.clone())?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Value::Scalar(ScalarQ::from_rational(BigRational::from_integer(n)))),
            Tok::Q => Ok(Value::Scalar(ScalarQ::q_pow(1))),
            Tok::Var(i) => match self.nvars {
                Some(n) if i < n => Ok(Value::Poly(QPolynomial::variable(n, i))),
                Some(n) => {
                    self.pos -= 1;
                    self.err(format!("variable X{i} outside X0..X{}", n - 1))
                }
                None => {
                    self.pos -= 1;
                    self.err("variables are not allowed here")
                }
            },
            Tok::LBracket => {
                let n = self.int()?;
                self.expect(&Tok::RBracket, "`]`")?;
                Ok(Value::Scalar(ScalarQ::from(qweyl_core::scalar::q_integer(n))))
            }
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(v)
            }
            _ => {
                self.pos -= 1;
                self.err("expected a number, `q`, `X<i>`, `[n]` or `(`")
            }
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

/// Parses an element of `Q(q)`, e.g. `(q^2 - 1)/(q + 1)` or `[3]`.
pub fn parse_scalar(input: &str) -> Result<ScalarQ, ParseError> {
    let mut p = Parser::new(input, None)?;
    let v = p.expr()?;
    p.finish()?;
    match v {
        Value::Scalar(c) => Ok(c),
        Value::Poly(_) => p.err("variables are not allowed here"),
    }
}

/// Parses a Laurent polynomial such as `3*q^2 - 1 + 2*q^-4`.
pub fn parse_laurent(input: &str) -> Result<LaurentPoly, ParseError> {
    let c = parse_scalar(input)?;
    c.as_laurent().cloned().ok_or_else(|| ParseError {
        message: "not a Laurent polynomial".into(),
        offset: 0,
        input: input.into(),
    })
}

/// Parses a polynomial in `X0..X{nvars-1}`, e.g. `([2])*X1 + (3)`.
pub fn parse_polynomial(input: &str, nvars: usize) -> Result<QPolynomial, ParseError> {
    let mut p = Parser::new(input, Some(nvars))?;
    let v = p.expr()?;
    p.finish()?;
    p.lift(v)
}

/// Parses `3,0,0`.
pub fn parse_exponents(input: &str) -> Result<ExponentVector, ParseError> {
    let entries = input
        .split(',')
        .map(|s| u32::from_str(s.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ParseError { message: format!("bad exponent vector: {e}"), offset: 0, input: input.into() })?;
    Ok(ExponentVector::new(entries))
}

/// Parses a word such as `e0 e0 k1^-1 x2`, leftmost symbol acting last.
/// Tokens are separated by whitespace or `*`; `g^n` repeats `g` and `g^-n`
/// repeats its inverse.
pub fn parse_word(input: &str) -> Result<Word, ParseError> {
    let mut word = Word::new();
    let mut offset = 0;
    for tok in input.split(|c: char| c.is_whitespace() || c == '*') {
        let here = offset;
        offset += tok.len() + 1;
        if tok.is_empty() {
            continue;
        }
        let err = |message: String| ParseError { message, offset: here, input: input.into() };
        let (head, exp) = match tok.split_once('^') {
            Some((h, e)) => (h, e.parse::<i32>().map_err(|_| err(format!("bad exponent in `{tok}`")))?),
            None => (tok, 1),
        };
        let split = head.find(|c: char| c.is_ascii_digit()).ok_or_else(|| err(format!("`{tok}` has no index")))?;
        let family = GeneratorFamily::from_symbol(&head[..split])
            .ok_or_else(|| err(format!("unknown generator `{}`", &head[..split])))?;
        let index: usize = head[split..].parse().map_err(|_| err(format!("bad index in `{tok}`")))?;
        if exp < 0 && !family.invertible() {
            return Err(err(format!("`{}` has no inverse", family.symbol())));
        }
        let g = Generator { family, index, inverse: exp < 0 };
        word.extend(std::iter::repeat(g).take(exp.unsigned_abs() as usize));
    }
    Ok(word)
}

/// Prints a word in the syntax [`parse_word`] reads.
pub fn format_word(w: &[Generator]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
