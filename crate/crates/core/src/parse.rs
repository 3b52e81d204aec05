//! Text syntax for forms, polynomial maps and graded polynomials.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*' | '/\' | '^' | '/') factor)*
//! factor := atom ['^' INT] | '-' factor
//! atom   := INT | 'i' | NAME | 'd' '(' expr ')' | '(' expr ')'
//! ```
//!
//! For forms the names are `z1, z2, …` and `dz1, dz2, …`; `d(…)` is the
//! exterior derivative. `^` followed by an integer is a power, otherwise it
//! is a wedge. `*` multiplies when at least one side is a function and is
//! rejected between two forms of positive degree. `/` divides by a nonzero
//! constant, so `1/2` and `(1+i)/3` denote Gaussian rationals. For graded
//! polynomials the names are the universe's variables and every product is
//! the graded product.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{HoloformError, Result};
use crate::form::Form;
use crate::graded::{GradedPolynomial, Universe};
use crate::poly::{PolyMap, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(text[start..i].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Name(text[start..i].to_string())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' if bytes.get(i) == Some(&b'\\') => {
                    i += 1;
                    Tok::Wedge
                }
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => {
                    let ch = text[start..].chars().next().expect("nonempty");
                    return Err(parse_err(start, format!("unexpected character '{ch}'")));
                }
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

fn parse_err(pos: usize, msg: impl Into<String>) -> HoloformError {
    HoloformError::Parse { pos, msg: msg.into() }
}

/// The algebra a parser builds values in.
trait Semantics {
    type Value: Clone;
    fn constant(&self, c: Scalar) -> Self::Value;
    fn name(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn derivative(&self, v: &Self::Value, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value, pos: usize) -> Result<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value, pos: usize) -> Result<Self::Value>;
    fn wedge(&self, a: &Self::Value, b: &Self::Value, pos: usize) -> Result<Self::Value>;
    fn as_constant(&self, a: &Self::Value) -> Option<Scalar>;
    fn one(&self) -> Self::Value {
        self.constant(Scalar::from_int(1))
    }
}

struct Parser<'s, S: Semantics> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    sem: &'s S,
}

impl<'s, S: Semantics> Parser<'s, S> {
    fn new(text: &str, sem: &'s S) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            end: text.len(),
            sem,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(_) => Err(parse_err(pos, format!("expected {what}"))),
            None => Err(parse_err(pos, format!("expected {what}, found end of input"))),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at < self.toks.len() {
            Err(parse_err(self.pos(), "unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<S::Value> {
        let mut acc = match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.sem.add(&acc, &rhs, pos)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.sem.add(&acc, &self.sem.neg(&rhs), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<S::Value> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.sem.mul(&acc, &rhs, pos)?;
                }
                Some(Tok::Wedge) | Some(Tok::Caret) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.sem.wedge(&acc, &rhs, pos)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs_pos = self.pos();
                    let rhs = self.factor()?;
                    let c = self
                        .sem
                        .as_constant(&rhs)
                        .ok_or_else(|| parse_err(rhs_pos, "division is only by a constant"))?;
                    let inv = c.inverse().map_err(|_| parse_err(rhs_pos, "division by zero"))?;
                    acc = self.sem.mul(&acc, &self.sem.constant(inv), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<S::Value> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            let v = self.factor()?;
            return Ok(self.sem.neg(&v));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            if let Some(Tok::Int(k)) = self.peek_at(1) {
                let pos = self.pos();
                let k = k
                    .to_u32()
                    .ok_or_else(|| parse_err(pos, "exponent too large"))?;
                self.bump();
                self.bump();
                let mut acc = self.sem.one();
                for _ in 0..k {
                    acc = self.sem.mul(&acc, &base, pos)?;
                }
                return Ok(acc);
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<S::Value> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(k)) => Ok(self.sem.constant(Scalar::new(k.into(), Zero::zero()))),
            Some(Tok::Name(name)) if name == "i" => Ok(self.sem.constant(Scalar::i())),
            Some(Tok::Name(name)) if name == "d" && self.peek() == Some(&Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                self.sem.derivative(&inner, pos)
            }
            Some(Tok::Name(name)) => self.sem.name(&name, pos),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(_) => Err(parse_err(pos, "expected a number, a name or '('")),
            None => Err(parse_err(pos, "unexpected end of input")),
        }
    }
}

/// Index `k` of a name `<prefix>k` with `k ≥ 1`.
fn indexed(name: &str, prefix: &str) -> Option<usize> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

struct FormSemantics {
    dim: usize,
}

impl FormSemantics {
    fn index(&self, k: usize, pos: usize) -> Result<usize> {
        if k > self.dim {
            Err(parse_err(pos, format!("index {k} exceeds the dimension {}", self.dim)))
        } else {
            Ok(k - 1)
        }
    }
}

impl Semantics for FormSemantics {
    type Value = Form;

    fn constant(&self, c: Scalar) -> Form {
        Form::constant(self.dim, c)
    }

    fn name(&self, name: &str, pos: usize) -> Result<Form> {
        if let Some(k) = indexed(name, "dz") {
            return Ok(Form::dz(self.dim, self.index(k, pos)?));
        }
        if let Some(k) = indexed(name, "z") {
            return Ok(Form::function(Polynomial::var(self.dim, self.index(k, pos)?)));
        }
        Err(parse_err(pos, format!("unknown name '{name}'")))
    }

    fn derivative(&self, v: &Form, _pos: usize) -> Result<Form> {
        Ok(v.d())
    }

    fn add(&self, a: &Form, b: &Form, pos: usize) -> Result<Form> {
        if a.degree() != b.degree() {
            if a.is_zero() {
                return Ok(b.clone());
            }
            if b.is_zero() {
                return Ok(a.clone());
            }
            return Err(parse_err(
                pos,
                format!("cannot add forms of degrees {} and {}", a.degree(), b.degree()),
            ));
        }
        a.try_add(b).map_err(|e| parse_err(pos, e.to_string()))
    }

    fn neg(&self, a: &Form) -> Form {
        a.neg()
    }

    fn mul(&self, a: &Form, b: &Form, pos: usize) -> Result<Form> {
        if a.degree() > 0 && b.degree() > 0 {
            return Err(parse_err(pos, "'*' between forms of positive degree; use /\\ for the wedge product"));
        }
        self.wedge(a, b, pos)
    }

    fn wedge(&self, a: &Form, b: &Form, pos: usize) -> Result<Form> {
        a.wedge(b).map_err(|e| parse_err(pos, e.to_string()))
    }

    fn as_constant(&self, a: &Form) -> Option<Scalar> {
        if a.degree() != 0 {
            return None;
        }
        let f = a.coefficient(&[]);
        (f.total_degree().unwrap_or(0) == 0).then(|| f.constant_term())
    }
}

/// Largest `k` in any `z<k>` / `dz<k>` name, at least 1.
fn inferred_dim(text: &str) -> Result<usize> {
    Ok(lex(text)?
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Name(n) => indexed(&n, "dz").or_else(|| indexed(&n, "z")),
            _ => None,
        })
        .max()
        .unwrap_or(1))
}

/// Parses a form on ℂⁿ. With `dim = None` the dimension is the largest
/// index that occurs.
pub fn parse_form(text: &str, dim: Option<usize>) -> Result<Form> {
    let dim = match dim {
        Some(0) => return Err(parse_err(0, "dimension must be positive")),
        Some(n) => n,
        None => inferred_dim(text)?,
    };
    let sem = FormSemantics { dim };
    let mut p = Parser::new(text, &sem)?;
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

/// Parses a polynomial (a form of degree 0).
pub fn parse_polynomial(text: &str, dim: Option<usize>) -> Result<Polynomial> {
    let f = parse_form(text, dim)?;
    if f.degree() != 0 {
        return Err(parse_err(0, format!("expected a function, found a {}-form", f.degree())));
    }
    Ok(f.coefficient(&[]))
}

/// Parses `(f1, …, fn)` as a polynomial self-map of ℂⁿ.
pub fn parse_map(text: &str) -> Result<PolyMap> {
    let toks = lex(text)?;
    let count = 1 + toks.iter().filter(|(_, t)| *t == Tok::Comma).count();
    let dim = count.max(inferred_dim(text)?);
    if dim != count {
        return Err(parse_err(0, format!("a map with {count} components cannot use z{dim}")));
    }
    let sem = FormSemantics { dim };
    let mut p = Parser::new(text, &sem)?;
    p.expect(Tok::LParen, "'('")?;
    let mut comps = Vec::with_capacity(count);
    loop {
        let pos = p.pos();
        let f = p.expr()?;
        if f.degree() != 0 {
            return Err(parse_err(pos, "map components must be functions"));
        }
        comps.push(f.coefficient(&[]));
        let pos = p.pos();
        match p.bump() {
            Some(Tok::Comma) => continue,
            Some(Tok::RParen) => break,
            _ => return Err(parse_err(pos, "expected ',' or ')'")),
        }
    }
    p.finish()?;
    PolyMap::new(comps)
}

struct GradedSemantics {
    universe: Arc<Universe>,
}

impl Semantics for GradedSemantics {
    type Value = GradedPolynomial;

    fn constant(&self, c: Scalar) -> GradedPolynomial {
        GradedPolynomial::constant(self.universe.clone(), c)
    }

    fn name(&self, name: &str, pos: usize) -> Result<GradedPolynomial> {
        GradedPolynomial::var(self.universe.clone(), name)
            .map_err(|_| parse_err(pos, format!("unknown variable '{name}'")))
    }

    fn derivative(&self, _v: &GradedPolynomial, pos: usize) -> Result<GradedPolynomial> {
        Err(parse_err(pos, "d(...) is not available in a graded polynomial"))
    }

    fn add(&self, a: &GradedPolynomial, b: &GradedPolynomial, pos: usize) -> Result<GradedPolynomial> {
        a.try_add(b).map_err(|e| parse_err(pos, e.to_string()))
    }

    fn neg(&self, a: &GradedPolynomial) -> GradedPolynomial {
        a.scale(&Scalar::from_int(-1))
    }

    fn mul(&self, a: &GradedPolynomial, b: &GradedPolynomial, pos: usize) -> Result<GradedPolynomial> {
        a.gmul(b).map_err(|e| parse_err(pos, e.to_string()))
    }

    fn wedge(&self, a: &GradedPolynomial, b: &GradedPolynomial, pos: usize) -> Result<GradedPolynomial> {
        self.mul(a, b, pos)
    }

    fn as_constant(&self, a: &GradedPolynomial) -> Option<Scalar> {
        match a.degrees().into_iter().collect::<Vec<_>>().as_slice() {
            [] => Some(Scalar::default()),
            [0] => Some(a.coefficient(&crate::graded::GradedMonomial::unit(&self.universe))),
            _ => None,
        }
    }
}

/// Parses a graded polynomial over `universe`.
pub fn parse_graded(text: &str, universe: Arc<Universe>) -> Result<GradedPolynomial> {
    let sem = GradedSemantics { universe };
    let mut p = Parser::new(text, &sem)?;
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}
