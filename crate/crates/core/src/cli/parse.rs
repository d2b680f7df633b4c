//! Expression parser for polynomial observables.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" factor) | ("/" uint))*
//! factor := "-" factor | atom ["^" uint]
//! atom   := uint | symbol | "(" expr ")" | "{" expr "," expr "}"
//! ```
//!
//! Unary minus binds looser than `^`, so `-q^2` is `-(q^2)`. Division is only
//! by a nonzero integer literal, which makes `(1/3)` a rational coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poisson::{bracket, PoissonPoly, Space, SpaceKind};
use crate::scalars::{Gq, Param, ParamScalar};

/// Parsed expression, before symbols are resolved against a space.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    /// Parameter, generator or `i`, with its byte offset.
    Symbol(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, BigInt),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Punct(char),
    End,
}

struct Lexer;

impl Lexer {
    fn tokens(input: &str) -> Result<Vec<(Tok, usize)>> {
        let bytes = input.as_bytes();
        let mut out = Vec::new();
        let mut k = 0;
        while k < bytes.len() {
            let c = bytes[k] as char;
            if c.is_ascii_whitespace() {
                k += 1;
            } else if c.is_ascii_digit() {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n: BigInt = input[start..k].parse().expect("ascii digits");
                out.push((Tok::Int(n), start));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = k;
                while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                    k += 1;
                }
                out.push((Tok::Ident(input[start..k].to_string()), start));
            } else if "+-*/^(){},".contains(c) {
                out.push((Tok::Punct(c), k));
                k += 1;
            } else {
                let ch = input[k..].chars().next().unwrap_or(c);
                return Err(syntax(k, format!("unexpected character `{ch}`")));
            }
        }
        out.push((Tok::End, input.len()));
        Ok(out)
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat('/') {
                let at = self.offset();
                match self.next() {
                    Tok::Int(n) if !n.is_zero() => acc = Expr::Div(Box::new(acc), n),
                    Tok::Int(_) => return Err(syntax(at, "division by zero")),
                    _ => return Err(syntax(at, "division is only by a nonzero integer literal")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            return match self.next() {
                Tok::Int(n) => {
                    let k = u32::try_from(n).map_err(|_| syntax(at, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(syntax(at, "expected a nonnegative integer exponent")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.next() {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Ident(s) => Ok(Expr::Symbol(s, at)),
            Tok::Punct('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Punct('{') => {
                let f = self.expr()?;
                self.expect(',')?;
                let g = self.expr()?;
                self.expect('}')?;
                Ok(Expr::Bracket(Box::new(f), Box::new(g)))
            }
            Tok::End => Err(syntax(at, "unexpected end of input")),
            Tok::Punct(c) => Err(syntax(at, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses without resolving symbols.
pub fn parse_ast(input: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: Lexer::tokens(input)?,
        pos: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(syntax(p.offset(), "unexpected trailing input")),
    }
}

/// Parses `input` as a reduced polynomial on `space`.
pub fn parse_expr(input: &str, space: &Space) -> Result<PoissonPoly> {
    eval(&parse_ast(input)?, space)
}

fn generator_index(space: &Space, name: &str) -> Option<usize> {
    if let Some(i) = space.ring.var_index(name) {
        return Some(i);
    }
    // q1, p1 stand for q, p on the plane
    match (space.kind, name) {
        (SpaceKind::R2n(1), "q1") => space.ring.var_index("q"),
        (SpaceKind::R2n(1), "p1") => space.ring.var_index("p"),
        _ => None,
    }
}

fn symbol(space: &Space, name: &str) -> Result<PoissonPoly> {
    if let Some(i) = generator_index(space, name) {
        return Ok(PoissonPoly::generator(space, i));
    }
    if name == "i" {
        return Ok(PoissonPoly::constant(space, ParamScalar::i()));
    }
    match name.parse::<Param>() {
        Ok(p) => Ok(PoissonPoly::constant(space, ParamScalar::param(p))),
        Err(_) => Err(Error::UnknownSymbol(name.to_string())),
    }
}

/// Resolves symbols against `space` and evaluates.
pub fn eval(e: &Expr, space: &Space) -> Result<PoissonPoly> {
    Ok(match e {
        Expr::Int(n) => {
            let c = Gq::real(BigRational::from_integer(n.clone()));
            PoissonPoly::constant(space, ParamScalar::from_gq(c))
        }
        Expr::Symbol(s, _) => symbol(space, s)?,
        Expr::Neg(a) => eval(a, space)?.neg(),
        Expr::Add(a, b) => eval(a, space)?.add(&eval(b, space)?),
        Expr::Sub(a, b) => eval(a, space)?.sub(&eval(b, space)?),
        Expr::Mul(a, b) => eval(a, space)?.mul(&eval(b, space)?),
        Expr::Div(a, n) => {
            let inv = Gq::real(BigRational::new(BigInt::from(1), n.clone()));
            eval(a, space)?.scale(&ParamScalar::from_gq(inv))
        }
        Expr::Pow(a, k) => eval(a, space)?.pow(*k),
        Expr::Bracket(a, b) => bracket(&eval(a, space)?, &eval(b, space)?)?,
    })
}
