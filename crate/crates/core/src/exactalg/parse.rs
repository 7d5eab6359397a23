//! Small infix parser for polynomial and rational-function expressions.
//!
//! Grammar: `+ - * / ^`, parentheses, integer literals, and the variables
//! `t1.., z1.., h, zeta, u`. Juxtaposition such as `2h` or `(a)(b)` means
//! multiplication.

use num_bigint::BigInt;

use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use super::rational::Rational;
use super::var::VarId;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(VarId),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().map_err(|_| Error::Parse(txt.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Var(txt.parse()?));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| Error::Parse("division by zero".into()))?;
            } else if self.starts_primary() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            let mut acc = RationalFunction::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            if neg {
                acc = acc.recip().map_err(|_| Error::Parse("division by zero".into()))?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RationalFunction> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = Rational::from_bigs(n, BigInt::from(1))?;
                Ok(RationalFunction::from_poly(Polynomial::constant(c)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(RationalFunction::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a rational-function expression.
pub fn parse_rf(s: &str) -> Result<RationalFunction> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(r)
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(s: &str) -> Result<Polynomial> {
    parse_rf(s)?
        .to_poly()
        .ok_or_else(|| Error::Parse(format!("`{s}` is not a polynomial")))
}
