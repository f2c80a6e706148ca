//! Text syntax for elements of Q(t).
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' '-'? int)?
//! base   := int | 't' | 'x' | '(' expr ')'
//! ```
//!
//! `a/b` with integer literals is ordinary division, so rationals need no
//! separate rule. The variable `x` is only accepted by [`parse_expr`] with
//! `allow_x`, where it stands for a point of the spectrum.

use num_bigint::BigInt;

use super::{FieldElem, Rat};
use crate::error::{Error, Result};

const MAX_EXPONENT: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(FieldElem),
    T,
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// Evaluates with `x` bound to `x_value`. An unbound `x` evaluates to an
    /// error.
    pub fn eval(&self, x_value: Option<&FieldElem>) -> Result<FieldElem> {
        Ok(match self {
            Expr::Const(c) => c.clone(),
            Expr::T => FieldElem::t(),
            Expr::X => x_value
                .cloned()
                .ok_or_else(|| Error::InvalidArgument("variable x is not bound".into()))?,
            Expr::Neg(a) => -a.eval(x_value)?,
            Expr::Add(a, b) => a.eval(x_value)? + b.eval(x_value)?,
            Expr::Sub(a, b) => a.eval(x_value)? - b.eval(x_value)?,
            Expr::Mul(a, b) => a.eval(x_value)? * b.eval(x_value)?,
            Expr::Div(a, b) => a.eval(x_value)?.div(&b.eval(x_value)?)?,
            Expr::Pow(a, n) => a.eval(x_value)?.pow(*n)?,
        })
    }

    pub fn mentions_x(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::Const(_) | Expr::T => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_x(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.mentions_x() || b.mentions_x(),
        }
    }
}

/// Parses and evaluates a constant of Q(t).
pub fn parse_field_expr(text: &str) -> Result<FieldElem> {
    parse_expr(text, false)?.eval(None)
}

pub fn parse_expr(text: &str, allow_x: bool) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        allow_x,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allow_x: bool,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.eat(b'^') {
            let negative = self.eat(b'-');
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let n: u64 = digits.parse().ok().filter(|&n| n <= MAX_EXPONENT).ok_or(Error::Parse {
                pos: start,
                msg: format!("expected an exponent between 0 and {MAX_EXPONENT}"),
            })?;
            let n = n as i64;
            return Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Expr::T)
            }
            Some(b'x') if self.allow_x => {
                self.pos += 1;
                Ok(Expr::X)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Expr::Const(FieldElem::from_rat(Rat::from_integer(n))))
            }
            Some(_) => Err(self.error("expected a number, 't', or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
