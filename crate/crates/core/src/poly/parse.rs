//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' ['-'] integer]
//! atom   := integer ['/' integer] | name | '(' expr ')'
//! ```
//!
//! Negative exponents are only accepted by the Laurent reader, and only on
//! its distinguished variable.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::polynomial::Polynomial;
use crate::poly::print::VarNames;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Num(Rational),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a VarNames,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("nonempty digit string"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat(b'-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat(b'+');
            self.term()?
        };
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
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let negative = self.eat(b'-');
            let e = self.integer()?;
            let e: i64 = e
                .try_into()
                .map_err(|_| err(at, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }, at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer()?;
                if self.eat(b'/') {
                    let at = self.pos;
                    let denom = self.integer()?;
                    if denom.is_zero() {
                        return Err(err(at, "zero denominator"));
                    }
                    Ok(Expr::Num(Rational::new(numer, denom)))
                } else {
                    Ok(Expr::Num(Rational::from_integer(numer)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.lookup(ident, start)
            }
            Some(c) => Err(err(self.pos, format!("unexpected character '{}'", c as char))),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }

    fn lookup(&self, ident: &str, at: usize) -> Result<Expr> {
        if let Some(i) = self.names.lookup(ident) {
            return Ok(Expr::Var(i));
        }
        if let Some(prefix) = self.names.indexed_prefix() {
            if let Some(idx) = ident.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok()) {
                return Err(err(
                    at,
                    format!(
                        "unknown variable {ident}: index {idx} exceeds variable count {}",
                        self.names.len()
                    ),
                ));
            }
        }
        Err(err(at, format!("unknown variable {ident}")))
    }
}

pub(crate) fn parse_expr(text: &str, names: &VarNames) -> Result<Expr> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        names,
    };
    let e = parser.expr()?;
    if parser.peek().is_some() {
        return Err(err(parser.pos, "trailing input"));
    }
    Ok(e)
}

fn eval(e: &Expr, n: usize) -> Result<Polynomial<Rational>> {
    Ok(match e {
        Expr::Num(q) => Polynomial::constant(n, q.clone()),
        Expr::Var(i) => Polynomial::var(n, *i),
        Expr::Neg(a) => -eval(a, n)?,
        Expr::Add(a, b) => eval(a, n)? + eval(b, n)?,
        Expr::Sub(a, b) => eval(a, n)? - eval(b, n)?,
        Expr::Mul(a, b) => eval(a, n)? * eval(b, n)?,
        Expr::Pow(a, k, at) => {
            if *k < 0 {
                return Err(err(*at, format!("negative exponent {k}")));
            }
            eval(a, n)?.pow(*k as u32)
        }
    })
}

/// Parse a polynomial in `x1..x{variable_count}`.
pub fn parse(text: &str, variable_count: usize) -> Result<Polynomial<Rational>> {
    parse_with(text, &VarNames::indexed("x", variable_count))
}

pub fn parse_with(text: &str, names: &VarNames) -> Result<Polynomial<Rational>> {
    let e = parse_expr(text, names)?;
    eval(&e, names.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn parses_u1() {
        let p = parse("x1^2 + x1 + 2*x2", 2).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "x1^2 + x1 + 2*x2");
    }

    #[test]
    fn zero_and_binomial() {
        assert!(parse("0", 5).unwrap().is_zero());
        assert_eq!(parse("(x1+x2)^2", 2).unwrap().to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn rationals_and_signs() {
        let p = parse("-3/2*x1*x2 + 1/3 - x2^3", 2).unwrap();
        assert_eq!(p.to_string(), "-x2^3 - 3/2*x1*x2 + 1/3");
        assert_eq!(parse("- 4", 1).unwrap(), Polynomial::constant(1, int(-4)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x1 + x7", 5) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 5);
                assert!(message.contains("exceeds variable count 5"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("x1 +", 2), Err(Error::Parse { position: 4, .. })));
        assert!(matches!(parse("x1^-2", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("2/0", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("x1 x2", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("(x1", 2), Err(Error::Parse { .. })));
    }

    #[test]
    fn custom_names() {
        let names = VarNames::custom(["X1", "T2", "T3"]);
        let p = parse_with("T2*T3 + X1", &names).unwrap();
        assert_eq!(p.to_text(&names), "T2*T3 + X1");
    }
}
