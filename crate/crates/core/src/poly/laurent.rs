use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::poly::monomial::Monomial;
use crate::poly::parse::{parse_expr, Expr};
use crate::poly::polynomial::Polynomial;
use crate::poly::print::{write_monomial, write_term, VarNames};
use crate::scalar::{Rational, Scalar};

/// Element of `R[t, t^-1]` where `R` is a polynomial ring in `nvars`
/// variables: a finite map from powers of `t` to polynomials.
///
/// In this crate `t` is always `x1` and the remaining variables are either
/// `x2, x3, ...` or the coordinates `z_i = -x_{i+1}/x1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPolynomial<C> {
    nvars: usize,
    terms: BTreeMap<i64, Polynomial<C>>,
}

impl<C: Scalar> LaurentPolynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_coefficient(Polynomial::one(nvars), 0)
    }

    /// `coefficient * t^power`.
    pub fn from_coefficient(coefficient: Polynomial<C>, power: i64) -> Self {
        let mut out = Self::zero(coefficient.nvars());
        out.add_part(power, coefficient);
        out
    }

    pub fn t_power(nvars: usize, power: i64) -> Self {
        Self::from_coefficient(Polynomial::one(nvars), power)
    }

    /// Splits a polynomial in `1 + nvars` variables along its first variable.
    pub fn from_polynomial(p: &Polynomial<C>) -> Self {
        let n = p.nvars() - 1;
        let mut out = Self::zero(n);
        for (m, c) in p.terms() {
            let rest = Monomial::from_exponents(m.exponents()[1..].to_vec());
            out.add_part(m.exponent(0) as i64, Polynomial::term(rest, c.clone()));
        }
        out
    }

    /// Inverse of [`from_polynomial`](Self::from_polynomial); `None` if a negative power occurs.
    pub fn to_polynomial(&self) -> Option<Polynomial<C>> {
        let mut out = Polynomial::zero(self.nvars + 1);
        for (&k, part) in &self.terms {
            if k < 0 {
                return None;
            }
            for (m, c) in part.terms() {
                let mut exps = Vec::with_capacity(self.nvars + 1);
                exps.push(k as u32);
                exps.extend_from_slice(m.exponents());
                out.add_term(Monomial::from_exponents(exps), c.clone());
            }
        }
        Some(out)
    }

    fn add_part(&mut self, power: i64, part: Polynomial<C>) {
        assert_eq!(part.nvars(), self.nvars);
        if part.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&power) {
            Some(old) => &old + &part,
            None => part,
        };
        if !sum.is_zero() {
            self.terms.insert(power, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parts(&self) -> impl DoubleEndedIterator<Item = (i64, &Polynomial<C>)> {
        self.terms.iter().map(|(&k, p)| (k, p))
    }

    pub fn part(&self, power: i64) -> Polynomial<C> {
        self.terms
            .get(&power)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn min_power(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, p) in &other.terms {
            out.add_part(k, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(&k, p)| (k, -p)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (&a, p) in &self.terms {
            for (&b, q) in &other.terms {
                out.add_part(a + b, p * q);
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (&k, p) in &self.terms {
            out.add_part(k, p.scale(c));
        }
        out
    }

    /// Multiply by `t^shift`; exact and invertible.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(&k, p)| (k + shift, p.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Evaluate `p` at Laurent images of its variables.
    pub fn substitute_into(p: &Polynomial<C>, images: &[Self]) -> Result<Self> {
        if images.len() != p.nvars() {
            return Err(Error::VariableMismatch {
                left: p.nvars(),
                right: images.len(),
            });
        }
        let n = images.first().map_or(0, |l| l.nvars);
        let mut cache: Vec<Vec<Self>> = images.iter().map(|l| vec![Self::one(n), l.clone()]).collect();
        let mut out = Self::zero(n);
        for (m, c) in p.terms() {
            let mut t = Self::from_coefficient(Polynomial::constant(n, c.clone()), 0);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = powers[powers.len() - 1].mul(&powers[1]);
                    powers.push(next);
                }
                t = t.mul(&powers[e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Canonical text with `names[0]` the Laurent variable; terms ordered by
    /// descending power of it, then canonically.
    pub fn to_text(&self, names: &VarNames) -> String {
        assert_eq!(names.len(), self.nvars + 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let rest = VarNames::custom((1..names.len()).map(|i| names.name(i).to_string()));
        let mut out = String::new();
        let mut first = true;
        for (&k, part) in self.terms.iter().rev() {
            for (m, c) in part.terms().rev() {
                let mut body = String::new();
                match k {
                    0 => {}
                    1 => body.push_str(names.name(0)),
                    _ => write!(body, "{}^{}", names.name(0), k).unwrap(),
                }
                if !m.is_one() {
                    if !body.is_empty() {
                        body.push('*');
                    }
                    write_monomial(&mut body, m, &rest).unwrap();
                }
                write_term(&mut out, first, c, &body).unwrap();
                first = false;
            }
        }
        out
    }
}

fn eval_laurent(e: &Expr, n: usize) -> Result<LaurentPolynomial<Rational>> {
    type L = LaurentPolynomial<Rational>;
    Ok(match e {
        Expr::Num(q) => L::from_coefficient(Polynomial::constant(n, q.clone()), 0),
        Expr::Var(0) => L::t_power(n, 1),
        Expr::Var(i) => L::from_coefficient(Polynomial::var(n, i - 1), 0),
        Expr::Neg(a) => eval_laurent(a, n)?.neg(),
        Expr::Add(a, b) => eval_laurent(a, n)?.add(&eval_laurent(b, n)?),
        Expr::Sub(a, b) => eval_laurent(a, n)?.sub(&eval_laurent(b, n)?),
        Expr::Mul(a, b) => eval_laurent(a, n)?.mul(&eval_laurent(b, n)?),
        Expr::Pow(a, k, at) => {
            let base = eval_laurent(a, n)?;
            if *k >= 0 {
                base.pow(*k as u32)
            } else if matches!(**a, Expr::Var(0)) {
                L::t_power(n, *k)
            } else {
                return Err(Error::Parse {
                    position: *at,
                    message: format!("negative exponent {k} on a non-monomial"),
                });
            }
        }
    })
}

/// Parse Laurent text; `names[0]` is the variable that may carry negative exponents.
pub fn parse_laurent(text: &str, names: &VarNames) -> Result<LaurentPolynomial<Rational>> {
    let e = parse_expr(text, names)?;
    eval_laurent(&e, names.len() - 1)
}
