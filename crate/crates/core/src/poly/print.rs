use std::fmt::{self, Write};

use crate::poly::monomial::Monomial;
use crate::poly::polynomial::Polynomial;
use crate::scalar::Scalar;

/// Names used when printing or parsing the variables of a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<String>,
    indexed_prefix: Option<String>,
}

impl VarNames {
    /// `x1, x2, ..., xn` style names.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        VarNames {
            names: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
            indexed_prefix: Some(prefix.to_string()),
        }
    }

    pub fn custom<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarNames {
            names: names.into_iter().map(Into::into).collect(),
            indexed_prefix: None,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn lookup(&self, ident: &str) -> Option<usize> {
        self.names.iter().position(|n| n == ident)
    }

    pub(crate) fn indexed_prefix(&self) -> Option<&str> {
        self.indexed_prefix.as_deref()
    }
}

pub(crate) fn write_monomial<W: Write>(out: &mut W, m: &Monomial, names: &VarNames) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.write_char('*')?;
        }
        first = false;
        out.write_str(names.name(i))?;
        if e > 1 {
            write!(out, "^{e}")?;
        }
    }
    Ok(())
}

/// Writes one signed term; `extra` is an optional prefix factor such as `X1^-2`.
pub(crate) fn write_term<W: Write, C: Scalar>(
    out: &mut W,
    first: bool,
    coeff: &C,
    body: &str,
) -> fmt::Result {
    let text = coeff.to_string();
    let (negative, magnitude) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    match (first, negative) {
        (true, true) => out.write_char('-')?,
        (true, false) => {}
        (false, true) => out.write_str(" - ")?,
        (false, false) => out.write_str(" + ")?,
    }
    if body.is_empty() {
        out.write_str(&magnitude)
    } else if magnitude == "1" {
        out.write_str(body)
    } else {
        write!(out, "{magnitude}*{body}")
    }
}

/// Canonical text: graded-lex descending, no parentheses.
pub fn write_polynomial<W: Write, C: Scalar>(
    out: &mut W,
    p: &Polynomial<C>,
    names: &VarNames,
) -> fmt::Result {
    if p.is_zero() {
        return out.write_char('0');
    }
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let mut body = String::new();
        write_monomial(&mut body, m, names)?;
        write_term(out, k == 0, c, &body)?;
    }
    Ok(())
}
