use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::monomial::Monomial;
use crate::poly::print::{write_polynomial, VarNames};
use crate::scalar::Scalar;

/// Total degree, with the zero polynomial strictly below every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse multivariate polynomial. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    /// The variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars} variables");
        Self::term(Monomial::var(nvars, index), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    /// Largest monomial in the canonical order together with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Highest variable index (0-based) that occurs, if any.
    pub fn max_variable(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.exponents().iter().rposition(|&e| e > 0))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone() * c.clone()))
                .collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            nvars: self.nvars,
            terms: acc,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn checked_pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        Ok(self.pow(e as u32))
    }

    /// Ring homomorphism sending `x_{i+1}` to `images[i]`.
    pub fn substitute(&self, images: &[Self]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::VariableMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        let mut cache: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(p.nvars), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Replace a single variable by `image` (same variable count).
    pub fn substitute_var(&self, var: usize, image: &Self) -> Self {
        assert_eq!(image.nvars, self.nvars);
        let parts = self.coefficients_in(var);
        let mut out = Self::zero(self.nvars);
        let mut power = Self::one(self.nvars);
        for (e, part) in parts.iter().enumerate() {
            if e > 0 {
                power = &power * image;
            }
            if !part.is_zero() {
                out = &out + &(part * &power);
            }
        }
        out
    }

    /// Writes `self = sum_e parts[e] * x_var^e` with `parts[e]` free of `x_var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let top = self.degree_in(var).finite().unwrap_or(0) as usize;
        let mut parts = vec![Self::zero(self.nvars); top + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            parts[e].terms.insert(m.with_exponent(var, 0), c.clone());
        }
        parts
    }

    pub fn graded_component(&self, d: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Top-degree homogeneous component.
    pub fn leading_form(&self) -> Result<Self> {
        match self.degree() {
            Degree::NegInfinity => Err(Error::ZeroPolynomial),
            Degree::Finite(d) => Ok(self.graded_component(d)),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c.clone() * C::from_int(e as i64));
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Re-index variables: variable `i` becomes `mapping[i]` in a ring with `nvars` variables.
    pub fn rename(&self, mapping: &[usize], nvars: usize) -> Self {
        assert_eq!(mapping.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; nvars];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[mapping[i]] += e;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// View in a ring with more variables, keeping indices.
    pub fn extend(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let mapping: Vec<usize> = (0..self.nvars).collect();
        self.rename(&mapping, nvars)
    }

    /// Drop trailing variables that do not occur.
    pub fn restrict(&self, nvars: usize) -> Result<Self> {
        if let Some(top) = self.max_variable() {
            if top >= nvars {
                return Err(Error::out_of_range(format!(
                    "variable x{} occurs; cannot restrict to {nvars} variables",
                    top + 1
                )));
            }
        }
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            out.terms
                .insert(Monomial::from_exponents(m.exponents()[..nvars].to_vec()), c.clone());
        }
        Ok(out)
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Exact quotient `self / divisor`; `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lm, lc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c.clone() / lc.clone();
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn to_text(&self, names: &VarNames) -> String {
        let mut s = String::new();
        write_polynomial(&mut s, self, names).expect("writing to a String cannot fail");
        s
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_polynomial(f, self, &VarNames::indexed("x", self.nvars))
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs).expect("polynomials in different rings")
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs).expect("polynomials in different rings")
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs).expect("polynomials in different rings")
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Scalar> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Self) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, C: Scalar> $tr<&'a Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
