//! Rewriting invariants in the free generators, the graded case through the
//! localization at `x1`, the relations for `n = 3, 4`, and the graded bases.

use sha2::{Digest, Sha256};

use crate::automorphism::UnipotentAffineMap;
use crate::error::{Error, Result};
use crate::invariants::generators::{generator_for_variable, m_count, mu_count, y_generator, GeneratorSet};
use crate::invariants::{homogenize_z, p_generator, q_generator, special_generators, u_generator, v_generator};
use crate::poly::{parse_with, LaurentPolynomial, Polynomial, VarNames};
use crate::scalar::{int, Rational};
use crate::{Laurent, Poly};

/// Names of the rewrite ring: `X1, T2, ..., Tn`.
pub fn symbol_names(n: usize) -> VarNames {
    VarNames::custom(std::iter::once("X1".to_string()).chain((2..=n).map(|j| format!("T{j}"))))
}

/// Names of the localized graded ring: `X1, P1..Pm, Q1..Qmu`.
pub fn graded_symbol_names(n: usize) -> VarNames {
    let p = (1..=m_count(n)).map(|k| format!("P{k}"));
    let q = (1..=mu_count(n)).map(|k| format!("Q{k}"));
    VarNames::custom(std::iter::once("X1".to_string()).chain(p).chain(q))
}

/// `g(x1, u_1, v_1, u_2, ...)`: substitute generators for the symbols `T_j`.
pub fn expand_symbols(g: &Poly, n: usize) -> Result<Poly> {
    if g.nvars() != n {
        return Err(Error::VariableMismatch { left: n, right: g.nvars() });
    }
    let mut images = vec![Polynomial::var(n, 0)];
    for j in 2..=n {
        images.push(generator_for_variable(n, j)?);
    }
    g.substitute(&images)
}

/// An element of `K[x1, T2, ..., Tn]` equal to the input after expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteResult {
    pub n: usize,
    pub expression: Poly,
    /// Degree in `X1`; zero exactly when the input is invariant.
    pub residual_x1_degree: u32,
}

impl RewriteResult {
    pub fn to_text(&self) -> String {
        self.expression.to_text(&symbol_names(self.n))
    }

    pub fn expand(&self) -> Result<Poly> {
        expand_symbols(&self.expression, self.n)
    }
}

/// Triangular elimination: `x_j = (T_j - (g_j - c_j x_j)) / c_j` for `j = n, ..., 2`.
pub fn rewrite_affine(f: &Poly, n: usize) -> Result<RewriteResult> {
    if n == 0 {
        return Err(Error::out_of_range("rewrite needs n >= 1"));
    }
    if f.nvars() != n {
        return Err(Error::VariableMismatch { left: n, right: f.nvars() });
    }
    // x1..xn are 0..n-1, T_j is n + j - 2
    let big = 2 * n - 1;
    let mut g = f.extend(big);
    for j in (2..=n).rev() {
        let gen = generator_for_variable(n, j)?.extend(big);
        let parts = gen.coefficients_in(j - 1);
        if parts.len() != 2 || !parts[1].is_constant() {
            return Err(Error::Inconsistent(format!("generator for x{j} is not linear in x{j}")));
        }
        let c = parts[1].constant_term();
        let image = (&Polynomial::var(big, n + j - 2) - &parts[0]).scale(&c.recip());
        g = g.substitute_var(j - 1, &image);
    }
    let mut mapping = vec![0; big];
    for j in 2..=n {
        mapping[n + j - 2] = j - 1;
    }
    if g.max_variable().is_some_and(|v| v >= 1 && v < n) {
        return Err(Error::Inconsistent("elimination left an x variable behind".into()));
    }
    let expression = g.rename(&mapping, n);
    let residual_x1_degree = expression.degree_in(0).finite().unwrap_or(0);
    let out = RewriteResult {
        n,
        expression,
        residual_x1_degree,
    };
    if out.expand()? != *f {
        return Err(Error::Inconsistent("rewrite does not expand back to the input".into()));
    }
    Ok(out)
}

/// `f = (-x1)^degree * z_part(z)` with `z_i = -x_{i+1}/x1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dehomogenized {
    pub degree: u32,
    /// `f(-1, z_1, ..., z_n)`.
    pub z_part: Poly,
}

impl Dehomogenized {
    pub fn rehomogenize(&self) -> Result<Poly> {
        let sign = int(if self.degree.is_multiple_of(2) { 1 } else { -1 });
        Ok(homogenize_z(&self.z_part, self.degree)?.scale(&sign))
    }

    /// `(-x1)^d z_part(z)` as a Laurent polynomial in `x1` over `x2, ..., x_{n+1}`.
    pub fn to_laurent(&self) -> Result<Laurent> {
        Ok(LaurentPolynomial::from_polynomial(&self.rehomogenize()?))
    }
}

pub fn dehomogenize(f: &Poly) -> Result<Dehomogenized> {
    if f.nvars() < 2 {
        return Err(Error::out_of_range("dehomogenize needs at least two variables"));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = f.nvars() - 1;
    let mut images = vec![Polynomial::constant(n, int(-1))];
    images.extend((0..n).map(|i| Polynomial::var(n, i)));
    Ok(Dehomogenized {
        degree: f.degree().finite().unwrap_or(0),
        z_part: f.substitute(&images)?,
    })
}

/// Expression in `X1^{+-1}` and the symbols `P_k`, `Q_k` of `p_k`, `q_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRewrite {
    pub n: usize,
    pub expression: Laurent,
}

impl GradedRewrite {
    pub fn names(&self) -> VarNames {
        graded_symbol_names(self.n)
    }

    pub fn to_text(&self) -> String {
        self.expression.to_text(&self.names())
    }

    /// Substitute `p_k`, `q_k` back; a Laurent polynomial in `x1` over `x2..x_{n+1}`.
    pub fn expand(&self) -> Result<Laurent> {
        let n = self.n;
        let mut images = Vec::new();
        for k in 1..=m_count(n) {
            images.push(LaurentPolynomial::from_polynomial(&p_generator(n, k)?));
        }
        for k in 1..=mu_count(n) {
            images.push(LaurentPolynomial::from_polynomial(&q_generator(n, k)?));
        }
        let mut out = LaurentPolynomial::zero(n);
        for (power, part) in self.expression.parts() {
            let value = if images.is_empty() {
                LaurentPolynomial::from_coefficient(Polynomial::constant(n, part.constant_term()), 0)
            } else {
                LaurentPolynomial::substitute_into(part, &images)?
            };
            out = out.add(&value.shift(power));
        }
        Ok(out)
    }
}

/// Rewrite a homogeneous invariant of the graded map over `K[x1^{+-1}][p, q]`.
pub fn rewrite_graded(f: &Poly) -> Result<GradedRewrite> {
    let nv = f.nvars();
    if nv < 2 {
        return Err(Error::out_of_range("graded rewrite needs at least two variables"));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !UnipotentAffineMap::make_graded_jordan(nv)?.is_invariant(f) {
        return Err(Error::NotInvariant);
    }
    let n = nv - 1;
    let dh = dehomogenize(f)?;
    let affine = rewrite_affine(&dh.z_part, n)?;
    if affine.residual_x1_degree > 0 {
        return Err(Error::Inconsistent("dehomogenized invariant is not affine-invariant".into()));
    }
    let m = m_count(n);
    let nsym = m + mu_count(n);
    let mut images = vec![LaurentPolynomial::zero(nsym)];
    for j in 2..=n {
        let k = j / 2;
        images.push(if j % 2 == 0 {
            LaurentPolynomial::from_coefficient(Polynomial::var(nsym, k - 1), -2)
        } else {
            LaurentPolynomial::from_coefficient(Polynomial::var(nsym, m + k - 1), -3)
        });
    }
    let sign = int(if dh.degree % 2 == 0 { 1 } else { -1 });
    let expression = if n == 1 {
        LaurentPolynomial::from_coefficient(Polynomial::constant(0, affine.expression.constant_term()), 0)
    } else {
        LaurentPolynomial::substitute_into(&affine.expression, &images)?
    }
    .shift(dh.degree as i64)
    .scale(&sign);
    let out = GradedRewrite { n, expression };
    if out.expand()? != LaurentPolynomial::from_polynomial(f) {
        return Err(Error::Inconsistent("graded rewrite does not expand back to the input".into()));
    }
    Ok(out)
}

/// The two defining relations, written over the generator names.
pub fn relation_text(n: usize) -> Result<&'static str> {
    match n {
        3 => Ok("x1^2*s = q1^2 + 3*x1*p1*q1 - p1^3 + 2*x1^2*p1^2"),
        4 => Ok("x1^3*t = q1^2 - p1^3 + 3*x1*p1*q1 + 2*x1^2*p1^2 + 3*x1^2*p1*p2"),
        _ => Err(Error::out_of_range(format!("relations are known for n = 3, 4, got {n}"))),
    }
}

/// Outcome of expanding both sides of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub n: usize,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl RelationCheck {
    pub fn difference(&self) -> Poly {
        &self.lhs - &self.rhs
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// sha256 of the canonical text of `lhs - rhs`.
    pub fn difference_hash(&self) -> String {
        let text = self.difference().to_string();
        format!("{:x}", Sha256::digest(text.as_bytes()))
    }
}

/// Expand the relation for `n` with the given generator polynomials.
pub fn relation_check_with(set: &GeneratorSet) -> Result<RelationCheck> {
    let text = relation_text(set.n)?;
    let names = VarNames::custom(set.names());
    let (lhs, rhs) = text.split_once(" = ").expect("relation text has one equals sign");
    let polys = set.polys();
    Ok(RelationCheck {
        n: set.n,
        lhs: parse_with(lhs, &names)?.substitute(&polys)?,
        rhs: parse_with(rhs, &names)?.substitute(&polys)?,
    })
}

pub fn relation_check(n: usize) -> Result<RelationCheck> {
    relation_text(n)?;
    relation_check_with(&special_generators(n)?)
}

pub fn verify_relation(n: usize) -> Result<bool> {
    Ok(relation_check(n)?.holds())
}

/// Products of the named generators of total degree `i`, listed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub n: usize,
    pub degree: u32,
    pub names: Vec<String>,
    pub exponents: Vec<Vec<u32>>,
    pub polys: Vec<Poly>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn monomial_text(&self, index: usize) -> String {
        let names = VarNames::custom(self.names.iter().cloned());
        let m = crate::poly::Monomial::from_exponents(self.exponents[index].clone());
        Polynomial::term(m, int(1)).to_text(&names)
    }
}

fn enumerate(weights: &[u32], caps: &[Option<u32>], i: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let k = prefix.len();
    if k == weights.len() {
        if i == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let top = caps[k].map_or(i / weights[k], |c| c.min(i / weights[k]));
    for e in (0..=top).rev() {
        prefix.push(e);
        enumerate(weights, caps, i - e * weights[k], prefix, out);
        prefix.pop();
    }
}

/// The products spanning the degree-`i` invariants of the graded map, `1 <= n <= 4`;
/// `q1` occurs at most linearly.
pub fn graded_basis(n: usize, i: u32) -> Result<GradedBasis> {
    let set = special_generators(n)?;
    let weights: Vec<u32> = set.members.iter().map(|g| g.degree).collect();
    let caps: Vec<Option<u32>> = set.members.iter().map(|g| (g.name == "q1").then_some(1)).collect();
    let mut exponents = Vec::new();
    enumerate(&weights, &caps, i, &mut Vec::new(), &mut exponents);
    let polys = set.polys();
    let products = exponents
        .iter()
        .map(|e| {
            let m = crate::poly::Monomial::from_exponents(e.clone());
            Polynomial::term(m, int(1)).substitute(&polys)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedBasis {
        n,
        degree: i,
        names: set.names().into_iter().map(String::from).collect(),
        exponents,
        polys: products,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UvKind {
    U,
    V,
}

/// `g(z_1, ..., z_n) = g(0, y_2, ..., y_n)` for `g = u_k` or `v_k`.
pub fn check_u_in_y(n: usize, k: usize, kind: UvKind) -> Result<bool> {
    let g = match kind {
        UvKind::U => u_generator(n, k)?,
        UvKind::V => v_generator(n, k)?,
    };
    let mut images = vec![Polynomial::zero(n)];
    for i in 1..n {
        images.push(y_generator(n, i)?);
    }
    Ok(g.substitute(&images)? == g)
}

/// `f = (-x1)^d f(-1, 0, f_2/x1^2, ..., f_n/x1^n)` in the localization at `x1`.
pub fn check_f_fn(f: &Poly) -> Result<bool> {
    if f.nvars() < 3 {
        return Err(Error::out_of_range("the f_i exist from three variables on"));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = f.nvars() - 1;
    let d = f.degree().finite().unwrap_or(0);
    let mut images = vec![
        LaurentPolynomial::from_coefficient(Polynomial::constant(n, int(-1)), 0),
        LaurentPolynomial::zero(n),
    ];
    for i in 2..=n {
        let fi = crate::invariants::f_generator(n, i - 1)?;
        images.push(LaurentPolynomial::from_polynomial(&fi).shift(-(i as i64)));
    }
    let sign: Rational = int(if d.is_multiple_of(2) { 1 } else { -1 });
    let rhs = LaurentPolynomial::substitute_into(f, &images)?.shift(d as i64).scale(&sign);
    Ok(rhs == LaurentPolynomial::from_polynomial(f))
}
