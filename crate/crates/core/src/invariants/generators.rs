//! The affine invariants `y_i`, `u_k`, `v_k`, `w_k` and named generator sets.

use std::fmt;

use crate::automorphism::UnipotentAffineMap;
use crate::error::{Error, Result};
use crate::exponential::{phi_in, shift_inverse, phi, Direction};
use crate::invariants::coefficients::BlockTables;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{int, Rational};
use crate::Poly;

/// `m = floor(n/2)`, the number of quadratic generators.
pub fn m_count(n: usize) -> usize {
    n / 2
}

/// `floor((n-1)/2)`, the number of cubic generators.
pub fn mu_count(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

fn x(n: usize, i: usize) -> Poly {
    Polynomial::var(n, i - 1)
}

fn xx(n: usize, i: usize, j: usize) -> Monomial {
    Monomial::var(n, i - 1).mul(&Monomial::var(n, j - 1))
}

/// `y_{i+1} = sum_{j=1}^{i} phi_{-(i-j)}(x1) x_{j+1} + i phi_{-(i+1)}(x1 + 1)`.
pub fn y_generator(n: usize, i: usize) -> Result<Poly> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::out_of_range(format!("y_{{i+1}} needs n >= 2 and 1 <= i <= n-1, got n={n}, i={i}")));
    }
    let mut out = Polynomial::zero(n);
    for j in 1..=i {
        out = &out + &(&phi_in((i - j) as i64, Direction::Minus, n)? * &x(n, j + 1));
    }
    let tail = shift_inverse(&phi((i + 1) as i64, Direction::Minus)?).scale(&int(i as i64));
    Ok(&out + &tail.substitute(&[x(n, 1)])?)
}

/// Right-hand side of the inversion formula
/// `x_{i+1} = sum_{j=1}^{i} (-1)^{i-j} phi_{i-j} y_{j+1} + (-1)^i phi_{i+1}`, expanded.
pub fn x_from_y(n: usize, i: usize) -> Result<Poly> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::out_of_range(format!("x_{{i+1}} needs 1 <= i <= n-1, got n={n}, i={i}")));
    }
    let sgn = |e: usize| int(if e.is_multiple_of(2) { 1 } else { -1 });
    let mut out = phi_in((i + 1) as i64, Direction::Plus, n)?.scale(&sgn(i));
    for j in 1..=i {
        let t = &phi_in((i - j) as i64, Direction::Plus, n)? * &y_generator(n, j)?;
        out = &out + &t.scale(&sgn(i - j));
    }
    Ok(out)
}

fn check_u_range(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < 1 || k > m_count(n) {
        return Err(Error::out_of_range(format!("u_k needs n >= 2 and 1 <= k <= floor(n/2), got n={n}, k={k}")));
    }
    Ok(())
}

fn check_v_range(n: usize, k: usize) -> Result<()> {
    if n < 3 || k < 1 || k > mu_count(n) {
        return Err(Error::out_of_range(format!(
            "v_k needs n >= 3 and 1 <= k <= floor((n-1)/2), got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// `x_k^2 + sum lambda_{i,j} x_i x_j + sum mu_j x_j` from (possibly perturbed) tables.
pub fn u_from_tables(n: usize, t: &BlockTables) -> Result<Poly> {
    let k = t.k;
    if n < 2 * k {
        return Err(Error::out_of_range(format!("u_{k} needs at least {} variables", 2 * k)));
    }
    let mut out = Polynomial::term(xx(n, k, k), int(1));
    for ((i, j), c) in t.lambda.entries() {
        out.add_term(xx(n, i, j), c.clone());
    }
    for ((_, j), c) in t.mu.entries() {
        out.add_term(Monomial::var(n, j - 1), c.clone());
    }
    Ok(out)
}

/// `x1 u_k + x_k x_{k+1} + sum alpha_{i,j} x_i x_j + sum beta_j x_j` from tables, `k >= 2`.
pub fn v_from_tables(n: usize, t: &BlockTables) -> Result<Poly> {
    let k = t.k;
    let (Some(alpha), Some(beta)) = (&t.alpha, &t.beta) else {
        return Err(Error::out_of_range("v_k from tables needs k >= 2"));
    };
    if n < 2 * k + 1 {
        return Err(Error::out_of_range(format!("v_{k} needs at least {} variables", 2 * k + 1)));
    }
    let mut out = &x(n, 1) * &u_from_tables(n, t)?;
    out.add_term(xx(n, k, k + 1), int(1));
    for ((i, j), c) in alpha.entries() {
        out.add_term(xx(n, i, j), c.clone());
    }
    for ((_, j), c) in beta.entries() {
        out.add_term(Monomial::var(n, j - 1), c.clone());
    }
    Ok(out)
}

pub fn u_generator(n: usize, k: usize) -> Result<Poly> {
    check_u_range(n, k)?;
    u_from_tables(n, &BlockTables::closed_form(k)?)
}

/// `v_1 = x1^3 + 3 x1 x2 - x1 + 3 x3`; table form for `k >= 2`.
pub fn v_generator(n: usize, k: usize) -> Result<Poly> {
    check_v_range(n, k)?;
    if k == 1 {
        let v1 = crate::poly::parse("x1^3 + 3*x1*x2 - x1 + 3*x3", 3)?;
        return Ok(v1.extend(n));
    }
    v_from_tables(n, &BlockTables::closed_form(k)?)
}

/// Quadratic part `v_k'` of `v_k - x1 u_k`.
pub fn v_prime(n: usize, k: usize) -> Result<Poly> {
    let rest = &v_generator(n, k)? - &(&x(n, 1) * &u_generator(n, k)?);
    Ok(rest.graded_component(2))
}

/// Linear part `v_k''` of `v_k - x1 u_k`.
pub fn v_double_prime(n: usize, k: usize) -> Result<Poly> {
    let rest = &v_generator(n, k)? - &(&x(n, 1) * &u_generator(n, k)?);
    Ok(rest.graded_component(1))
}

fn check_w_range(n: usize, k: usize) -> Result<()> {
    if n < 5 || k < 2 || k > mu_count(n) {
        return Err(Error::out_of_range(format!(
            "w_k needs n >= 5 and 2 <= k <= floor((n-1)/2), got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// `w_k = v_k^2 - u_1 u_k^2`.
pub fn w_generator(n: usize, k: usize) -> Result<Poly> {
    check_w_range(n, k)?;
    let v = v_generator(n, k)?;
    let u = u_generator(n, k)?;
    Ok(&(&v * &v) - &(&u_generator(n, 1)? * &(&u * &u)))
}

/// `u_k (2 x1 v' - (x1 + 2 x2) u_k) + v'^2 + 2 x1 u_k v'' + 2 v' v'' + v''^2`.
pub fn w_expanded(n: usize, k: usize) -> Result<Poly> {
    check_w_range(n, k)?;
    let u = u_generator(n, k)?;
    let vp = v_prime(n, k)?;
    let vpp = v_double_prime(n, k)?;
    let x1 = x(n, 1);
    let two = int(2);
    let a = &u * &(&(&x1 * &vp).scale(&two) - &(&(&x1 + &x(n, 2).scale(&two)) * &u));
    let b = &(&vp * &vp) + (&(&x1 * &(&u * &vpp)).scale(&two));
    let c = &(&vp * &vpp).scale(&two) + &(&vpp * &vpp);
    Ok(&(&a + &b) + &c)
}

/// Predicted leading form `u_k' (2 x1 v_k' - (x1 + 2 x2) u_k')`.
pub fn w_leading_form(n: usize, k: usize) -> Result<Poly> {
    check_w_range(n, k)?;
    let up = u_generator(n, k)?.graded_component(2);
    let vp = v_prime(n, k)?;
    let x1 = x(n, 1);
    let two = int(2);
    Ok(&up * &(&(&x1 * &vp).scale(&two) - &(&(&x1 + &x(n, 2).scale(&two)) * &up)))
}

/// Top-variable coefficients: `u_k = (-1)^{k-1} 2 x_{2k} + ...`, `v_k = (-1)^{k-1}(2k+1) x_{2k+1} + ...`,
/// with nothing beyond those variables.
pub fn check_top_variables(k: usize) -> Result<bool> {
    let sgn = int(if k % 2 == 1 { 1 } else { -1 });
    let n = 2 * k + 1;
    let u = u_generator(n, k)?;
    let v = v_generator(n, k)?;
    let top = |p: &Poly, var: usize, c: Rational| {
        let parts = p.coefficients_in(var);
        p.max_variable() == Some(var) && parts.len() == 2 && parts[1] == Polynomial::constant(n, c)
    };
    let u_ok = top(&u, 2 * k - 1, &sgn * int(2));
    let v_ok = top(&v, 2 * k, &sgn * int(2 * k as i64 + 1));
    Ok(u_ok && v_ok)
}

/// Leading-form coefficients: `x1 x_{2k-1}` in `u_k'` is `(-1)^{k-1} 2` and the rest of
/// `u_k'` lives in `x1..x_{2k-2}`; `x1 x_{2k}` in `v_k'` is `(-1)^{k-1}(2k-1)` and the rest
/// of `v_k'` lives in `x1..x_{2k-1}`.
pub fn check_leading_quadratics(k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::out_of_range("needs k >= 2"));
    }
    let sgn = int(if k % 2 == 1 { 1 } else { -1 });
    let n = 2 * k + 1;
    let up = u_generator(n, k)?.graded_component(2);
    let vp = v_prime(n, k)?;
    let cu = up.coefficient(&xx(n, 1, 2 * k - 1));
    let cv = vp.coefficient(&xx(n, 1, 2 * k));
    let rest_u = &up - &Polynomial::term(xx(n, 1, 2 * k - 1), cu.clone());
    let rest_v = &vp - &Polynomial::term(xx(n, 1, 2 * k), cv.clone());
    Ok(cu == &sgn * int(2)
        && cv == &sgn * int(2 * k as i64 - 1)
        && rest_u.max_variable().is_none_or(|v| v < 2 * k - 2)
        && rest_v.max_variable().is_none_or(|v| v < 2 * k - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Affine,
    Graded,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Affine => "affine",
            Case::Graded => "graded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub poly: Poly,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, poly: Poly) -> Self {
        let degree = poly.degree().finite().unwrap_or(0);
        Generator {
            name: name.into(),
            poly,
            degree,
        }
    }
}

/// Named invariants for one map. `n` is the block parameter: the affine case
/// lives on `n` variables, the graded case on `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub case: Case,
    pub n: usize,
    pub members: Vec<Generator>,
}

impl GeneratorSet {
    pub fn nvars(&self) -> usize {
        match self.case {
            Case::Affine => self.n,
            Case::Graded => self.n + 1,
        }
    }

    pub fn map(&self) -> Result<UnipotentAffineMap<Rational>> {
        match self.case {
            Case::Affine => UnipotentAffineMap::make_affine_jordan(self.n),
            Case::Graded => UnipotentAffineMap::make_graded_jordan(self.n + 1),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.members.iter().find(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.members.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.members.iter().map(|g| g.poly.clone()).collect()
    }

    /// Every member is invariant and of its declared degree; graded members are homogeneous.
    pub fn verify(&self) -> Result<()> {
        let map = self.map()?;
        for g in &self.members {
            if g.poly.nvars() != self.nvars() {
                return Err(Error::VariableMismatch {
                    left: self.nvars(),
                    right: g.poly.nvars(),
                });
            }
            if !map.is_invariant(&g.poly) {
                return Err(Error::Inconsistent(format!("{} is not invariant", g.name)));
            }
            if g.poly.degree().finite() != Some(g.degree) {
                return Err(Error::Inconsistent(format!("{} does not have degree {}", g.name, g.degree)));
            }
            if self.case == Case::Graded && !g.poly.is_homogeneous() {
                return Err(Error::Inconsistent(format!("{} is not homogeneous", g.name)));
            }
        }
        Ok(())
    }
}

/// `u_1..u_m, v_1..v_mu`, which generate the affine invariants freely.
pub fn affine_generators(n: usize) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::out_of_range(format!("affine case needs n >= 2, got {n}")));
    }
    let mut members = Vec::new();
    for k in 1..=m_count(n) {
        members.push(Generator::new(format!("u{k}"), u_generator(n, k)?));
    }
    for k in 1..=mu_count(n) {
        members.push(Generator::new(format!("v{k}"), v_generator(n, k)?));
    }
    Ok(GeneratorSet {
        case: Case::Affine,
        n,
        members,
    })
}

/// `u_k` for even `j = 2k`, `v_k` for odd `j = 2k + 1`; the generator whose top variable is `x_j`.
pub fn generator_for_variable(n: usize, j: usize) -> Result<Poly> {
    if j < 2 || j > n {
        return Err(Error::out_of_range(format!("no generator with top variable x{j} for n={n}")));
    }
    if j.is_multiple_of(2) {
        u_generator(n, j / 2)
    } else {
        v_generator(n, j / 2)
    }
}
