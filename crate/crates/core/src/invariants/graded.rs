//! Homogeneous invariants of the graded map, obtained from affine ones through
//! the coordinates `z_i = -x_{i+1}/x1`.

use crate::error::{Error, Result};
use crate::invariants::coefficients::BlockTables;
use crate::invariants::generators::{m_count, mu_count, u_generator, v_generator, y_generator};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{int, Rational};
use crate::Poly;

/// `x1^d f(z)` with `z_i = -x_{i+1}/x1`, a homogeneous polynomial of degree `d`
/// in one more variable. Fails if `deg f > d`.
pub fn homogenize_z(f: &Poly, d: u32) -> Result<Poly> {
    if f.degree().finite().is_some_and(|e| e > d) {
        return Err(Error::out_of_range(format!("degree {} exceeds {d}", f.degree())));
    }
    let n = f.nvars() + 1;
    let mut out = Polynomial::zero(n);
    for (m, c) in f.terms() {
        let e = m.degree();
        let mut exps = Vec::with_capacity(n);
        exps.push(d - e);
        exps.extend_from_slice(m.exponents());
        let c = if e % 2 == 0 { c.clone() } else { -c.clone() };
        out.add_term(Monomial::from_exponents(exps), c);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradedKind {
    P,
    Q,
}

fn x(nv: usize, i: usize) -> Poly {
    Polynomial::var(nv, i - 1)
}

fn xx(nv: usize, i: usize, j: usize) -> Monomial {
    Monomial::var(nv, i - 1).mul(&Monomial::var(nv, j - 1))
}

/// `x_{k+1}^2 + sum lambda_{i,j} x_{i+1} x_{j+1} - x1 sum mu_j x_{j+1}` on `n + 1` variables.
fn p_explicit(n: usize, t: &BlockTables) -> Poly {
    let nv = n + 1;
    let k = t.k;
    let mut out = Polynomial::term(xx(nv, k + 1, k + 1), int(1));
    for ((i, j), c) in t.lambda.entries() {
        out.add_term(xx(nv, i + 1, j + 1), c.clone());
    }
    for ((_, j), c) in t.mu.entries() {
        out.add_term(xx(nv, 1, j + 1), -c.clone());
    }
    out
}

/// `-x2 p_k + x1 x_{k+1} x_{k+2} + x1 sum alpha x_{i+1} x_{j+1} - x1^2 sum beta_j x_{j+1}`.
fn q_explicit(n: usize, t: &BlockTables) -> Result<Poly> {
    let nv = n + 1;
    let k = t.k;
    if k == 1 {
        return Ok(crate::poly::parse("-x2^3 + 3*x1*x2*x3 + x1^2*x2 - 3*x1^2*x4", 4)?.extend(nv));
    }
    let (Some(alpha), Some(beta)) = (&t.alpha, &t.beta) else {
        return Err(Error::out_of_range("q_k needs the cubic tables"));
    };
    let x1 = x(nv, 1);
    let mut rest = Polynomial::term(xx(nv, k + 1, k + 2), int(1));
    for ((i, j), c) in alpha.entries() {
        rest.add_term(xx(nv, i + 1, j + 1), c.clone());
    }
    let mut out = &(-&(&x(nv, 2) * &p_explicit(n, t))) + &(&x1 * &rest);
    for ((_, j), c) in beta.entries() {
        out.add_term(xx(nv, 1, 1).mul(&Monomial::var(nv, j)), -c.clone());
    }
    Ok(out)
}

/// `p_k = x1^2 u_k(z)` (`kind = P`) or `q_k = x1^3 v_k(z)` (`kind = Q`) on `n + 1` variables.
///
/// Computed both by substitution and from the explicit coefficient formula; a
/// mismatch is reported as an error.
pub fn graded_generator(kind: GradedKind, n: usize, k: usize) -> Result<Poly> {
    let (via_z, explicit) = match kind {
        GradedKind::P => {
            if n < 2 || k < 1 || k > m_count(n) {
                return Err(Error::out_of_range(format!("p_k needs 1 <= k <= floor(n/2), got n={n}, k={k}")));
            }
            (homogenize_z(&u_generator(n, k)?, 2)?, p_explicit(n, &BlockTables::closed_form(k)?))
        }
        GradedKind::Q => {
            if n < 3 || k < 1 || k > mu_count(n) {
                return Err(Error::out_of_range(format!(
                    "q_k needs 1 <= k <= floor((n-1)/2), got n={n}, k={k}"
                )));
            }
            (homogenize_z(&v_generator(n, k)?, 3)?, q_explicit(n, &BlockTables::closed_form(k)?)?)
        }
    };
    if via_z != explicit {
        return Err(Error::Inconsistent(format!("{kind:?}_{k}: substitution and explicit formula differ")));
    }
    Ok(via_z)
}

pub fn p_generator(n: usize, k: usize) -> Result<Poly> {
    graded_generator(GradedKind::P, n, k)
}

pub fn q_generator(n: usize, k: usize) -> Result<Poly> {
    graded_generator(GradedKind::Q, n, k)
}

/// `f_{i+1} = x1^{i+1} y_{i+1}(z)` on `n + 1` variables.
pub fn f_generator(n: usize, i: usize) -> Result<Poly> {
    homogenize_z(&y_generator(n, i)?, i as u32 + 1)
}

/// `prod_{t=from}^{to} (x2 + t x1) / denom`.
fn rising(nv: usize, from: i64, to: i64, denom: u32) -> Poly {
    let mut out = Polynomial::constant(nv, Rational::from_integer(crate::scalar::factorial(denom)).recip());
    for t in from..=to {
        out = &out * &(&x(nv, 2) + &x(nv, 1).scale(&int(t)));
    }
    out
}

/// The same `f_{i+1}` from its explicit double-sum expansion.
pub fn f_explicit(n: usize, i: usize) -> Result<Poly> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::out_of_range(format!("f_{{i+1}} needs 1 <= i <= n-1, got n={n}, i={i}")));
    }
    let nv = n + 1;
    let mut out = Polynomial::zero(nv);
    for j in 1..=i {
        let sign = int(if (i - j + 1).is_multiple_of(2) { 1 } else { -1 });
        let t = &(&x(nv, 1).pow(j as u32) * &rising(nv, 0, (i - j) as i64 - 1, (i - j) as u32)) * &x(nv, j + 2);
        out = &out + &t.scale(&sign);
    }
    let sign = int(if (i + 1).is_multiple_of(2) { i as i64 } else { -(i as i64) });
    Ok(&out + &rising(nv, -1, i as i64 - 1, i as u32 + 1).scale(&sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::UnipotentAffineMap;
    use crate::poly::parse;

    fn graded(nv: usize) -> UnipotentAffineMap<Rational> {
        UnipotentAffineMap::make_graded_jordan(nv).unwrap()
    }

    #[test]
    fn small_graded_generators() {
        assert_eq!(p_generator(2, 1).unwrap(), parse("x2^2 - x1*x2 - 2*x1*x3", 3).unwrap());
        assert_eq!(
            q_generator(3, 1).unwrap(),
            parse("-x2^3 + 3*x1*x2*x3 + x1^2*x2 - 3*x1^2*x4", 4).unwrap()
        );
        assert_eq!(
            p_generator(4, 2).unwrap(),
            parse("x3^2 - x2*(x3 + 2*x4) + x1*(x3 + 3*x4 + 2*x5)", 5).unwrap()
        );
        assert!(p_generator(3, 2).is_err());
        assert!(q_generator(4, 2).is_err());
    }

    #[test]
    fn both_routes_agree_and_are_invariant() {
        for n in 2..=9 {
            for k in 1..=m_count(n) {
                let p = p_generator(n, k).unwrap();
                assert!(p.is_homogeneous() && p.degree().finite() == Some(2));
                assert!(graded(n + 1).is_invariant(&p));
            }
            for k in 1..=mu_count(n) {
                let q = q_generator(n, k).unwrap();
                assert!(q.is_homogeneous() && q.degree().finite() == Some(3));
                assert!(graded(n + 1).is_invariant(&q));
            }
        }
    }

    #[test]
    fn f_polynomials() {
        for n in 2..=7 {
            for i in 1..n {
                let f = f_generator(n, i).unwrap();
                assert_eq!(f, f_explicit(n, i).unwrap(), "n={n} i={i}");
                assert!(f.is_homogeneous());
                assert!(graded(n + 1).is_invariant(&f));
            }
        }
    }

    #[test]
    fn homogenize_rejects_high_degree() {
        assert!(homogenize_z(&parse("x1^3", 2).unwrap(), 2).is_err());
        assert_eq!(homogenize_z(&parse("x1 + 1", 1).unwrap(), 2).unwrap(), parse("x1^2 - x1*x2", 2).unwrap());
    }
}
