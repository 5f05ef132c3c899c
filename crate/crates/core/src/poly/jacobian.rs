//! Algebraic independence via the Jacobian criterion (characteristic zero).

use crate::error::{Error, Result};
use crate::linalg::matrix_rank;
use crate::poly::polynomial::Polynomial;
use crate::scalar::{int, Rational};

/// How the rank was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankCertificate {
    /// Full rank observed at this rational point.
    Point(Vec<Rational>),
    /// Exact fraction-free elimination over the polynomial ring.
    Symbolic,
    /// More polynomials than variables: never independent.
    Overdetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianRank {
    pub rank: usize,
    pub independent: bool,
    pub certificate: RankCertificate,
}

const SAMPLE_POWERS: u32 = 4;

fn jacobian(ps: &[Polynomial<Rational>], n: usize) -> Vec<Vec<Polynomial<Rational>>> {
    ps.iter()
        .map(|p| (0..n).map(|j| p.derivative(j)).collect())
        .collect()
}

/// Rank of `d p_i / d x_j` over the fraction field.
///
/// Tries the points `(1, 2, .., n)`, `(1, 4, .., n^2)`, ... first; any point
/// of full rank certifies independence. Otherwise falls back to Bareiss
/// elimination with polynomial entries.
pub fn jacobian_rank(ps: &[Polynomial<Rational>]) -> Result<JacobianRank> {
    let Some(first) = ps.first() else {
        return Err(Error::out_of_range("empty polynomial list"));
    };
    let n = first.nvars();
    if let Some(bad) = ps.iter().find(|p| p.nvars() != n) {
        return Err(Error::VariableMismatch {
            left: n,
            right: bad.nvars(),
        });
    }
    if ps.len() > n {
        return Ok(JacobianRank {
            rank: symbolic_rank(jacobian(ps, n))?,
            independent: false,
            certificate: RankCertificate::Overdetermined,
        });
    }
    let jac = jacobian(ps, n);
    for k in 1..=SAMPLE_POWERS {
        let point: Vec<Rational> = (1..=n as i64).map(|i| int(i.pow(k))).collect();
        let rows: Vec<Vec<Rational>> = jac
            .iter()
            .map(|row| row.iter().map(|d| d.evaluate(&point)).collect())
            .collect();
        if matrix_rank(&rows) == ps.len() {
            return Ok(JacobianRank {
                rank: ps.len(),
                independent: true,
                certificate: RankCertificate::Point(point),
            });
        }
    }
    let rank = symbolic_rank(jac)?;
    Ok(JacobianRank {
        rank,
        independent: rank == ps.len(),
        certificate: RankCertificate::Symbolic,
    })
}

pub fn jacobian_independent(ps: &[Polynomial<Rational>]) -> bool {
    jacobian_rank(ps).is_ok_and(|r| r.independent)
}

/// Bareiss elimination; every division is exact.
pub fn symbolic_rank(mut m: Vec<Vec<Polynomial<Rational>>>) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let nv = m
        .first()
        .and_then(|r| r.first())
        .map_or(0, Polynomial::nvars);
    let mut prev = Polynomial::one(nv);
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let num = &(&m[r][col] * &m[i][j]) - &(&m[i][col] * &m[r][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Inconsistent("inexact Bareiss division".into()))?;
            }
            m[i][col] = Polynomial::zero(nv);
        }
        prev = m[r][col].clone();
        r += 1;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse;

    #[test]
    fn coordinates_are_independent() {
        let ps = [parse("x1", 2).unwrap(), parse("x2", 2).unwrap()];
        assert!(jacobian_independent(&ps));
    }

    #[test]
    fn functions_of_one_variable_are_dependent() {
        let ps = [parse("x1^2", 2).unwrap(), parse("x1^3", 2).unwrap()];
        let r = jacobian_rank(&ps).unwrap();
        assert!(!r.independent);
        assert_eq!(r.rank, 1);
        assert_eq!(r.certificate, RankCertificate::Symbolic);
    }

    #[test]
    fn too_many_polynomials() {
        let ps = [parse("x1", 1).unwrap(), parse("x1^2", 1).unwrap()];
        let r = jacobian_rank(&ps).unwrap();
        assert!(!r.independent);
        assert_eq!(r.certificate, RankCertificate::Overdetermined);
    }

    #[test]
    fn symbolic_fallback_detects_hidden_dependence() {
        // (x1 + x2)^2 and (x1 + x2)^3 share a single generator
        let ps = [parse("(x1 + x2)^2", 3).unwrap(), parse("(x1+x2)^3 + 0*x3", 3).unwrap()];
        assert!(!jacobian_independent(&ps));
        let qs = [parse("x1*x2 + x3^2", 3).unwrap(), parse("x2^2*x3", 3).unwrap()];
        assert!(jacobian_independent(&qs));
    }

    #[test]
    fn symbolic_rank_matches_generic_rank() {
        let m = vec![
            vec![parse("x1", 2).unwrap(), parse("x2", 2).unwrap()],
            vec![parse("x1^2", 2).unwrap(), parse("x1*x2", 2).unwrap()],
        ];
        assert_eq!(symbolic_rank(m).unwrap(), 1);
        let m = vec![
            vec![parse("x1", 2).unwrap(), parse("x2", 2).unwrap()],
            vec![parse("x2", 2).unwrap(), parse("x1", 2).unwrap()],
        ];
        assert_eq!(symbolic_rank(m).unwrap(), 2);
    }
}
