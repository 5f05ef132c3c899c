//! Brute-force invariants: the exact kernel of `1 - sigma` on a bounded space
//! of polynomials, computed from the monomial basis alone.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::automorphism::UnipotentAffineMap;
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Rational;
use crate::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Polynomials of total degree at most `d`.
    Filtered,
    /// Homogeneous polynomials of degree exactly `d`.
    Graded,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Filtered => "filtered",
            Mode::Graded => "graded",
        })
    }
}

/// The matrix of `1 - sigma` on a monomial basis: column `c` is `delta(monomials[c])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub monomials: Vec<Monomial>,
    pub columns: Vec<Poly>,
}

impl LinearSystem {
    pub fn build(map: &UnipotentAffineMap<Rational>, monomials: Vec<Monomial>) -> Result<Self> {
        let n = map.n();
        let columns = monomials
            .par_iter()
            .map(|m| map.delta(&Polynomial::term(m.clone(), Rational::from_integer(1.into()))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = monomials.iter().find(|m| m.nvars() != n) {
            return Err(Error::VariableMismatch {
                left: n,
                right: bad.nvars(),
            });
        }
        Ok(LinearSystem { monomials, columns })
    }

    /// Sparse rows indexed by target monomial, canonical order.
    pub fn rows(&self) -> Vec<(Monomial, Vec<(usize, Rational)>)> {
        let mut rows: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
        for (c, p) in self.columns.iter().enumerate() {
            for (m, v) in p.terms() {
                rows.entry(m.clone()).or_default().push((c, v.clone()));
            }
        }
        rows.into_iter().rev().collect()
    }

    /// Kernel basis: one vector per free column, lowest monomial first.
    pub fn kernel(&self) -> Vec<Poly> {
        let n = self.monomials.first().map_or(0, Monomial::nvars);
        let mut e = Echelon::new(self.monomials.len());
        for (_, row) in self.rows() {
            e.insert(row);
        }
        let mut basis: Vec<Poly> = e
            .nullspace()
            .into_iter()
            .map(|v| {
                Polynomial::from_terms(
                    n,
                    v.into_iter().zip(&self.monomials).map(|(c, m)| (m.clone(), c)),
                )
            })
            .collect();
        basis.reverse();
        basis
    }
}

/// A basis of the invariants in a bounded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasis {
    pub degree: u32,
    pub mode: Mode,
    pub map: UnipotentAffineMap<Rational>,
    pub basis: Vec<Poly>,
}

impl InvariantBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Invariants of total degree at most `d`.
pub fn solve_filtered(map: &UnipotentAffineMap<Rational>, d: u32) -> Result<InvariantBasis> {
    let system = LinearSystem::build(map, Monomial::all_up_to_degree(map.n(), d))?;
    Ok(InvariantBasis {
        degree: d,
        mode: Mode::Filtered,
        map: map.clone(),
        basis: system.kernel(),
    })
}

/// Homogeneous invariants of degree `d`; the map must be linear.
pub fn solve_graded(map: &UnipotentAffineMap<Rational>, d: u32) -> Result<InvariantBasis> {
    if !map.is_linear() {
        return Err(Error::InvalidMap("graded solve needs a map without translation".into()));
    }
    let system = LinearSystem::build(map, Monomial::all_of_degree(map.n(), d))?;
    Ok(InvariantBasis {
        degree: d,
        mode: Mode::Graded,
        map: map.clone(),
        basis: system.kernel(),
    })
}

pub fn solve(map: &UnipotentAffineMap<Rational>, d: u32, mode: Mode) -> Result<InvariantBasis> {
    match mode {
        Mode::Filtered => solve_filtered(map, d),
        Mode::Graded => solve_graded(map, d),
    }
}

/// Kernel dimensions for `d = 0..=d_max`.
pub fn dimension_table(map: &UnipotentAffineMap<Rational>, d_max: u32, mode: Mode) -> Result<Vec<usize>> {
    (0..=d_max).map(|d| Ok(solve(map, d, mode)?.dimension())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{p_generator, u_generator};
    use crate::linalg::spans_equal;
    use crate::scalar::binomial;

    fn affine(n: usize) -> UnipotentAffineMap<Rational> {
        UnipotentAffineMap::make_affine_jordan(n).unwrap()
    }

    fn graded(n: usize) -> UnipotentAffineMap<Rational> {
        UnipotentAffineMap::make_graded_jordan(n).unwrap()
    }

    #[test]
    fn quadratic_invariants_n4() {
        let b = solve_filtered(&affine(4), 2).unwrap();
        assert_eq!(b.dimension(), 3);
        let expected = vec![Polynomial::one(4), u_generator(4, 1).unwrap(), u_generator(4, 2).unwrap()];
        assert!(spans_equal(&b.basis, &expected));
        for p in &b.basis {
            assert!(affine(4).is_invariant(p));
        }
        assert_eq!(b.basis[0], Polynomial::one(4));
    }

    #[test]
    fn linear_invariants_are_constants() {
        assert_eq!(solve_filtered(&affine(5), 1).unwrap().dimension(), 1);
        assert_eq!(dimension_table(&affine(4), 2, Mode::Filtered).unwrap(), vec![1, 1, 3]);
    }

    #[test]
    fn graded_dimensions() {
        let b = solve_graded(&graded(3), 2).unwrap();
        assert_eq!(b.dimension(), 2);
        let expected = vec![Polynomial::var(3, 0).pow(2), p_generator(2, 1).unwrap()];
        assert!(spans_equal(&b.basis, &expected));
        assert_eq!(solve_graded(&graded(4), 1).unwrap().basis, vec![Polynomial::var(4, 0)]);
        assert_eq!(dimension_table(&graded(4), 4, Mode::Graded).unwrap(), vec![1, 1, 2, 3, 5]);
        assert_eq!(dimension_table(&graded(2), 5, Mode::Graded).unwrap(), vec![1; 6]);
        assert!(solve_graded(&affine(3), 2).is_err());
    }

    #[test]
    fn identity_map_keeps_everything() {
        for n in 1..=3 {
            for d in 0..=3 {
                let b = solve_filtered(&UnipotentAffineMap::identity(n), d).unwrap();
                assert_eq!(b.dimension() as i64, binomial(n as i64 + d as i64, d as i64));
            }
        }
    }

    #[test]
    fn filtered_dimensions_grow() {
        let dims = dimension_table(&affine(3), 4, Mode::Filtered).unwrap();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn graded_pieces_sum_to_filtered() {
        // for a linear map the bounded space splits into graded pieces
        let g = graded(3);
        let pieces: usize = dimension_table(&g, 3, Mode::Graded).unwrap().iter().sum();
        assert_eq!(pieces, solve_filtered(&g, 3).unwrap().dimension());
    }
}
