//! Leading forms with respect to the total-degree filtration, and
//! independence of the associated graded pieces.

use crate::linalg::{monomial_columns, Echelon};
use crate::poly::polynomial::{Degree, Polynomial};
use crate::scalar::Rational;

/// Filtration degree: the total degree.
pub fn fdeg(p: &Polynomial<Rational>) -> Degree {
    p.degree()
}

/// Leading forms of an echelon basis of `span(basis)`: a basis of the
/// associated graded subspace.
pub fn graded_basis_of_span(basis: &[Polynomial<Rational>]) -> Vec<Polynomial<Rational>> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let n = first.nvars();
    let columns = monomial_columns(basis);
    let by_index: Vec<_> = columns.keys().rev().cloned().collect();
    let mut e = Echelon::new(columns.len());
    for p in basis {
        e.insert(p.terms().map(|(m, c)| (columns[m], c.clone())));
    }
    e.rows()
        .into_iter()
        .map(|row| {
            let p = Polynomial::from_terms(n, row.into_iter().map(|(c, q)| (by_index[c].clone(), q)));
            p.leading_form().expect("echelon rows are nonzero")
        })
        .collect()
}

/// Whether the leading forms of `ps` are linearly independent.
pub fn f_independent(ps: &[Polynomial<Rational>]) -> bool {
    let forms: Option<Vec<_>> = ps.iter().map(|p| p.leading_form().ok()).collect();
    forms.is_some_and(|f| crate::linalg::linearly_independent(&f))
}

/// Whether `sum U_j` is filtration-direct, each `U_j` given by a spanning set.
pub fn is_f_direct(subspaces: &[Vec<Polynomial<Rational>>]) -> bool {
    let graded: Vec<Polynomial<Rational>> = subspaces.iter().flat_map(|u| graded_basis_of_span(u)).collect();
    crate::linalg::linearly_independent(&graded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse;

    #[test]
    fn graded_pieces() {
        let a = vec![parse("x1^2 + x2", 2).unwrap(), parse("x1^2 + x1", 2).unwrap()];
        let g = graded_basis_of_span(&a);
        // span contains x2 - x1, of degree 1
        assert_eq!(g.len(), 2);
        assert!(g.iter().any(|p| p.degree() == Degree::Finite(1)));
        assert!(!f_independent(&a));
        assert!(is_f_direct(std::slice::from_ref(&a)));
        let b = vec![parse("x1^2", 2).unwrap()];
        assert!(!is_f_direct(&[a, b.clone()]));
        assert!(is_f_direct(&[b, vec![parse("x1*x2 + 1", 2).unwrap()]]));
    }
}
