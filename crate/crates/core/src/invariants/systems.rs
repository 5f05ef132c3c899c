//! Linear conditions on the coefficients of quadratic and cubic invariants,
//! checked by substituting the closed-form tables.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::invariants::coefficients::{index_set, BlockTables, TableKind};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{int, sign, Rational};
use crate::Poly;

/// A named linear condition and its value on the tables; zero means satisfied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub label: String,
    pub residual: Rational,
}

impl Equation {
    fn new(label: impl Into<String>, residual: Rational) -> Self {
        Equation {
            label: label.into(),
            residual,
        }
    }

    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Failed equations only.
pub fn failures(eqs: &[Equation]) -> Vec<&Equation> {
    eqs.iter().filter(|e| !e.holds()).collect()
}

/// `u = sum_{i<=j} l_{i,j} x_i x_j + sum_j m_j x_j` on `n` variables, 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub n: usize,
    pub lambda: BTreeMap<(usize, usize), Rational>,
    pub mu: BTreeMap<usize, Rational>,
}

impl QuadraticForm {
    pub fn l(&self, i: usize, j: usize) -> Rational {
        self.lambda.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn m(&self, j: usize) -> Rational {
        self.mu.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Reads the coefficients off a polynomial of degree at most 2 (the constant is ignored).
    pub fn from_poly(u: &Poly) -> Result<Self> {
        let n = u.nvars();
        let mut lambda = BTreeMap::new();
        let mut mu = BTreeMap::new();
        for (m, c) in u.terms() {
            let vars: Vec<usize> = m
                .exponents()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e as usize))
                .collect();
            match vars.as_slice() {
                [] => {}
                [j] => {
                    mu.insert(*j, c.clone());
                }
                [i, j] => {
                    lambda.insert((*i, *j), c.clone());
                }
                _ => return Err(Error::out_of_range("quadratic form expected")),
            }
        }
        Ok(QuadraticForm { n, lambda, mu })
    }

    /// The form of `u_k` on `n` variables straight from the tables (diagonal entry `l_{k,k} = 1`).
    pub fn from_tables(n: usize, t: &BlockTables) -> Self {
        let mut lambda: BTreeMap<(usize, usize), Rational> = t.lambda.entries().map(|(ij, v)| (ij, v.clone())).collect();
        lambda.insert((t.k, t.k), int(1));
        let mu = t.mu.entries().map(|((_, j), v)| (j, v.clone())).collect();
        QuadraticForm { n, lambda, mu }
    }

    pub fn to_poly(&self) -> Poly {
        let n = self.n;
        let mut out = Polynomial::zero(n);
        for (&(i, j), c) in &self.lambda {
            out.add_term(Monomial::var(n, i - 1).mul(&Monomial::var(n, j - 1)), c.clone());
        }
        for (&j, c) in &self.mu {
            out.add_term(Monomial::var(n, j - 1), c.clone());
        }
        out
    }

    /// The coefficient-wise expansion of `u - sigma(u)` for the affine Jordan map, `n >= 3`.
    pub fn delta_expansion(&self) -> Result<Poly> {
        let n = self.n;
        if n < 3 {
            return Err(Error::out_of_range("the expansion is stated for n >= 3"));
        }
        let x = |i: usize| Polynomial::var(n, i - 1);
        let k = |v: Rational| Polynomial::constant(n, v);
        let l = |i, j| self.l(i, j);
        let d = |i| self.l(i, i);
        let two = int(2);
        let mut out = Polynomial::zero(n);
        for j in 1..n {
            out = &out - &(&k(l(j, j + 1) + d(j + 1)) * &x(j).pow(2));
        }
        let bracket = |i: usize, first: Rational, row: &dyn Fn(usize) -> Rational| {
            let mut b = &k(first) * &x(i + 1);
            for j in i + 2..n {
                b = &b + &(&k(row(j)) * &x(j));
            }
            &b + &(&k(l(i + 1, n)) * &x(n))
        };
        for i in 2..n - 1 {
            let first = l(i, i + 2) + l(i + 1, i + 2) + &two * d(i + 1);
            let row = |j| l(i + 1, j) + l(i, j + 1) + l(i + 1, j + 1);
            out = &out - &(&x(i) * &bracket(i, first, &row));
        }
        let first = l(2, 3) + l(1, 3) + &two * d(2);
        let row = |j| l(2, j) + l(1, j + 1) + l(2, j + 1);
        out = &out - &(&x(1) * &bracket(1, first, &row));
        out = &out - &(&k(&two * d(n)) * &(&x(n - 1) * &x(n)));
        out = &out + &(&k(&two * d(1) + l(1, 2) - self.m(2)) * &x(1));
        for j in 3..=n {
            out = &out + &(&k(l(1, j - 1) + l(1, j) - self.m(j)) * &x(j - 1));
        }
        out = &out + &(&k(l(1, n)) * &x(n));
        Ok(&out + &k(self.m(1) - d(1)))
    }

    /// Linear terms, squares, the `x1 x2` term, interior and near-diagonal
    /// mixed terms, and the last column.
    pub fn equations(&self) -> Vec<Equation> {
        let n = self.n;
        let l = |i, j| self.l(i, j);
        let d = |i| self.l(i, i);
        let two = int(2);
        let mut out = vec![
            Equation::new("linear x1", self.m(1) - d(1)),
            Equation::new("linear x2", self.m(2) - (&two * d(1) + l(1, 2))),
        ];
        for j in 3..=n {
            out.push(Equation::new(format!("linear x{j}"), self.m(j) - (l(1, j - 1) + l(1, j))));
        }
        if n >= 3 {
            out.push(Equation::new("x1*x2", l(2, 3) + l(1, 3) + &two * d(2)));
        }
        for j in 1..n {
            out.push(Equation::new(format!("square x{j}"), l(j, j + 1) + d(j + 1)));
        }
        for i in 1..n.saturating_sub(1) {
            for j in i + 2..n {
                out.push(Equation::new(
                    format!("mixed x{i}*x{j}"),
                    l(i + 1, j) + l(i, j + 1) + l(i + 1, j + 1),
                ));
            }
        }
        for i in 2..n.saturating_sub(1) {
            out.push(Equation::new(format!("near-diagonal x{i}"), l(i, i + 2) + l(i + 1, i + 2) + &two * d(i + 1)));
        }
        for i in 1..=n {
            out.push(Equation::new(format!("last column {i}"), l(i, n)));
        }
        out
    }
}

/// The conditions for `v_k` (`k >= 2`): leading coefficient, the two corner
/// entries, the quadratic-to-cubic coupling and the linear coefficients.
pub fn cubic_equations(t: &BlockTables) -> Result<Vec<Equation>> {
    let k = t.k;
    let (Some(alpha), Some(beta)) = (&t.alpha, &t.beta) else {
        return Err(Error::out_of_range("cubic conditions need k >= 2"));
    };
    // x_k x_{k+1} has coefficient a = 1
    let a = |i: usize, j: usize| {
        if (i, j) == (k, k + 1) {
            int(1)
        } else {
            alpha.get(i, j)
        }
    };
    let mut out = vec![
        Equation::new("corner (k-1, k+1)", alpha.get(k - 1, k + 1) + int(2)),
        Equation::new("corner (k-1, k+2)", alpha.get(k - 1, k + 2) + int(3)),
    ];
    for i in 1..k {
        for j in k..=2 * k - i {
            out.push(Equation::new(
                format!("coupling ({i}, {j})"),
                t.lambda.get(i, j) - (a(i + 1, j) + a(i, j + 1) + a(i + 1, j + 1)),
            ));
        }
    }
    for j in k + 1..=2 * k + 1 {
        let expected = alpha.get(1, j - 1) + alpha.get(1, j) + t.mu.at(j - 1);
        out.push(Equation::new(format!("linear ({j})"), beta.at(j) - expected));
    }
    Ok(out)
}

/// Both boundary diagonals of the cubic table:
/// `alpha_{i,2k+1-i} = (-1)^{k-i}(1 + 2(k-i))` and `alpha_{i,k+1} = (-1)^{k-i}(k-i+1)`.
pub fn alpha_edge_equations(t: &BlockTables) -> Result<Vec<Equation>> {
    let k = t.k;
    let alpha = t.alpha.as_ref().ok_or_else(|| Error::out_of_range("needs k >= 2"))?;
    let mut out = Vec::new();
    for i in 1..k {
        let s = sign((k - i) as i64);
        let r = (k - i) as i64;
        out.push(Equation::new(format!("far edge {i}"), alpha.get(i, 2 * k + 1 - i) - int(s * (1 + 2 * r))));
        out.push(Equation::new(format!("near edge {i}"), alpha.get(i, k + 1) - int(s * (r + 1))));
    }
    Ok(out)
}

/// One equation per index of every family; the residual is 1 when the entry vanishes.
pub fn nonvanishing_equations(t: &BlockTables) -> Vec<Equation> {
    let mut out = Vec::new();
    for kind in TableKind::ALL {
        if let Some(table) = t.table(kind) {
            for (i, j) in index_set(kind, t.k) {
                let zero = table.get(i, j).is_zero();
                out.push(Equation::new(format!("{kind} ({i}, {j}) nonzero"), int(zero as i64)));
            }
        }
    }
    out
}

/// Every coefficient condition for block `k`, with the quadratic system posed in
/// `2k` and `2k + 1` variables.
pub fn all_equations(t: &BlockTables) -> Result<Vec<Equation>> {
    let k = t.k;
    let mut out = Vec::new();
    for n in [2 * k, 2 * k + 1] {
        for mut e in QuadraticForm::from_tables(n, t).equations() {
            e.label = format!("n={n} {}", e.label);
            out.push(e);
        }
    }
    if k >= 2 {
        out.extend(cubic_equations(t)?);
        out.extend(alpha_edge_equations(t)?);
    }
    out.extend(nonvanishing_equations(t));
    Ok(out)
}
