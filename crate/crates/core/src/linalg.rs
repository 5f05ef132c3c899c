//! Exact sparse linear algebra over the rationals.
//!
//! Rows are stored as primitive integer vectors. Elimination is fraction-free:
//! a row is reduced against a pivot row by cross-multiplying the two leading
//! entries, then divided by the gcd of its entries. Pivots are chosen by
//! leading column, so the echelon form (and the nullspace basis read off it)
//! only depends on the column order.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::monomial::Monomial;
use crate::poly::polynomial::Polynomial;
use crate::scalar::Rational;

type Row = Vec<(usize, BigInt)>;

fn primitive(mut row: Row) -> Row {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    row
}

fn integer_row(entries: impl IntoIterator<Item = (usize, Rational)>) -> Row {
    let mut entries: Vec<(usize, Rational)> = entries.into_iter().filter(|(_, q)| !q.is_zero()).collect();
    entries.sort_by_key(|(c, _)| *c);
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    primitive(
        entries
            .into_iter()
            .map(|(c, q)| (c, q.numer() * (&lcm / q.denom())))
            .collect(),
    )
}

/// `a * row - b * pivot`, entries summed by column.
fn combine(a: &BigInt, row: &Row, b: &BigInt, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, a * &row[i].1));
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(b * &pivot[j].1)));
            j += 1;
        } else {
            let v = a * &row[i].1 - b * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built one row at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Echelon rows (integer, primitive) as rational sparse vectors, by leading column.
    pub fn rows(&self) -> Vec<Vec<(usize, Rational)>> {
        self.pivots
            .values()
            .map(|r| r.iter().map(|(c, v)| (*c, Rational::from_integer(v.clone()))).collect())
            .collect()
    }

    fn reduce(&self, mut row: Row) -> Row {
        while let Some((lead, value)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let p = &pivot[0].1;
                    let g = p.gcd(&value);
                    row = primitive(combine(&(p / &g), &row, &(&value / &g), pivot));
                }
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns `true` when it was independent of the previous rows.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        let row = self.reduce(integer_row(entries));
        match row.first() {
            None => false,
            Some(&(lead, _)) => {
                debug_assert!(lead < self.ncols);
                self.pivots.insert(lead, row);
                true
            }
        }
    }

    pub fn contains(&self, entries: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        self.reduce(integer_row(entries)).is_empty()
    }

    /// Nullspace of the row space, one vector per free column, in increasing
    /// free-column order. Vector `f` has a 1 at its free column and zeros at
    /// every other free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut reduced: BTreeMap<usize, Row> = BTreeMap::new();
        for (&lead, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            // clear every non-leading entry sitting in a pivot column
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(c, _)| reduced.contains_key(c))
                    .cloned();
                let Some((c, value)) = hit else { break };
                let other = &reduced[&c];
                let p = &other[0].1;
                let g = p.gcd(&value);
                let a = p / &g;
                let b = &value / &g;
                let merged = combine(&a, &row, &b, other);
                debug_assert!(merged.iter().all(|(k, _)| *k != c));
                row = primitive(merged);
            }
            reduced.insert(lead, row);
        }
        let pivot_set: BTreeSet<usize> = reduced.keys().copied().collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivot_set.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (&p, row) in &reduced {
                    if let Some((_, a)) = row.iter().find(|(c, _)| *c == f) {
                        v[p] = -Rational::new(a.clone(), row[0].1.clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// Column index for every monomial occurring in `polys`, largest monomial first.
pub fn monomial_columns(polys: &[Polynomial<Rational>]) -> BTreeMap<Monomial, usize> {
    let all: BTreeSet<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    all.into_iter().rev().enumerate().map(|(i, m)| (m, i)).collect()
}

fn row_of(p: &Polynomial<Rational>, columns: &BTreeMap<Monomial, usize>) -> Vec<(usize, Rational)> {
    p.terms().map(|(m, c)| (columns[m], c.clone())).collect()
}

/// Dimension of the span of `polys` over the rationals.
pub fn rank(polys: &[Polynomial<Rational>]) -> usize {
    let columns = monomial_columns(polys);
    let mut e = Echelon::new(columns.len());
    for p in polys {
        e.insert(row_of(p, &columns));
    }
    e.rank()
}

pub fn linearly_independent(polys: &[Polynomial<Rational>]) -> bool {
    rank(polys) == polys.len()
}

pub fn in_span(p: &Polynomial<Rational>, basis: &[Polynomial<Rational>]) -> bool {
    let mut all = basis.to_vec();
    all.push(p.clone());
    rank(&all) == rank(basis)
}

/// Exact equality of spans, by comparing ranks of each side with the union.
pub fn spans_equal(a: &[Polynomial<Rational>], b: &[Polynomial<Rational>]) -> bool {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    let r = rank(&all);
    rank(a) == r && rank(b) == r
}

/// Rank of a dense rational matrix.
pub fn matrix_rank(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.iter().cloned().enumerate());
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn dense(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(matrix_rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(matrix_rank(&dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), 3);
        assert_eq!(matrix_rank(&dense(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn nullspace_is_reduced_and_annihilated() {
        let m = dense(&[&[1, 2, 0, 3], &[2, 4, 1, 1], &[3, 6, 1, 4]]);
        let mut e = Echelon::new(4);
        for r in &m {
            e.insert(r.iter().cloned().enumerate());
        }
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &m {
                let dot: Rational = r.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(ns[0], vec![int(-2), int(1), int(0), int(0)]);
        assert_eq!(ns[1], vec![int(-3), int(0), int(5), int(1)]);
    }

    #[test]
    fn rational_rows_are_scaled() {
        let mut e = Echelon::new(2);
        assert!(e.insert([(0, rat(1, 2)), (1, rat(1, 3))]));
        assert!(e.contains([(0, int(3)), (1, int(2))]));
        assert!(!e.contains([(0, int(1))]));
    }
}
