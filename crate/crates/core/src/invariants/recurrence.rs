//! Two-index recurrences `l_{i,j} = delta (l_{i+1,j-1} + l_{i+1,j}) + m_{i,j-1}` and
//! their closed-form solutions in terms of a later row.
//!
//! Tables are sparse maps `(i, j) -> value` with zero default. A spec fixes a
//! row interval `[a, b]`; the recurrence is required on rows `a..b-1` (it reads
//! row `i + 1`) for every column.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exponential::{phi, Direction};
use crate::invariants::coefficients::{coeff_table, CoefficientTable, TableKind};
use crate::scalar::{binomial_big, int, Rational};

pub type Grid = BTreeMap<(i64, i64), Rational>;

fn get(g: &Grid, i: i64, j: i64) -> Rational {
    g.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
}

fn binom(a: i64, b: i64) -> Rational {
    Rational::from_integer(binomial_big(a, b))
}

fn pow(x: &Rational, e: i64) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// `phi_k(x) = x(x+1)...(x+k-1)/k!` at an integer.
fn phi_at(k: i64, x: i64) -> Rational {
    phi(k, Direction::Plus).expect("k >= 0").evaluate(&[int(x)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub a: i64,
    pub b: i64,
    pub delta: Rational,
    /// Ratio of the forcing table's own recurrence, when it has one.
    pub gamma: Option<Rational>,
}

impl RecurrenceSpec {
    fn window(&self, c: i64) -> Result<()> {
        if self.a > self.b {
            return Err(Error::Window(format!("empty interval [{}, {}]", self.a, self.b)));
        }
        if c < 0 || c > self.b - self.a {
            return Err(Error::Window(format!(
                "shift {c} does not fit in the interval [{}, {}]",
                self.a, self.b
            )));
        }
        Ok(())
    }

    /// Fills rows `b-1` down to `a` from row `b` and the forcing table.
    pub fn generate(&self, last_row: &BTreeMap<i64, Rational>, forcing: &Grid) -> Grid {
        let mut g: Grid = last_row.iter().map(|(&j, v)| ((self.b, j), v.clone())).collect();
        let (lo, hi) = columns(&[&g, forcing], self.b - self.a + 1);
        for i in (self.a..self.b).rev() {
            for j in lo..=hi {
                let v = &self.delta * (get(&g, i + 1, j - 1) + get(&g, i + 1, j)) + get(forcing, i, j - 1);
                if !v.is_zero() {
                    g.insert((i, j), v);
                }
            }
        }
        g
    }
}

/// Column range covering the supports, padded by `pad` on both sides.
fn columns(grids: &[&Grid], pad: i64) -> (i64, i64) {
    let js = grids.iter().flat_map(|g| g.keys().map(|&(_, j)| j));
    let (lo, hi) = js.fold((i64::MAX, i64::MIN), |(lo, hi), j| (lo.min(j), hi.max(j)));
    if lo > hi {
        (0, 0)
    } else {
        (lo - pad - 2, hi + pad + 2)
    }
}

/// Whether `l` satisfies the recurrence with forcing `m` on rows `a..b-1`.
pub fn hypothesis_holds(spec: &RecurrenceSpec, l: &Grid, m: &Grid) -> bool {
    let (lo, hi) = columns(&[l, m], 1);
    (spec.a..spec.b).all(|i| {
        (lo..=hi).all(|j| get(l, i, j) == &spec.delta * (get(l, i + 1, j - 1) + get(l, i + 1, j)) + get(m, i, j - 1))
    })
}

/// `delta^c sum_d C(c,d) l_{i+c,j-d}`.
fn shifted_row(delta: &Rational, l: &Grid, i: i64, j: i64, c: i64) -> Rational {
    let s: Rational = (0..=c).map(|d| binom(c, d) * get(l, i + c, j - d)).sum();
    pow(delta, c) * s
}

/// Right-hand side of the general closed form with forcing.
pub fn general_rhs(spec: &RecurrenceSpec, l: &Grid, m: &Grid, i: i64, j: i64, c: i64) -> Rational {
    let mut out = shifted_row(&spec.delta, l, i, j, c);
    for cp in 0..c {
        let s: Rational = (0..=cp).map(|d| binom(cp, d) * get(m, i + cp, j - 1 - d)).sum();
        out += pow(&spec.delta, cp) * s;
    }
    out
}

/// Right-hand side when the forcing has its own recurrence with ratio `gamma`:
/// the forcing contributes `(1 + r + ... + r^{c-1}) m_{i,j-1}` with `r = delta/gamma`.
pub fn geometric_rhs(spec: &RecurrenceSpec, gamma: &Rational, l: &Grid, m: &Grid, i: i64, j: i64, c: i64) -> Rational {
    let r = &spec.delta / gamma;
    let factor: Rational = (0..c).map(|e| pow(&r, e)).sum();
    shifted_row(&spec.delta, l, i, j, c) + factor * get(m, i, j - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub hypothesis: bool,
    pub general: bool,
    /// Unforced closed form; only checked when the forcing vanishes.
    pub unforced: Option<bool>,
    /// Geometric closed form; only checked when `gamma` is given.
    pub geometric: Option<bool>,
}

impl RecurrenceReport {
    pub fn holds(&self) -> bool {
        self.hypothesis && self.general && self.unforced != Some(false) && self.geometric != Some(false)
    }
}

/// Checks the closed forms for shift `c` at every row `i` with `i, i + c` in `[a, b]`.
pub fn recurrence_check(spec: &RecurrenceSpec, l: &Grid, m: &Grid, c: i64) -> Result<RecurrenceReport> {
    spec.window(c)?;
    let (lo, hi) = columns(&[l, m], c);
    let rows = spec.a..=spec.b - c;
    let all = |f: &dyn Fn(i64, i64) -> bool| rows.clone().all(|i| (lo..=hi).all(|j| f(i, j)));
    let hypothesis = hypothesis_holds(spec, l, m);
    let general = all(&|i, j| get(l, i, j) == general_rhs(spec, l, m, i, j, c));
    let unforced = if m.values().all(Zero::is_zero) {
        Some(all(&|i, j| get(l, i, j) == shifted_row(&spec.delta, l, i, j, c)))
    } else {
        None
    };
    let geometric = match &spec.gamma {
        Some(g) if !g.is_zero() => {
            let inner = RecurrenceSpec {
                delta: g.clone(),
                gamma: None,
                ..spec.clone()
            };
            let forced_ok = hypothesis_holds(&inner, m, &Grid::new());
            Some(forced_ok && all(&|i, j| get(l, i, j) == geometric_rhs(spec, g, l, m, i, j, c)))
        }
        _ => None,
    };
    Ok(RecurrenceReport {
        hypothesis,
        general,
        unforced,
        geometric,
    })
}

/// `I_k = sum_{c > c_1 > c_2 > ... > c_k >= 0} prod_l r_l^{c_l}` by direct nested summation.
pub fn nested_sum(c: i64, ratios: &[Rational]) -> Rational {
    fn go(bound: i64, ratios: &[Rational]) -> Rational {
        match ratios.split_first() {
            None => Rational::one(),
            Some((r, rest)) => (0..bound).map(|cl| pow(r, cl) * go(cl, rest)).sum(),
        }
    }
    go(c, ratios)
}

/// `I_k` with all ratios 1 equals `C(c, k)`, and `phi_k(c - k + 1)` when `c >= k`.
pub fn nested_sum_check(c: i64, k: usize) -> bool {
    let i_k = nested_sum(c, &vec![Rational::one(); k]);
    let k = k as i64;
    i_k == binom(c, k) && (c < k || i_k == phi_at(k, c - k + 1))
}

/// Closed forms for a chain `0 ~> l^n ~> ... ~> l^1 ~> l^0` with one common `delta`:
/// `chain[k]` is `l^k` and `chain[k]` is the forcing of `chain[k-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub hypothesis: bool,
    /// `l_{i,j} = delta^c sum_d C(c,d) l_{i+c,j-d} + sum_k (-1)^{k-1} C(c,k) l^k_{i,j-k}`.
    pub binomial_form: bool,
    /// `l_{i,j} = delta^c sum_{k=0}^{n} phi_k(c) sum_d C(c,d) l^k_{i+c,j-k-d}`.
    pub row_form: bool,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.hypothesis && self.binomial_form && self.row_form
    }
}

pub fn chain_rhs_binomial(delta: &Rational, chain: &[Grid], i: i64, j: i64, c: i64) -> Rational {
    let mut out = shifted_row(delta, &chain[0], i, j, c);
    for (k, lk) in chain.iter().enumerate().skip(1) {
        let k = k as i64;
        let sign = int(if k % 2 == 1 { 1 } else { -1 });
        out += sign * binom(c, k) * get(lk, i, j - k);
    }
    out
}

/// Row form with weights `w(k, c)`; the closed form takes `phi_k(c)` summed over all `k <= n`.
pub fn chain_rhs_rows(
    delta: &Rational,
    chain: &[Grid],
    i: i64,
    j: i64,
    c: i64,
    k_max: usize,
    weight: impl Fn(i64, i64) -> Rational,
) -> Rational {
    let mut out = Rational::zero();
    for (k, lk) in chain.iter().enumerate().take(k_max + 1) {
        let k = k as i64;
        let s: Rational = (0..=c).map(|d| binom(c, d) * get(lk, i + c, j - k - d)).sum();
        out += weight(k, c) * s;
    }
    pow(delta, c) * out
}

pub fn chain_check(spec: &RecurrenceSpec, chain: &[Grid], c: i64) -> Result<ChainReport> {
    spec.window(c)?;
    if chain.is_empty() {
        return Err(Error::Window("empty chain".into()));
    }
    let empty = Grid::new();
    let hypothesis = (0..chain.len()).all(|k| hypothesis_holds(spec, &chain[k], chain.get(k + 1).unwrap_or(&empty)));
    let refs: Vec<&Grid> = chain.iter().collect();
    let (lo, hi) = columns(&refs, c + chain.len() as i64);
    let n = chain.len() - 1;
    let mut binomial_form = true;
    let mut row_form = true;
    for i in spec.a..=spec.b - c {
        for j in lo..=hi {
            let lhs = get(&chain[0], i, j);
            binomial_form &= lhs == chain_rhs_binomial(&spec.delta, chain, i, j, c);
            row_form &= lhs == chain_rhs_rows(&spec.delta, chain, i, j, c, n, phi_at);
        }
    }
    Ok(ChainReport {
        hypothesis,
        binomial_form,
        row_form,
    })
}

fn to_grid(t: &CoefficientTable) -> Grid {
    t.entries().map(|((i, j), v)| ((i as i64, j as i64), v.clone())).collect()
}

pub fn lambda_grid(k: usize) -> Result<Grid> {
    Ok(to_grid(&coeff_table(TableKind::Lambda, k)?))
}

pub fn alpha_grid(k: usize) -> Result<Grid> {
    Ok(to_grid(&coeff_table(TableKind::Alpha, k)?))
}

/// The spec matching the coefficient tables of block `k`: rows `[1, k-1]`, `delta = -1`;
/// the quadratic table forces the cubic one and itself recurs with ratio `-1`.
pub fn table_spec(k: usize) -> RecurrenceSpec {
    RecurrenceSpec {
        a: 1,
        b: k as i64 - 1,
        delta: int(-1),
        gamma: Some(int(-1)),
    }
}

/// Every closed form on the tables of block `k` for shift `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRecurrence {
    pub quadratic: RecurrenceReport,
    pub cubic: RecurrenceReport,
    pub chain: ChainReport,
}

impl TableRecurrence {
    pub fn holds(&self) -> bool {
        self.quadratic.holds()
            && self.quadratic.unforced == Some(true)
            && self.cubic.holds()
            && self.cubic.geometric == Some(true)
            && self.chain.holds()
    }
}

pub fn check_tables(k: usize, c: i64) -> Result<TableRecurrence> {
    check_grids(k, &lambda_grid(k)?, &alpha_grid(k)?, c)
}

pub fn check_grids(k: usize, lambda: &Grid, alpha: &Grid, c: i64) -> Result<TableRecurrence> {
    let spec = table_spec(k);
    let plain = RecurrenceSpec {
        gamma: None,
        ..spec.clone()
    };
    Ok(TableRecurrence {
        quadratic: recurrence_check(&plain, lambda, &Grid::new(), c)?,
        cubic: recurrence_check(&spec, alpha, lambda, c)?,
        chain: chain_check(&spec, &[alpha.clone(), lambda.clone()], c)?,
    })
}

/// `C(c, k)` as an integer, for reports.
pub fn binomial_value(c: i64, k: i64) -> BigInt {
    binomial_big(c, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nested_sums_small() {
        assert_eq!(nested_sum(3, &[Rational::one(), Rational::one()]), int(3));
        assert_eq!(nested_sum(0, &[]), int(1));
        for c in 0..=10 {
            for k in 0..=c as usize {
                assert!(nested_sum_check(c, k), "c={c} k={k}");
            }
        }
    }

    #[test]
    fn coefficient_tables_satisfy_closed_forms() {
        for k in 3..=12 {
            for c in 0..=(k as i64 - 2).min(5) {
                let r = check_tables(k, c).unwrap();
                assert!(r.holds(), "k={k} c={c}: {r:?}");
            }
        }
    }

    #[test]
    fn shift_zero_is_identity() {
        let l = lambda_grid(5).unwrap();
        let spec = table_spec(5);
        for (&(i, j), v) in &l {
            assert_eq!(&general_rhs(&spec, &l, &Grid::new(), i, j, 0), v);
        }
    }

    #[test]
    fn window_violations() {
        let l = lambda_grid(4).unwrap();
        assert!(recurrence_check(&table_spec(4), &l, &Grid::new(), 3).is_err());
        assert!(recurrence_check(&table_spec(4), &l, &Grid::new(), -1).is_err());
    }

    #[test]
    fn perturbation_breaks_hypothesis() {
        let mut l = lambda_grid(6).unwrap();
        *l.get_mut(&(2, 7)).unwrap() += int(1);
        let r = check_grids(6, &l, &alpha_grid(6).unwrap(), 1).unwrap();
        assert!(!r.holds());
    }

    #[test]
    fn truncated_row_form_needs_c_at_least_chain_length() {
        // three-step chain generated from random last rows; truncating the row
        // form at k <= min(n, c) loses terms when c < n
        let spec = RecurrenceSpec { a: 0, b: 6, delta: int(2), gamma: None };
        let row = |seed: i64| (0..8).map(|j| (j, int((j * 7 + seed) % 5 - 2))).collect::<BTreeMap<_, _>>();
        let l3 = spec.generate(&row(1), &Grid::new());
        let l2 = spec.generate(&row(2), &l3);
        let l1 = spec.generate(&row(3), &l2);
        let l0 = spec.generate(&row(4), &l1);
        let chain = [l0, l1, l2, l3];
        for c in 0..=5 {
            assert!(chain_check(&spec, &chain, c).unwrap().holds(), "c={c}");
        }
        let truncated_ok = |c: i64| {
            (0..=6 - c).all(|i| {
                (-6..20).all(|j| {
                    get(&chain[0], i, j) == chain_rhs_rows(&spec.delta, &chain, i, j, c, 3.min(c as usize), phi_at)
                })
            })
        };
        assert!(!truncated_ok(1));
        assert!(truncated_ok(3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn generated_tables_satisfy_closed_forms(
            last in prop::collection::btree_map(-3i64..6, -4i64..5, 1..6),
            forcing_row in prop::collection::btree_map(-3i64..6, -4i64..5, 0..6),
            delta in prop::sample::select(vec![-2i64, -1, 1, 3]),
            gamma in prop::sample::select(vec![-1i64, 2]),
        ) {
            let spec = RecurrenceSpec { a: 0, b: 5, delta: int(delta), gamma: Some(int(gamma)) };
            let forcing_spec = RecurrenceSpec { delta: int(gamma), gamma: None, ..spec.clone() };
            let to_row = |m: &BTreeMap<i64, i64>| m.iter().map(|(&j, &v)| (j, int(v))).collect::<BTreeMap<_, _>>();
            let m = forcing_spec.generate(&to_row(&forcing_row), &Grid::new());
            let l = spec.generate(&to_row(&last), &m);
            for c in 0..=5 {
                let r = recurrence_check(&spec, &l, &m, c).unwrap();
                prop_assert!(r.holds(), "c={} {:?}", c, r);
            }
        }
    }
}
