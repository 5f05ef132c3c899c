//! Closed-form coefficient families of the quadratic and cubic invariants.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{binomial, int, sign, Rational};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableKind {
    Lambda,
    Mu,
    Alpha,
    Beta,
}

impl TableKind {
    pub const ALL: [TableKind; 4] = [TableKind::Lambda, TableKind::Mu, TableKind::Alpha, TableKind::Beta];

    pub fn min_k(self) -> usize {
        match self {
            TableKind::Lambda | TableKind::Mu => 1,
            TableKind::Alpha | TableKind::Beta => 2,
        }
    }

    /// Single-index families store their entries under row 0.
    pub fn is_vector(self) -> bool {
        matches!(self, TableKind::Mu | TableKind::Beta)
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Lambda => "lambda",
            TableKind::Mu => "mu",
            TableKind::Alpha => "alpha",
            TableKind::Beta => "beta",
        })
    }
}

/// Index set of a family for block `k`, in increasing order.
pub fn index_set(kind: TableKind, k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    match kind {
        TableKind::Lambda => {
            for i in 1..k {
                for j in k..=2 * k - i {
                    out.push((i, j));
                }
            }
        }
        TableKind::Mu => out.extend((k..=2 * k).map(|j| (0, j))),
        TableKind::Alpha => {
            for i in 1..k {
                for j in k + 1..=2 * k - i + 1 {
                    out.push((i, j));
                }
            }
        }
        TableKind::Beta => out.extend((k + 1..=2 * k + 1).map(|j| (0, j))),
    }
    out
}

fn c(a: usize, b: usize) -> i64 {
    binomial(a as i64, b as i64)
}

fn cb(a: i64, b: i64) -> i64 {
    binomial(a, b)
}

/// `lambda^k_{i,j}`; zero outside the index set.
pub fn lambda(k: usize, i: usize, j: usize) -> i64 {
    if i < 1 || i >= k || j < k || j > 2 * k - i {
        return 0;
    }
    sign((k - i) as i64) * (c(k - i, j - k) + cb((k - i) as i64 - 1, j as i64 - k as i64 - 1))
}

/// `mu^k_j`; zero outside `[k, 2k]`.
pub fn mu(k: usize, j: usize) -> i64 {
    if j < k || j > 2 * k {
        return 0;
    }
    sign(k as i64 - 1) * (c(k, j - k) + cb(k as i64 - 1, j as i64 - k as i64 - 1))
}

/// `alpha^k_{i,j}`; zero outside the index set.
pub fn alpha(k: usize, i: usize, j: usize) -> i64 {
    if k < 2 || i < 1 || i >= k || j < k + 1 || j > 2 * k - i + 1 {
        return 0;
    }
    let (k, i, j) = (k as i64, i as i64, j as i64);
    let r = k - i - 1;
    sign(k - i)
        * (2 * cb(r, j - k - 1) + 3 * cb(r, j - k - 2) + r * (cb(k - i, j - k - 1) + cb(r, j - k - 2)))
}

/// `beta^k_j = alpha_{1,j-1} + alpha_{1,j} + mu_{j-1}`; zero outside `[k+1, 2k+1]`.
pub fn beta(k: usize, j: usize) -> i64 {
    if k < 2 || j < k + 1 || j > 2 * k + 1 {
        return 0;
    }
    alpha(k, 1, j - 1) + alpha(k, 1, j) + mu(k, j - 1)
}

/// One coefficient family for one block index, as a sparse map with zero default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    kind: TableKind,
    k: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl CoefficientTable {
    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.entries.iter().map(|(&ij, v)| (ij, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entry of a single-index family.
    pub fn at(&self, j: usize) -> Rational {
        self.get(0, j)
    }

    /// Copy with `delta` added to entry `(i, j)`.
    pub fn perturbed(&self, i: usize, j: usize, delta: &Rational) -> Self {
        let mut out = self.clone();
        let v = self.get(i, j) + delta;
        if v.is_zero() {
            out.entries.remove(&(i, j));
        } else {
            out.entries.insert((i, j), v);
        }
        out
    }

    /// Every index of the family carries a nonzero value.
    pub fn all_nonzero(&self) -> bool {
        index_set(self.kind, self.k).iter().all(|ij| self.entries.contains_key(ij))
    }
}

/// Closed-form evaluation of a coefficient family.
pub fn coeff_table(kind: TableKind, k: usize) -> Result<CoefficientTable> {
    if k < kind.min_k() {
        return Err(Error::out_of_range(format!("{kind} needs k >= {}, got {k}", kind.min_k())));
    }
    let entries = index_set(kind, k)
        .into_iter()
        .map(|(i, j)| {
            let v = match kind {
                TableKind::Lambda => lambda(k, i, j),
                TableKind::Mu => mu(k, j),
                TableKind::Alpha => alpha(k, i, j),
                TableKind::Beta => beta(k, j),
            };
            ((i, j), int(v))
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(CoefficientTable { kind, k, entries })
}

/// The coefficient families needed to assemble `u_k` and (for `k >= 2`) `v_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTables {
    pub k: usize,
    pub lambda: CoefficientTable,
    pub mu: CoefficientTable,
    pub alpha: Option<CoefficientTable>,
    pub beta: Option<CoefficientTable>,
}

impl BlockTables {
    pub fn closed_form(k: usize) -> Result<Self> {
        let cubic = k >= 2;
        Ok(BlockTables {
            k,
            lambda: coeff_table(TableKind::Lambda, k)?,
            mu: coeff_table(TableKind::Mu, k)?,
            alpha: if cubic { Some(coeff_table(TableKind::Alpha, k)?) } else { None },
            beta: if cubic { Some(coeff_table(TableKind::Beta, k)?) } else { None },
        })
    }

    pub fn table(&self, kind: TableKind) -> Option<&CoefficientTable> {
        match kind {
            TableKind::Lambda => Some(&self.lambda),
            TableKind::Mu => Some(&self.mu),
            TableKind::Alpha => self.alpha.as_ref(),
            TableKind::Beta => self.beta.as_ref(),
        }
    }

    /// Copy with one entry of one family shifted by `delta`.
    pub fn perturbed(&self, kind: TableKind, i: usize, j: usize, delta: &Rational) -> Self {
        let mut out = self.clone();
        let slot = match kind {
            TableKind::Lambda => Some(&mut out.lambda),
            TableKind::Mu => Some(&mut out.mu),
            TableKind::Alpha => out.alpha.as_mut(),
            TableKind::Beta => out.beta.as_mut(),
        };
        if let Some(t) = slot {
            *t = t.perturbed(i, j, delta);
        }
        out
    }
}
