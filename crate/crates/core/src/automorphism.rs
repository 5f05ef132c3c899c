//! Unipotent affine automorphisms `x -> A x + b` and the operator `1 - sigma`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{parse_rational, rational_to_string, Rational, Scalar};

/// `x -> matrix * x + translation` with `matrix` lower-triangular and
/// unipotent, extended to an algebra automorphism of the polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentAffineMap<C> {
    n: usize,
    matrix: Vec<Vec<C>>,
    translation: Vec<C>,
}

impl<C: Scalar> UnipotentAffineMap<C> {
    pub fn new(matrix: Vec<Vec<C>>, translation: Vec<C>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidMap("empty matrix".into()));
        }
        if translation.len() != n {
            return Err(Error::InvalidMap(format!(
                "translation has length {}, expected {n}",
                translation.len()
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMap(format!("row {} has length {}, expected {n}", i + 1, row.len())));
            }
            if !row[i].is_one() {
                return Err(Error::InvalidMap(format!("diagonal entry {} is not 1", i + 1)));
            }
            if row[i + 1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidMap(format!("row {} has entries above the diagonal", i + 1)));
            }
        }
        Ok(UnipotentAffineMap { n, matrix, translation })
    }

    /// `x -> J_n(1) x - e_1`: `x1 -> x1 - 1`, `x_i -> x_i + x_{i-1}`.
    pub fn make_affine_jordan(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::out_of_range(format!("affine map needs n >= 2, got {n}")));
        }
        let mut t = vec![C::zero(); n];
        t[0] = -C::one();
        Ok(Self::jordan(n, t))
    }

    /// `x -> J_{n+1}(1) x` on `n_plus_1` variables.
    pub fn make_graded_jordan(n_plus_1: usize) -> Result<Self> {
        if n_plus_1 < 2 {
            return Err(Error::out_of_range(format!(
                "graded map needs at least 2 variables, got {n_plus_1}"
            )));
        }
        Ok(Self::jordan(n_plus_1, vec![C::zero(); n_plus_1]))
    }

    /// The identity map on `n` variables.
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect())
            .collect();
        UnipotentAffineMap {
            n,
            matrix,
            translation: vec![C::zero(); n],
        }
    }

    fn jordan(n: usize, translation: Vec<C>) -> Self {
        let mut m = Self::identity(n);
        for i in 1..n {
            m.matrix[i][i - 1] = C::one();
        }
        m.translation = translation;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<C>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[C] {
        &self.translation
    }

    pub fn is_linear(&self) -> bool {
        self.translation.iter().all(|c| c.is_zero())
    }

    /// Images of the variables.
    pub fn images(&self) -> Vec<Polynomial<C>> {
        (0..self.n)
            .map(|i| {
                let mut p = Polynomial::constant(self.n, self.translation[i].clone());
                for (j, a) in self.matrix[i].iter().enumerate() {
                    if !a.is_zero() {
                        p = &p + &Polynomial::var(self.n, j).scale(a);
                    }
                }
                p
            })
            .collect()
    }

    fn check(&self, p: &Polynomial<C>) -> Result<()> {
        if p.nvars() != self.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: p.nvars(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        self.check(p)?;
        p.substitute(&self.images())
    }

    /// The inverse map; its matrix is again unipotent lower-triangular.
    pub fn inverse(&self) -> Self {
        let n = self.n;
        // forward substitution on A X = I, column by column
        let mut inv = vec![vec![C::zero(); n]; n];
        for col in 0..n {
            for i in 0..n {
                let mut v = if i == col { C::one() } else { C::zero() };
                for k in 0..i {
                    if !self.matrix[i][k].is_zero() {
                        v = v - self.matrix[i][k].clone() * inv[k][col].clone();
                    }
                }
                inv[i][col] = v;
            }
        }
        let translation = (0..n)
            .map(|i| {
                let mut v = C::zero();
                for (a, b) in inv[i].iter().zip(&self.translation) {
                    v = v - a.clone() * b.clone();
                }
                v
            })
            .collect();
        UnipotentAffineMap {
            n,
            matrix: inv,
            translation,
        }
    }

    /// `self` after `other`: `p -> self(other(p))` on polynomials means
    /// substituting `other`'s images into `self`'s, so the matrix is `A_other A_self`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let images: Vec<Polynomial<C>> = self
            .images()
            .iter()
            .map(|p| p.substitute(&other.images()))
            .collect::<Result<_>>()?;
        let n = self.n;
        let matrix = images
            .iter()
            .map(|p| {
                (0..n)
                    .map(|j| p.coefficient(&crate::poly::Monomial::var(n, j)))
                    .collect()
            })
            .collect();
        let translation = images.iter().map(Polynomial::constant_term).collect();
        Self::new(matrix, translation)
    }

    /// `p - sigma(p)`.
    pub fn delta(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        Ok(p - &self.apply(p)?)
    }

    pub fn is_invariant(&self, p: &Polynomial<C>) -> bool {
        matches!(self.delta(p), Ok(d) if d.is_zero())
    }
}

impl UnipotentAffineMap<Rational> {
    pub fn to_json(&self) -> Value {
        let s = |row: &[Rational]| row.iter().map(rational_to_string).collect::<Vec<_>>();
        json!({
            "n": self.n,
            "matrix": self.matrix.iter().map(|r| s(r)).collect::<Vec<_>>(),
            "translation": s(&self.translation),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidMap(format!("malformed JSON: {what}"));
        let entry = |e: &Value| -> Result<Rational> {
            match e {
                Value::String(s) => parse_rational(s).ok_or_else(|| bad("rational entry")),
                Value::Number(k) => k
                    .as_i64()
                    .map(crate::scalar::int)
                    .ok_or_else(|| bad("non-integer number")),
                _ => Err(bad("rational entry")),
            }
        };
        let vector = |e: &Value| -> Result<Vec<Rational>> {
            e.as_array().ok_or_else(|| bad("expected array"))?.iter().map(entry).collect()
        };
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("n"))? as usize;
        let matrix: Vec<Vec<Rational>> = v
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("matrix"))?
            .iter()
            .map(vector)
            .collect::<Result<_>>()?;
        let translation = vector(v.get("translation").ok_or_else(|| bad("translation"))?)?;
        if matrix.len() != n {
            return Err(Error::InvalidMap(format!("n = {n} but matrix has {} rows", matrix.len())));
        }
        Self::new(matrix, translation)
    }
}
