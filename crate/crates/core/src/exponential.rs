//! Factorial bases in `x1`, truncated sigma-exponentials and the matrix `Lambda`.
//!
//! Here `sigma(x) = x - 1` on a single variable. A series `sum c_i Theta^i` in
//! the lower shift matrix `Theta` of size `s` is stored as its first `s`
//! coefficients; `Theta^s = 0`, so products are truncated convolutions.

use crate::automorphism::UnipotentAffineMap;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{int, Rational};
use crate::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `phi_i = x(x+1)...(x+i-1)/i!`
    Plus,
    /// `phi_{-i} = x(x-1)...(x-i+1)/i!`
    Minus,
}

/// `phi_i` (plus) or `phi_{-i}` (minus) as a polynomial in one variable.
pub fn phi(i: i64, direction: Direction) -> Result<Poly> {
    if i < 0 {
        return Err(Error::out_of_range(format!("phi index must be >= 0, got {i}")));
    }
    let x = Polynomial::var(1, 0);
    let step = match direction {
        Direction::Plus => 1,
        Direction::Minus => -1,
    };
    let mut out = Polynomial::one(1);
    for k in 0..i {
        let factor = &x + &Polynomial::constant(1, int(step * k));
        out = (&out * &factor).scale(&Rational::new(1.into(), (k + 1).into()));
    }
    Ok(out)
}

/// `phi_{+-i}` evaluated at `x1` of an `nvars`-variable ring.
pub fn phi_in(i: i64, direction: Direction, nvars: usize) -> Result<Poly> {
    phi(i, direction)?.substitute(&[Polynomial::var(nvars, 0)])
}

/// Signed index convenience: `phi_signed(-3) = phi_{-3}`, `phi_signed(2) = phi_2`.
pub fn phi_signed(i: i64) -> Poly {
    let d = if i < 0 { Direction::Minus } else { Direction::Plus };
    phi(i.abs(), d).expect("absolute value is non-negative")
}

/// `x -> x - 1` on one variable.
pub fn shift_map() -> UnipotentAffineMap<Rational> {
    UnipotentAffineMap::new(vec![vec![int(1)]], vec![int(-1)]).expect("1x1 unipotent matrix")
}

/// `f(x) -> f(x + 1)`, the inverse shift.
pub fn shift_inverse(p: &Poly) -> Poly {
    shift_map().inverse().apply(p).expect("univariate input")
}

fn shift(p: &Poly) -> Poly {
    shift_map().apply(p).expect("univariate input")
}

/// `sum_i c_i Theta^i` truncated at `Theta^size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentSeries {
    coefficients: Vec<Poly>,
}

impl NilpotentSeries {
    pub fn new(size: usize, nvars: usize, coefficients: Vec<Poly>) -> Result<Self> {
        if size < 1 {
            return Err(Error::out_of_range("series size must be >= 1"));
        }
        if coefficients.len() > size {
            return Err(Error::out_of_range(format!(
                "{} coefficients do not fit in size {size}",
                coefficients.len()
            )));
        }
        if let Some(bad) = coefficients.iter().find(|c| c.nvars() != nvars) {
            return Err(Error::VariableMismatch {
                left: nvars,
                right: bad.nvars(),
            });
        }
        let mut coefficients = coefficients;
        coefficients.resize(size, Polynomial::zero(nvars));
        Ok(NilpotentSeries { coefficients })
    }

    pub fn identity(size: usize, nvars: usize) -> Self {
        Self::new(size, nvars, vec![Polynomial::one(nvars)]).expect("size >= 1")
    }

    pub fn size(&self) -> usize {
        self.coefficients.len()
    }

    pub fn nvars(&self) -> usize {
        self.coefficients[0].nvars()
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> &Poly {
        &self.coefficients[i]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size());
        let s = self.size();
        let n = self.nvars();
        let mut out = vec![Polynomial::zero(n); s];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients[..s - i].iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        NilpotentSeries { coefficients: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        NilpotentSeries {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `Theta * self`.
    pub fn theta_shift(&self) -> Self {
        let n = self.nvars();
        let mut c = vec![Polynomial::zero(n)];
        c.extend_from_slice(&self.coefficients[..self.size() - 1]);
        NilpotentSeries { coefficients: c }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        NilpotentSeries {
            coefficients: self.coefficients.iter().map(f).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size(), self.nvars())
    }

    /// Entry `(r, c)` of the lower-triangular Toeplitz matrix.
    pub fn entry(&self, r: usize, c: usize) -> Poly {
        if r >= c {
            self.coefficients[r - c].clone()
        } else {
            Polynomial::zero(self.nvars())
        }
    }

    /// Matrix times column vector.
    pub fn apply_to(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.size());
        (0..v.len())
            .map(|r| {
                (0..=r).fold(Polynomial::zero(self.nvars()), |acc, c| {
                    &acc + &(&self.coefficients[r - c] * &v[c])
                })
            })
            .collect()
    }
}

/// `E(arg) = sum phi_{-i}(arg) Theta^i` (plus) or `E(-arg) = sum (-1)^i phi_i(arg) Theta^i` (minus).
pub fn exp_series_at(direction: Direction, size: usize, arg: &Poly) -> Result<NilpotentSeries> {
    if size < 1 {
        return Err(Error::out_of_range("series size must be >= 1"));
    }
    let coefficients = (0..size as i64)
        .map(|i| {
            let c = match direction {
                Direction::Plus => phi(i, Direction::Minus)?,
                Direction::Minus => phi(i, Direction::Plus)?.scale(&int(if i % 2 == 0 { 1 } else { -1 })),
            };
            c.substitute(std::slice::from_ref(arg))
        })
        .collect::<Result<Vec<_>>>()?;
    NilpotentSeries::new(size, arg.nvars(), coefficients)
}

/// `E` or `E_-` in the single variable `x1`.
pub fn exp_series(direction: Direction, size: usize) -> Result<NilpotentSeries> {
    exp_series_at(direction, size, &Polynomial::var(1, 0))
}

/// `Lambda = sum (-1)^i phi_i Theta^i`.
pub fn lambda_matrix(size: usize) -> Result<NilpotentSeries> {
    exp_series(Direction::Minus, size)
}

/// `Lambda^{-1} = sum phi_{-i} Theta^i`.
pub fn lambda_inverse(size: usize) -> Result<NilpotentSeries> {
    exp_series(Direction::Plus, size)
}

/// The two alternating sums of products `phi_i phi_{-j}` with `i + j = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingSums {
    pub unbounded: Poly,
    pub bounded: Poly,
}

impl VanishingSums {
    pub fn holds(&self) -> bool {
        self.unbounded.is_zero() && self.bounded.is_zero()
    }
}

/// Evaluates `sum_{i+j=k} (-1)^i phi_i phi_{-j}` over all `i, j >= 0`, and
/// again with `i, j <= n`. The unbounded sum vanishes for every `k >= 1`;
/// the bounded one agrees with it when `k <= n` and is empty when `k > 2n`.
pub fn vanishing_sums(k: i64, n: i64) -> Result<VanishingSums> {
    if k < 1 || n < 1 {
        return Err(Error::out_of_range("k and n must be >= 1"));
    }
    let mut unbounded = Polynomial::zero(1);
    let mut bounded = Polynomial::zero(1);
    for i in 0..=k {
        let j = k - i;
        let t = (&phi(i, Direction::Plus)? * &phi(j, Direction::Minus)?).scale(&int(if i % 2 == 0 { 1 } else { -1 }));
        // the first displayed form carries (-1)^k (-1)^j = (-1)^i, the same sign
        if i <= n && j <= n {
            bounded = &bounded + &t;
        }
        unbounded = &unbounded + &t;
    }
    Ok(VanishingSums { unbounded, bounded })
}

pub fn check_vanishing_sums(k: i64, n: i64) -> Result<bool> {
    Ok(vanishing_sums(k, n)?.holds())
}

/// `Lambda^{-1} Phi` with `Phi_i = (-1)^i phi_{i+1}`, `i = 1..size`.
pub fn eta_vector(size: usize) -> Result<Vec<Poly>> {
    let phi_vec = (1..=size as i64)
        .map(|i| Ok(phi(i + 1, Direction::Plus)?.scale(&int(if i % 2 == 0 { 1 } else { -1 }))))
        .collect::<Result<Vec<_>>>()?;
    Ok(lambda_inverse(size)?.apply_to(&phi_vec))
}

/// Closed form of entry `i` (1-based) of [`eta_vector`]: `-i * phi_{-i-1}(x + 1)`.
pub fn eta_closed_form(i: i64) -> Result<Poly> {
    Ok(shift_inverse(&phi(i + 1, Direction::Minus)?).scale(&int(-i)))
}

pub fn check_eta(size: usize) -> Result<bool> {
    let v = eta_vector(size)?;
    for (idx, e) in v.iter().enumerate() {
        if *e != eta_closed_form(idx as i64 + 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(1 - sigma) E = Theta sigma(E)` at the given size.
pub fn check_difference_equation(size: usize) -> Result<bool> {
    let e = exp_series(Direction::Plus, size)?;
    let sigma_e = e.map(shift);
    Ok(e.sub(&sigma_e) == sigma_e.theta_shift())
}

/// `E(x1) E(x2) = E(x1 + x2)` in two variables.
pub fn check_power_law(size: usize) -> Result<bool> {
    let x1 = Polynomial::var(2, 0);
    let x2 = Polynomial::var(2, 1);
    let lhs = exp_series_at(Direction::Plus, size, &x1)?.mul(&exp_series_at(Direction::Plus, size, &x2)?);
    let rhs = exp_series_at(Direction::Plus, size, &(&x1 + &x2))?;
    Ok(lhs == rhs)
}

/// The pointwise identities relating the two factorial families, for `1 <= i <= max`.
pub fn check_phi_identities(max: i64) -> Result<bool> {
    let neg_x = [-Polynomial::var(1, 0)];
    for i in 1..=max {
        let plus = phi(i, Direction::Plus)?;
        let minus = phi(i, Direction::Minus)?;
        let sign = int(if i % 2 == 0 { 1 } else { -1 });
        let ok = &plus - &shift(&plus) == phi(i - 1, Direction::Plus)?
            && &minus - &shift(&minus) == shift(&phi(i - 1, Direction::Minus)?)
            && minus.substitute(&neg_x)? == plus.scale(&sign)
            && (1..i).fold(plus.clone(), |p, _| shift(&p)) == minus;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of the change of basis from `1, x, ..., x^d` to `phi_0, ..., phi_d`.
pub fn change_of_basis_rank(d: i64, direction: Direction) -> Result<usize> {
    let rows = (0..=d)
        .map(|i| {
            let p = phi(i, direction)?;
            Ok((0..=d)
                .map(|e| p.coefficient(&crate::poly::Monomial::from_exponents(vec![e as u32])))
                .collect())
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    Ok(crate::linalg::matrix_rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn small_phis() {
        assert_eq!(phi(0, Direction::Plus).unwrap(), parse("1", 1).unwrap());
        assert_eq!(phi(0, Direction::Minus).unwrap(), parse("1", 1).unwrap());
        assert_eq!(phi(2, Direction::Minus).unwrap(), parse("1/2*x1^2 - 1/2*x1", 1).unwrap());
        assert_eq!(phi(2, Direction::Plus).unwrap(), parse("1/2*x1^2 + 1/2*x1", 1).unwrap());
        assert_eq!(phi_signed(-3), phi(3, Direction::Minus).unwrap());
        assert!(phi(-1, Direction::Plus).is_err());
        assert_eq!(phi_in(1, Direction::Plus, 3).unwrap(), parse("x1", 3).unwrap());
    }

    #[test]
    fn phi_family_identities() {
        assert!(check_phi_identities(20).unwrap());
        for d in [0, 5, 20] {
            assert_eq!(change_of_basis_rank(d, Direction::Plus).unwrap(), d as usize + 1);
            assert_eq!(change_of_basis_rank(d, Direction::Minus).unwrap(), d as usize + 1);
        }
    }

    #[test]
    fn exponentials_are_mutually_inverse() {
        for size in 1..=10 {
            let e = exp_series(Direction::Plus, size).unwrap();
            let em = exp_series(Direction::Minus, size).unwrap();
            assert!(e.mul(&em).is_identity());
            assert!(em.mul(&e).is_identity());
            assert!(lambda_matrix(size).unwrap().mul(&lambda_inverse(size).unwrap()).is_identity());
            assert!(check_difference_equation(size).unwrap());
        }
        assert_eq!(exp_series(Direction::Plus, 3).unwrap().coefficient(1), &parse("x1", 1).unwrap());
        assert!(exp_series(Direction::Plus, 0).is_err());
    }

    #[test]
    fn lambda_is_unit_lower_triangular() {
        let l = lambda_matrix(4).unwrap();
        for i in 0..4 {
            assert_eq!(l.entry(i, i), Polynomial::one(1));
            for j in i + 1..4 {
                assert!(l.entry(i, j).is_zero());
            }
        }
    }

    #[test]
    fn vanishing_sums_small_cases() {
        assert!(check_vanishing_sums(1, 1).unwrap());
        assert!(check_vanishing_sums(3, 3).unwrap());
        // with both indices capped at n the sum only vanishes for k <= n (or k > 2n)
        let s = vanishing_sums(2, 1).unwrap();
        assert!(s.unbounded.is_zero());
        assert_eq!(s.bounded, parse("-x1^2", 1).unwrap());
        assert!(check_vanishing_sums(3, 1).unwrap());
    }

    #[test]
    fn eta_entries() {
        let v = eta_vector(3).unwrap();
        assert_eq!(v[0], parse("-1/2*x1^2 - 1/2*x1", 1).unwrap());
        assert_eq!(v[1], shift_inverse(&phi(3, Direction::Minus).unwrap()).scale(&int(-2)));
        for size in 1..=10 {
            assert!(check_eta(size).unwrap());
        }
    }

    #[test]
    fn power_law() {
        for size in 1..=8 {
            assert!(check_power_law(size).unwrap());
        }
    }

    #[test]
    fn series_shape_checks() {
        assert!(NilpotentSeries::new(2, 1, vec![Polynomial::one(1); 3]).is_err());
        assert!(NilpotentSeries::new(2, 1, vec![Polynomial::one(2)]).is_err());
        let s = NilpotentSeries::identity(3, 1).theta_shift();
        assert_eq!(s.coefficient(1), &Polynomial::one(1));
        assert!(s.theta_shift().theta_shift().coefficients().iter().all(Polynomial::is_zero));
    }
}
