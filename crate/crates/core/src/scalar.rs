//! Coefficient types.
//!
//! Everything in the polynomial layer is generic over [`Scalar`]; the
//! invariant-theory modules fix the scalar to the exact [`Rational`] type.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// Exact rationals over arbitrary-precision integers.
pub type Rational = BigRational;

/// A field of characteristic zero usable as a polynomial coefficient.
///
/// Blanket-implemented for every numeric type with the right operations, so
/// `f64` works for quick numerical experiments while all checks in this crate
/// use [`Rational`].
pub trait Scalar:
    Num + Clone + Debug + Display + FromPrimitive + std::ops::Neg<Output = Self> + Send + Sync
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every i64 embeds in a characteristic-zero field")
    }
}

impl<T> Scalar for T where
    T: Num + Clone + Debug + Display + FromPrimitive + std::ops::Neg<Output = T> + Send + Sync
{
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Binomial coefficient with `C(a, b) = 0` unless `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i64 = 1;
    for t in 0..b {
        acc = acc * (a - t) / (t + 1);
    }
    acc
}

/// Exact binomial for large arguments.
pub fn binomial_big(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::from(0);
    }
    let b = b.min(a - b);
    let mut acc = BigInt::from(1);
    for t in 0..b {
        acc = acc * BigInt::from(a - t) / BigInt::from(t + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

/// `-1` raised to `e`.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `"a/b"` with `b >= 1`, always including the denominator.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(a, b))
        }
        None => Some(Rational::from_integer(text.parse().ok()?)),
    }
}

pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}
