//! Scalar abstraction shared by the numeric and exact code paths.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Field-like scalar usable for spectra, Schur polynomials and expectations.
///
/// Exact code uses [`BigRational`]; `f32`/`f64` give fast approximate runs.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_ratio(q: &BigRational) -> Self;

    fn from_int(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Slack allowed when checking normalizations; zero for exact types.
    fn tolerance() -> Self;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powi(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for BigRational {
    fn from_ratio(q: &BigRational) -> Self {
        q.clone()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Scalar for f64 {
    fn from_ratio(q: &BigRational) -> Self {
        ratio_to_f64(q)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn from_ratio(q: &BigRational) -> Self {
        ratio_to_f64(q) as f32
    }

    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn tolerance() -> Self {
        1e-5
    }
}

/// Converts a big rational to the nearest representable `f64` (up to rounding of the quotient).
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale down huge operands before dividing.
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Shorthand for an integer-valued rational.
pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Shorthand for `num/den`.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
