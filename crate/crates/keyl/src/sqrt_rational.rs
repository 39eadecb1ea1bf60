//! Signed square roots of rationals, the exact carrier for CG coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::scalar::ratio_to_f64;

/// Decimal digits kept by [`sqrt_approx`]; sums of distinct radicands are
/// evaluated at this precision.
pub const WORKING_DIGITS: u32 = 64;

/// The value sign · √radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    sign: i8,
    radicand: BigRational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational { sign: 0, radicand: BigRational::zero() }
    }

    pub fn one() -> Self {
        SqrtRational { sign: 1, radicand: BigRational::one() }
    }

    /// sign · √radicand; `radicand` must be nonnegative.
    pub fn new(sign: i8, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand {radicand}");
        if sign == 0 || radicand.is_zero() {
            Self::zero()
        } else {
            SqrtRational { sign: sign.signum(), radicand }
        }
    }

    /// +√r.
    pub fn sqrt(r: BigRational) -> Self {
        Self::new(1, r)
    }

    /// Embeds a rational exactly.
    pub fn from_rational(v: &BigRational) -> Self {
        let sign = match v.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        Self::new(sign, v * v)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// |x|².
    pub fn square(&self) -> BigRational {
        self.radicand.clone()
    }

    /// x·|x|, which keeps the sign and is rational.
    pub fn signed_square(&self) -> BigRational {
        if self.sign < 0 {
            -self.radicand.clone()
        } else {
            self.radicand.clone()
        }
    }

    pub fn abs(&self) -> Self {
        Self::new(self.sign.abs(), self.radicand.clone())
    }

    /// Exact value when the radicand is a perfect square.
    pub fn to_rational(&self) -> Option<BigRational> {
        let n = exact_sqrt(self.radicand.numer())?;
        let d = exact_sqrt(self.radicand.denom())?;
        let v = BigRational::new(n, d);
        Some(if self.sign < 0 { -v } else { v })
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * ratio_to_f64(&self.radicand).sqrt()
    }

    /// Rational approximation with absolute error below 10^-WORKING_DIGITS.
    pub fn approx(&self) -> BigRational {
        let a = sqrt_approx(&self.radicand);
        if self.sign < 0 {
            -a
        } else {
            a
        }
    }
}

fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// floor(√r · 10^D) / 10^D with D = WORKING_DIGITS.
pub fn sqrt_approx(r: &BigRational) -> BigRational {
    assert!(!r.is_negative(), "negative radicand {r}");
    let scale = BigInt::from(10u32).pow(WORKING_DIGITS);
    let scaled = r.numer() * &scale * &scale / r.denom();
    BigRational::new(scaled.sqrt(), scale)
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;

    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        SqrtRational::new(self.sign * rhs.sign, &self.radicand * &rhs.radicand)
    }
}

impl Mul for SqrtRational {
    type Output = SqrtRational;

    fn mul(self, rhs: SqrtRational) -> SqrtRational {
        &self * &rhs
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;

    fn neg(self) -> SqrtRational {
        SqrtRational { sign: -self.sign, radicand: self.radicand }
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let s = if self.sign < 0 { "-" } else { "" };
        match self.to_rational() {
            Some(v) => write!(f, "{}", v),
            None => write!(f, "{s}√({})", self.radicand),
        }
    }
}

impl Serialize for SqrtRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SqrtRational", 2)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("radicand", &crate::report::RationalJson::from(&self.radicand))?;
        st.end()
    }
}
