//! Scalar abstraction for the linear-programming and scheduling code.
//!
//! Exact rationals are the default everywhere a tight-constraint argument
//! matters; the float impls exist for quick experiments and carry a fixed
//! absolute tolerance.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive};
use std::fmt::{Debug, Display};

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Zero test used for tightness and pivot decisions.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn is_integral(&self) -> bool;

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    fn is_zero_or_one(&self) -> bool {
        self.is_negligible() || self.approx_eq(&Self::one())
    }

    /// `self >= other`, up to the scalar's tolerance.
    fn ge_tol(&self, other: &Self) -> bool {
        self >= other || self.approx_eq(other)
    }
}

impl Scalar for BigRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }

            fn is_negligible(&self) -> bool {
                self.abs() <= $tol
            }

            fn is_integral(&self) -> bool {
                (self - self.round()).abs() <= $tol
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);

/// `numer / denom` as an exact rational.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::from_ratio(numer, denom)
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

pub(crate) fn half() -> BigRational {
    Ratio::new(BigInt::one(), BigInt::from(2))
}
