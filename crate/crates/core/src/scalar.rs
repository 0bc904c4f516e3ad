//! Scalar abstractions.
//!
//! Floating-point code is written against [`Real`] (implemented for `f32` and
//! `f64`). Dense linear algebra is written against [`Field`], which also
//! covers complex numbers, big rationals and the cyclotomic fields used for
//! exact Kasteleyn determinants.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::Cyclotomic;

/// Real floating-point scalar.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A field in which Gaussian elimination can be carried out.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Score used for pivot selection; larger is preferred, zero is unusable.
    fn pivot_score(&self) -> f64;
}

impl Field for f32 {
    fn pivot_score(&self) -> f64 {
        f64::from(self.abs())
    }
}

impl Field for f64 {
    fn pivot_score(&self) -> f64 {
        self.abs()
    }
}

impl<T: Real> Field for Complex<T> {
    fn pivot_score(&self) -> f64 {
        self.norm().to_f64_lossy()
    }
}

impl Field for BigRational {
    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Field for Cyclotomic {
    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

/// Scalars that can host Kasteleyn weights: powers of `ω = exp(πi/L)` and
/// rational edge weights.
pub trait KasteleynScalar: Field {
    /// `ω^exponent` for `ω = exp(πi/l)`, if representable in this field.
    fn root_of_unity(exponent: i64, l: usize) -> Option<Self>;

    /// Embeds a rational number.
    fn from_ratio(r: &BigRational) -> Self;
}

fn sign_root<F: Field>(exponent: i64, l: usize) -> Option<F> {
    let e = exponent.rem_euclid(2 * l as i64);
    if e == 0 {
        Some(F::one())
    } else if e == l as i64 {
        Some(-F::one())
    } else {
        None
    }
}

impl KasteleynScalar for f64 {
    fn root_of_unity(exponent: i64, l: usize) -> Option<Self> {
        sign_root(exponent, l)
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T: Real> KasteleynScalar for Complex<T> {
    fn root_of_unity(exponent: i64, l: usize) -> Option<Self> {
        let e = exponent.rem_euclid(2 * l as i64);
        let angle = T::PI() * T::lit(e as f64) / T::lit(l as f64);
        Some(Complex::from_polar(T::one(), angle))
    }

    fn from_ratio(r: &BigRational) -> Self {
        Complex::new(T::lit(r.to_f64().unwrap_or(f64::NAN)), T::zero())
    }
}

impl KasteleynScalar for BigRational {
    fn root_of_unity(exponent: i64, l: usize) -> Option<Self> {
        sign_root(exponent, l)
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
}

impl KasteleynScalar for Cyclotomic {
    fn root_of_unity(exponent: i64, l: usize) -> Option<Self> {
        Some(Cyclotomic::root_power(2 * l as u32, exponent))
    }

    fn from_ratio(r: &BigRational) -> Self {
        Cyclotomic::from_rational(r.clone())
    }
}

/// Small helpers for exact arithmetic.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
