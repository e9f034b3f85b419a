//! Scalar abstraction and logarithms of exact quantities.
//!
//! Everything that ends up as a real number (capacities, entropies, bounds)
//! is computed generically over [`Real`]. Exact inputs stay in `BigUint` /
//! `BigRational` until the final logarithm.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Floating point scalar used for every logged quantity: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + Default + 'static
{
    /// Converts an `f64` constant, which always succeeds for the supported types.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable")
    }

    /// Tolerance used where a contract states an absolute tolerance `tol` for
    /// `f64`; widened to a few ulps of one for lower-precision types.
    fn tol(tol: f64) -> Self {
        Self::c(tol).max(Self::epsilon() * Self::c(64.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Natural logarithm of a big unsigned integer.
///
/// Uses `(bits - 64) * ln 2 + ln(top 64 bits)`, which has relative error
/// well below `1e-12` for any size. Returns `-inf` for zero.
pub fn ln_big<T: Real>(x: &BigUint) -> T {
    if x.is_zero() {
        return T::neg_infinity();
    }
    let bits = x.bits();
    if bits <= 64 {
        let v = x.to_u64().expect("fits in 64 bits");
        return ln_u64(v);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let top = top.to_u64().expect("top 64 bits");
    ln_u64::<T>(top) + T::c(shift as f64) * T::LN_2()
}

// u64 -> f64 rounds at 2^-53 relative, far inside the 1e-12 budget.
fn ln_u64<T: Real>(v: u64) -> T {
    T::c((v as f64).ln())
}

/// Natural logarithm of a positive big rational.
pub fn ln_rational<T: Real>(x: &BigRational) -> T {
    assert!(x.is_positive(), "logarithm of non-positive rational");
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    ln_big::<T>(num) - ln_big::<T>(den)
}

/// Converts a big rational to the scalar type (via the ratio of logs when the
/// parts do not fit a float).
pub fn rational_to_real<T: Real>(x: &BigRational) -> T {
    if x.is_zero() {
        return T::zero();
    }
    if let Some(v) = x.to_f64() {
        if v.is_finite() && v != 0.0 {
            return T::c(v);
        }
    }
    let sign = if x.is_negative() { -T::one() } else { T::one() };
    sign * ln_rational::<T>(&x.abs()).exp()
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ln_big_small_and_large() {
        let x = BigUint::from(10u32);
        assert!((ln_big::<f64>(&x) - 10f64.ln()).abs() < 1e-15);

        // 3^200 has ~317 bits; compare with 200 ln 3.
        let big = num_traits::pow(BigUint::from(3u32), 200);
        let got = ln_big::<f64>(&big);
        let want = 200.0 * 3f64.ln();
        assert!(((got - want) / want).abs() < 1e-12, "{got} vs {want}");

        assert_eq!(ln_big::<f64>(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn ln_big_f32() {
        let x = BigUint::from(1u64 << 40);
        let got: f32 = ln_big(&x);
        assert!((got - 40.0 * std::f32::consts::LN_2).abs() < 1e-4);
    }

    #[test]
    fn rational_helpers() {
        let r = BigRational::new(BigInt::from(8), BigInt::from(5));
        assert!((ln_rational::<f64>(&r) - 1.6f64.ln()).abs() < 1e-15);
        assert!((rational_to_real::<f64>(&r) - 1.6).abs() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 1), BigUint::from(5u32));
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(0), BigUint::one());
    }
}
