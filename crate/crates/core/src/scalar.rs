//! Scalar bounds shared by every numeric routine in the crate.
//!
//! All amplitude-carrying code is written against [`Real`], so the same
//! lattice, kernels and propagators run in `f32` or `f64`. Exact counting
//! (dimensions, path numbers) lives in [`crate::dims`] and uses big integers
//! instead.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Absolute tolerance for normalization checks (`r² + t² = 1` and friends).
    ///
    /// `1e-12` in double precision; scaled machine epsilon for narrower types.
    #[inline]
    fn norm_tolerance() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(16.0))
    }

    /// Max-entry tolerance on `U†U − I` for transfer matrices.
    #[inline]
    fn unitarity_tolerance() -> Self {
        Self::lit(1e-10).max(Self::epsilon() * Self::lit(256.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex amplitude over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

/// `e^{iφ}`.
#[inline]
pub(crate) fn cis<T: Real>(phi: T) -> Cx<T> {
    Complex::new(phi.cos(), phi.sin())
}

/// `n!` as a floating value. Exact in `f64` up to `22!`.
pub(crate) fn factorial<T: Real>(n: u32) -> T {
    (2..=n).fold(T::one(), |acc, k| acc * T::from_u32(k).unwrap())
}

/// `√(N! / ∏ nₖ!)` accumulated as a product of binomial ratios so that large
/// photon numbers do not overflow before the division.
pub(crate) fn sqrt_multinomial<T: Real>(counts: &[u32]) -> T {
    let mut total = 0u32;
    let mut acc = T::one();
    for &n in counts {
        // C(total + n, n) built incrementally.
        for i in 1..=n {
            acc = acc * T::from_u32(total + i).unwrap() / T::from_u32(i).unwrap();
        }
        total += n;
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_real<T: Real>() {}

    #[test]
    fn both_widths_are_real() {
        assert_real::<f32>();
        assert_real::<f64>();
    }

    #[test]
    fn tolerance_per_width() {
        assert_eq!(f64::norm_tolerance(), 1e-12);
        assert!(f32::norm_tolerance() > 1e-7);
    }

    #[test]
    fn multinomial_small() {
        // 4! / (2! 1! 1!) = 12
        let v: f64 = sqrt_multinomial(&[2, 1, 1, 0]);
        assert!((v * v - 12.0).abs() < 1e-12);
        assert_eq!(sqrt_multinomial::<f64>(&[]), 1.0);
        assert_eq!(factorial::<f64>(5), 120.0);
    }
}
