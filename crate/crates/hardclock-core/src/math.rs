//! Float methods for `no_std` builds.
//!
//! `sqrt`, `hypot`, and friends are inherent `f64` methods only when std is
//! available; without it they come from the `libm` crate through this shim
//! trait. Modules import `FloatFuncs` under `cfg(not(feature = "std"))` so
//! the same call sites compile in both configurations.

#![allow(dead_code)]

#[cfg(not(feature = "std"))]
pub(crate) trait FloatFuncs: Sized {
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn hypot(self, other: Self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn floor(self) -> Self;
    fn ceil(self) -> Self;
    fn round(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, e: Self) -> Self;
}

#[cfg(not(feature = "std"))]
impl FloatFuncs for f64 {
    #[inline]
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    #[inline]
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    #[inline]
    fn hypot(self, other: f64) -> f64 {
        libm::hypot(self, other)
    }
    #[inline]
    fn sin(self) -> f64 {
        libm::sin(self)
    }
    #[inline]
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    #[inline]
    fn floor(self) -> f64 {
        libm::floor(self)
    }
    #[inline]
    fn ceil(self) -> f64 {
        libm::ceil(self)
    }
    #[inline]
    fn round(self) -> f64 {
        libm::round(self)
    }
    #[inline]
    fn powi(self, n: i32) -> f64 {
        // Exponentiation by squaring; exponents here are tiny.
        let mut base = if n < 0 { 1.0 / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = 1.0;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
    #[inline]
    fn powf(self, e: f64) -> f64 {
        libm::pow(self, e)
    }
}
