//! Scalar abstraction shared by every numeric kernel.
//!
//! All kernels are generic over [`Real`], which bundles the `num-traits`
//! facilities they need. `f64` is the working precision; `f32` compiles and
//! is smoke-tested, but the documented tolerances assume double precision.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the toolkit can compute with.
pub trait Real:
    Float + FloatConst + FromPrimitive + core::fmt::Debug + core::fmt::Display + 'static
{
    /// Converts an `f64` literal. Panics only for values the target type
    /// cannot hold at all; finite literals always convert (with rounding
    /// for `f32`).
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// Central-difference step: eps^(1/3) scaled by max(1, |x|).
    fn cd_step(x: Self) -> Self {
        Self::epsilon().cbrt() * Self::one().max(x.abs())
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// sech(x) that degrades gracefully to 0 when cosh overflows.
pub fn sech<R: Real>(x: R) -> R {
    x.cosh().recip()
}
