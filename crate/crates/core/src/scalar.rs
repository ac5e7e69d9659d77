//! Scalar abstraction for the numeric core.
//!
//! Everything in this crate that does floating-point work is generic over
//! [`Real`], which in practice means `f32` or `f64`. Concrete aliases for the
//! `f64` instantiations live at the crate root. The exact-arithmetic hull
//! membership path uses [`crate::lp::LpScalar`] instead, which `BigRational`
//! also satisfies.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, Signed};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Signed
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for converting an `f64` literal into the working scalar.
#[inline]
pub fn r<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 converts into any Real")
}

/// Complex number over the working scalar.
pub type C<T> = Complex<T>;

/// Complex zero.
#[inline]
pub fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

/// Complex one.
#[inline]
pub fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

/// Real number lifted to a complex value.
#[inline]
pub fn cre<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

/// Default absolute tolerance for the working scalar.
///
/// `1e-9` at `f64`; widened for `f32`, where `1e-9` sits below machine
/// epsilon and would reject everything.
#[inline]
pub fn default_tol<T: Real>() -> T {
    let floor = T::epsilon() * r(100.0);
    let base: T = r(1e-9);
    if base > floor {
        base
    } else {
        floor
    }
}
