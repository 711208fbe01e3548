//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar.
#[inline(always)]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// `max(x, 0)`.
#[inline(always)]
pub fn pos<T: Real>(x: T) -> T {
    if x > T::zero() {
        x
    } else {
        T::zero()
    }
}

/// `x^e` for `x >= 0`, with `0^e = 0` for every `e > 0`.
///
/// Integer exponents go through `powi`, which keeps the hot loops of the
/// solver away from `exp(e ln x)` for the common m = 2, p = 3 style cases.
#[inline]
pub fn pow_nonneg<T: Real>(x: T, e: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if let Some(k) = small_integer(e) {
        return x.powi(k);
    }
    (e * x.ln()).exp()
}

/// `|g|^(p-1) g`, the odd power used by the degenerate flux.
#[inline]
pub fn signed_pow<T: Real>(g: T, p: T) -> T {
    if g == T::zero() {
        return T::zero();
    }
    let a = pow_nonneg(g.abs(), p);
    if g > T::zero() {
        a
    } else {
        -a
    }
}

#[inline(always)]
fn small_integer<T: Real>(e: T) -> Option<i32> {
    if e.abs() <= lit(16.0) && e == e.round() {
        e.to_i32()
    } else {
        None
    }
}

/// Relative closeness used for threshold comparisons in the classifier.
#[inline]
pub fn rel_eq<T: Real>(a: T, b: T, tol: T) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= tol * scale
}
