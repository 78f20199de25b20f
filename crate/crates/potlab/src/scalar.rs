//! Scalar abstraction: the whole crate is generic over the floating-point
//! type through this trait, with `f32`/`f64` as the intended instantiations.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable everywhere in the crate.
///
/// Blanket-implemented, so any type satisfying the bounds (in particular
/// `f32` and `f64`) qualifies.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` constant into the working scalar type.
///
/// Panics only if the scalar type cannot represent finite `f64` values at
/// all, which rules out every sensible instantiation.
#[inline]
pub fn cast<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("scalar type must represent f64 constants")
}

/// Euclidean utilities shared by the measure, operator and cube modules.
pub(crate) mod geom {
    use super::Scalar;

    #[inline]
    pub fn dist2<T: Scalar>(a: &[T], b: &[T]) -> T {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = T::zero();
        for (x, y) in a.iter().zip(b.iter()) {
            let d = *x - *y;
            acc = acc + d * d;
        }
        acc
    }

    #[inline]
    pub fn dist<T: Scalar>(a: &[T], b: &[T]) -> T {
        dist2(a, b).sqrt()
    }
}

/// Surface area of the unit sphere `S^{n-1}` in `R^n`.
///
/// `n = 1` gives 2 (two endpoints), `n = 2` gives `2*pi`, and the rest follow
/// the recursion `s(n) = 2*pi*s(n-2)/(n-2)`.
pub fn unit_sphere_area<T: Scalar>(n: usize) -> T {
    assert!(n >= 1, "sphere area needs dimension >= 1");
    let two_pi = cast::<T>(2.0 * std::f64::consts::PI);
    match n {
        1 => cast(2.0),
        2 => two_pi,
        _ => two_pi / cast::<T>((n - 2) as f64) * unit_sphere_area::<T>(n - 2),
    }
}
