//! Floating-point scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used by the eigen solvers, quadrature and the density toolkit.
///
/// Implemented for `f32` and `f64`. Tolerances that the numeric code derives
/// from a fixed decimal target are floored at a small multiple of
/// [`Float::epsilon`] so that `f32` instantiations still terminate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Lift a literal into the scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// `max(target, factor * epsilon)`.
    fn tol(target: f64, factor: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(factor);
        let t = Self::lit(target);
        if t > floor {
            t
        } else {
            floor
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}
