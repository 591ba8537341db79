use std::fmt::Debug;

use num_traits::{Float, FloatConst};

/// Real scalar the simulator is generic over.
pub trait Scalar: Float + FloatConst + Debug + Default + Send + Sync + 'static {
    /// Absolute tolerance for exactness checks at this precision.
    fn tolerance() -> Self;

    /// Probabilities at or above `-clamp_floor()` are rounding noise and get clamped to zero.
    fn clamp_floor() -> Self;

    fn from_f64(value: f64) -> Self {
        <Self as num_traits::NumCast>::from(value).expect("finite f64 converts to every float")
    }

    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).expect("float converts to f64")
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-12
    }

    fn clamp_floor() -> Self {
        1e-15
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }

    fn clamp_floor() -> Self {
        1e-6
    }
}
