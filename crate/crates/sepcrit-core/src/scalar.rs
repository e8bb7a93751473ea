//! Scalar abstraction for the real component type of complex storage.

use num_traits::{Float, NumCast};

/// Real component type usable for tensor and matrix storage.
///
/// This is a trait alias in the usual pattern: a blanket impl makes every
/// qualifying type (in practice `f32` and `f64`) a `Real`, and downstream
/// code bounds on `T: Real` instead of repeating the full list.
pub trait Real: Float + NumCast + std::fmt::Debug + Send + Sync + 'static {}

impl<T> Real for T where T: Float + NumCast + std::fmt::Debug + Send + Sync + 'static {}

/// Converts an `f64` constant into `T`.
///
/// Panics if the value is not representable, which cannot happen for the
/// finite tolerances and small integers this crate feeds it.
pub fn real<T: Real>(x: f64) -> T {
    <T as NumCast>::from(x).expect("constant representable in scalar type")
}

/// Converts a `T` back to `f64` for reporting and diagnostics.
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().expect("scalar convertible to f64")
}
