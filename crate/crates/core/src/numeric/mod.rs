//! Floating-point building blocks shared by the numerical verifiers.

pub mod fit;
pub mod floatpoly;
pub mod quadrature;

pub use fit::{FitResult, Prediction};
pub use floatpoly::{EnclosurePoly, FloatPoly, Interval};
pub use quadrature::GaussLegendre;

/// Pairwise (tree) summation. The association order depends only on the length, so
/// the result does not depend on how the inputs were produced.
pub fn pairwise_sum<T: Copy + std::ops::Add<Output = T>>(xs: &[T], zero: T) -> T {
    match xs.len() {
        0 => zero,
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a, zero) + pairwise_sum(b, zero)
        }
    }
}
