//! Small self-contained numerical kernels used across the crate.

pub mod extrapolate;
pub mod polyfit;
pub mod quadrature;
pub mod roots;
pub mod sum;
pub mod tridiagonal;
