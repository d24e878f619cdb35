//! Stability-space scanning for rank-two triangulated categories.

pub mod drivers;
pub mod lattice;
pub mod orbit;
pub mod scalar;
pub mod scanner;
pub mod slicing;
pub mod walks;

pub use lattice::{Charge, InnerProduct, KClass, LatticeError};
pub use num_complex::Complex64;
pub use scalar::{Rational, Scalar};

/// Charge with exact Gaussian-rational values.
pub type ExactCharge = Charge<Rational>;
/// Double-precision charge.
pub type Charge64 = Charge<f64>;
/// Single-precision charge.
pub type Charge32 = Charge<f32>;
