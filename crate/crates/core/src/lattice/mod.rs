//! Rank-two charge lattice: classes, charges, norms and support checks.

mod charge;
mod inner;
mod kclass;
pub mod phase;
pub mod seminorm;
pub mod support;

pub use charge::Charge;
pub use inner::{norm_kclass, operator_norm, InnerProduct};
pub use kclass::KClass;
pub use seminorm::{seminorm_sigma, Family, SeminormValue};
pub use support::{check_support_quadratic_form, support_infimum, SupportReport};


#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("support constant must be positive, got {0}")]
    NonPositiveConstant(f64),
}
