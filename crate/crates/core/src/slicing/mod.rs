//! Stability and lax stability points over a driver.

mod balls;
mod deformation;
mod lax;
mod metric;
mod point;

pub use balls::{in_beps, DEFAULT_EPS};
pub use deformation::{verify_normal_deformation, DeformationReport};
pub use lax::{degenerate_limit, massless_generator, mu_n, quotient_distance, rho_n, MasslessStratumCoords, QuotientDatum};
pub use metric::{act, phase_range, slicing_distance};
pub use point::{make_point, make_point_in_window, make_point_near, mass_of, Point, PhaseEntry};

/// A classical point: every stable is massive.
pub type StabilityPoint = Point;
/// A point whose massless set may be non-empty.
pub type LaxPoint = Point;

use crate::drivers::DriverError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SlicingError {
    #[error("charge puts two stable phases on a wall ({0} and {1})")]
    ChargeOnWall(String, String),
    #[error("charge of simple {0} lies outside the heart window")]
    ChargeOutsideHeart(String),
    #[error("charge vanishes on stable {0}")]
    DegenerateCharge(String),
    #[error("unreachable stratum: {0}")]
    UnreachableStratum(String),
    #[error("point has no massless objects")]
    NoMassless,
    #[error("massless set has rank two; only the massless phase is defined")]
    RankTwoMassless,
    #[error("epsilon {0} outside (0, 1/8)")]
    EpsOutOfRange(f64),
    #[error("semi-norm {norm} violates the bound {bound}")]
    NormBound { norm: f64, bound: f64 },
    #[error("no heart near the lax point realises the deformed charge")]
    Unrealizable,
    #[error("points come from different drivers ({0} and {1})")]
    DriverMismatch(String, String),
    #[error(transparent)]
    Driver(#[from] DriverError),
}
