use serde::Serialize;

use super::{slicing_distance, Point, SlicingError};
use crate::drivers::CategoryModel;
use crate::lattice::{seminorm_sigma, SeminormValue};

/// Default radius for balls and deformation checks.
pub const DEFAULT_EPS: f64 = 1.0 / 16.0;

#[derive(Clone, Debug, Serialize)]
pub struct BallReport {
    pub distance: f64,
    pub seminorm: SeminormValue,
    pub bound: f64,
    pub member: bool,
}

/// Whether `tau` lies in the semi-norm ball `B_eps(sigma)`: the slicings are
/// `eps`-close and `||W - Z||_sigma < sin(pi eps)`.
pub fn in_beps<D: CategoryModel + ?Sized>(
    d: &D,
    sigma: &Point,
    tau: &Point,
    eps: f64,
    depth: u32,
) -> Result<BallReport, SlicingError> {
    if !(eps > 0.0 && eps < 0.125) {
        return Err(SlicingError::EpsOutOfRange(eps));
    }
    let distance = slicing_distance(d, sigma, tau, depth)?;
    let diff = tau.charge.clone() - sigma.charge.clone();
    let seminorm = seminorm_sigma(&diff, &sigma.massive_stables(), sigma.family());
    let bound = (std::f64::consts::PI * eps).sin();
    Ok(BallReport { distance, seminorm, bound, member: distance < eps && seminorm.lt(bound) })
}
