use serde::Serialize;

use crate::drivers::{CategoryModel, ObjectId, A2};
use crate::slicing::{mass_of, Point, SlicingError};

pub const REGION_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum ThurstonError {
    #[error("the mass map is defined for the a2 driver only, got {0}")]
    WrongDriver(String),
    #[error("all three masses vanish")]
    TotallyMassless,
    #[error(transparent)]
    Slicing(#[from] SlicingError),
}

/// `[m(s) : m(e) : m(t)]` normalised to sum 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MassVector(pub [f64; 3]);

impl MassVector {
    pub fn from_masses(m: [f64; 3]) -> Option<Self> {
        let total: f64 = m.iter().sum();
        (total > 0.0).then(|| MassVector(m.map(|x| x / total)))
    }
}

pub fn thurston_map_a2(p: &Point) -> Result<MassVector, ThurstonError> {
    if p.driver != A2.name() {
        return Err(ThurstonError::WrongDriver(p.driver.clone()));
    }
    let mut m = [0.0; 3];
    for (slot, name) in m.iter_mut().zip(["s", "e", "t"]) {
        *slot = mass_of(&A2, p, &ObjectId::new(name, 0))?;
    }
    MassVector::from_masses(m).ok_or(ThurstonError::TotallyMassless)
}

/// Closed triangle `x_i <= x_j + x_k` with at most one coordinate zero.
pub fn thurston_region_check(v: &MassVector) -> bool {
    let x = v.0;
    if x.iter().any(|&c| c < -REGION_TOL) || (x.iter().sum::<f64>() - 1.0).abs() > REGION_TOL {
        return false;
    }
    if x.iter().filter(|&&c| c.abs() <= REGION_TOL).count() > 1 {
        return false;
    }
    (0..3).all(|i| x[i] <= x[(i + 1) % 3] + x[(i + 2) % 3] + REGION_TOL)
}
