use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::phase::MASS_TOL;
use super::KClass;
use crate::lattice::Charge;

/// Relative slack for the Cauchy test on truncated families.
pub const CAUCHY_SLACK: f64 = 1e-6;

/// Value of a generalised semi-norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeminormValue {
    Finite(f64),
    Infinite,
}

impl SeminormValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            SeminormValue::Finite(v) => Some(v),
            SeminormValue::Infinite => None,
        }
    }

    pub fn lt(self, bound: f64) -> bool {
        matches!(self, SeminormValue::Finite(v) if v < bound)
    }
}

impl Serialize for SeminormValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SeminormValue::Finite(v) => s.serialize_f64(crate::scalar::round6(*v)),
            SeminormValue::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Whether a list of stables is the full set or a truncation of an infinite
/// family (ordered by increasing truncation index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete,
    Truncated,
}

/// `sup |U(s)| / |Z(s)|` over the massive entries.
///
/// An empty massive set gives 0. For a truncated family the running supremum
/// must be Cauchy over the second half of the list, otherwise the value is
/// reported as infinite.
pub fn seminorm_sigma(u: &Charge<f64>, massive_stables: &[(KClass, Complex64)], family: Family) -> SeminormValue {
    let mut running = Vec::with_capacity(massive_stables.len());
    let mut sup = 0.0f64;
    for (class, z) in massive_stables {
        let m = z.norm();
        if m <= MASS_TOL {
            continue;
        }
        sup = sup.max(u.eval(*class).norm() / m);
        running.push(sup);
    }
    match family {
        Family::Complete => SeminormValue::Finite(sup),
        Family::Truncated => {
            if running_is_cauchy(&running) {
                SeminormValue::Finite(sup)
            } else {
                SeminormValue::Infinite
            }
        }
    }
}

/// Cauchy test over the last half of a monotone running sequence.
pub fn running_is_cauchy(running: &[f64]) -> bool {
    let n = running.len();
    if n < 2 {
        return true;
    }
    let last = running[n - 1];
    let mid = running[n / 2];
    (last - mid).abs() <= CAUCHY_SLACK * last.abs().max(f64::MIN_POSITIVE)
}
