use num_complex::Complex64;

use super::{Point, SlicingError};
use crate::drivers::{CategoryModel, DriverError, ObjectId};
use crate::lattice::phase::{raw_phase, TOL_PHASE};

/// Phase of a stable `y` of the point's cell, computed from the charge when
/// `y` lies outside the listed truncation.
fn stable_phase<D: CategoryModel + ?Sized>(d: &D, p: &Point, y: &ObjectId) -> Result<f64, SlicingError> {
    if let Some(ph) = p.phase_of(y) {
        return Ok(ph);
    }
    let base = d.kclass_of(&ObjectId::new(y.name.clone(), 0))?;
    let start = p.simple_phases[0].min(p.simple_phases[1]);
    let p0 = raw_phase(p.charge.eval(base));
    let m = (start - p0 - TOL_PHASE).ceil();
    Ok(p0 + m + (y.shift as f64))
}

/// `(phi_plus, phi_minus)` of `x`: phases of its first and last HN factor.
pub fn phase_range<D: CategoryModel + ?Sized>(d: &D, p: &Point, x: &ObjectId) -> Result<(f64, f64), SlicingError> {
    let f = d.hn_factors(x, &p.cell)?;
    let first = f.first().ok_or_else(|| DriverError::Untracked(x.to_string()))?;
    let last = f.last().expect("non-empty");
    Ok((stable_phase(d, p, &first.0)?, stable_phase(d, p, &last.0)?))
}

/// Largest deviation of `phi_plus` and `phi_minus` over the objects tracked
/// at `depth`. Objects without an HN filtration in either cell are skipped,
/// so the value is a lower bound for the full metric.
pub fn slicing_distance<D: CategoryModel + ?Sized>(d: &D, p: &Point, q: &Point, depth: u32) -> Result<f64, SlicingError> {
    if p.driver != q.driver {
        return Err(SlicingError::DriverMismatch(p.driver.clone(), q.driver.clone()));
    }
    let mut dist = 0.0f64;
    let mut candidates = d.enumerate(depth);
    for e in p.phases.iter().chain(&q.phases) {
        let o = ObjectId::new(e.id.name.clone(), 0);
        if !candidates.contains(&o) {
            candidates.push(o);
        }
    }
    for x in candidates {
        let (a, b) = match (phase_range(d, p, &x), phase_range(d, q, &x)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(SlicingError::Driver(DriverError::Untracked(_))), _)
            | (_, Err(SlicingError::Driver(DriverError::Untracked(_)))) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        dist = dist.max((a.0 - b.0).abs()).max((a.1 - b.1).abs());
    }
    Ok(dist)
}

/// Action of `w` in C: phases shift by `Re w`, masses scale by
/// `exp(pi Im w)`, the charge is multiplied by `exp(i pi conj(w))`.
pub fn act(p: &Point, w: Complex64) -> Point {
    let pi = std::f64::consts::PI;
    let rot = (Complex64::new(0.0, pi) * w.conj()).exp();
    let scale = (pi * w.im).exp();
    let mut q = p.clone();
    q.charge = p.charge.rotate(rot);
    q.simple_phases = [p.simple_phases[0] + w.re, p.simple_phases[1] + w.re];
    for e in &mut q.phases {
        e.phase += w.re;
        e.mass *= scale;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drivers::{CategoryModel, A2};
    use crate::lattice::Charge;
    use crate::slicing::{make_point, mass_of};

    #[test]
    fn action_shifts_and_scales() {
        let d = A2;
        let p = make_point(&d, &d.seed_heart(), &Charge::from_parts((0.0, 1.0), (-1.0, 1.0))).unwrap();
        let w = Complex64::new(0.3, -0.2);
        let q = act(&p, w);
        assert_eq!(p.stable_names(), q.stable_names());
        for (a, b) in p.phases.iter().zip(&q.phases) {
            assert!((b.phase - a.phase - 0.3).abs() < 1e-12);
            assert!((b.mass / a.mass - (-0.2 * std::f64::consts::PI).exp()).abs() < 1e-12);
            // charge and stored phase agree
            let z = q.charge.eval(b.class);
            assert!((z.norm() - b.mass).abs() < 1e-12);
            let k = (b.phase - raw_phase(z)) / 2.0;
            assert!((k - k.round()).abs() < 1e-12);
        }
        let e = ObjectId::new("e", 0);
        assert!((mass_of(&d, &q, &e).unwrap() / mass_of(&d, &p, &e).unwrap() - (-0.2 * std::f64::consts::PI).exp()).abs() < 1e-12);
        let real = act(&p, Complex64::new(0.25, 0.0));
        assert!((slicing_distance(&d, &p, &real, 0).unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(slicing_distance(&d, &p, &p, 0).unwrap(), 0.0);
    }
}
