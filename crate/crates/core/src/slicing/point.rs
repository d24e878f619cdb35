use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::Serialize;

use super::SlicingError;
use crate::drivers::{CategoryModel, Cell, Heart, ObjectId};
use crate::lattice::phase::{lift_after, nearest_lift, phase_eq, raw_phase, MASS_TOL, TOL_PHASE};
use crate::lattice::seminorm::Family;
use crate::lattice::{Charge, KClass};

/// A stable object with its phase. `id.shift` is chosen so that the phase
/// lies in the cell window `[phi(lower), phi(lower) + 1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseEntry {
    pub id: ObjectId,
    pub class: KClass,
    pub phase: f64,
    pub mass: f64,
}

/// A (lax) stability point: a heart, a charge, the cell it determines and
/// the phases of the cell's stables. Massless stables keep the phase they
/// had before degenerating.
#[derive(Clone, Debug, Serialize)]
pub struct Point {
    pub driver: String,
    pub heart: Heart,
    /// Phases of the two heart simples.
    pub simple_phases: [f64; 2],
    pub cell: Cell,
    pub chamber: String,
    pub charge: Charge<f64>,
    pub phases: Vec<PhaseEntry>,
    pub massless: BTreeSet<String>,
}

impl Point {
    pub fn is_classical(&self) -> bool {
        self.massless.is_empty()
    }

    pub fn entry(&self, name: &str) -> Option<&PhaseEntry> {
        self.phases.iter().find(|e| e.id.name == name)
    }

    /// Phase of a stable object at any shift.
    pub fn phase_of(&self, x: &ObjectId) -> Option<f64> {
        self.entry(&x.name).map(|e| e.phase + (x.shift - e.id.shift) as f64)
    }

    pub fn stable_names(&self) -> BTreeSet<String> {
        self.phases.iter().map(|e| e.id.name.clone()).collect()
    }

    /// Massive stables as `(class, charge)`, ordered as in the cell.
    pub fn massive_stables(&self) -> Vec<(KClass, Complex64)> {
        self.phases
            .iter()
            .filter(|e| !self.massless.contains(&e.id.name))
            .map(|e| (e.class, self.charge.eval(e.class)))
            .collect()
    }

    pub fn family(&self) -> Family {
        if self.cell.complete {
            Family::Complete
        } else {
            Family::Truncated
        }
    }

    /// Start of a window `(w, w + 1]` containing both simple phases.
    pub fn window(&self) -> f64 {
        self.simple_phases[0].max(self.simple_phases[1]) - 1.0
    }

    /// JSON under `stability-point.v1`.
    pub fn to_json(&self) -> serde_json::Value {
        use crate::scalar::round6;
        let phases: serde_json::Map<String, serde_json::Value> = self
            .phases
            .iter()
            .map(|e| (e.id.to_string(), serde_json::json!(round6(e.phase))))
            .collect();
        let massless: Vec<_> = self
            .phases
            .iter()
            .filter(|e| self.massless.contains(&e.id.name))
            .map(|e| serde_json::json!({"id": e.id.to_string(), "psi": round6(e.phase)}))
            .collect();
        serde_json::json!({
            "schema": "stability-point.v1",
            "driver": self.driver,
            "chamber_key": self.cell.key,
            "chamber": self.chamber,
            "heart": self.heart.to_string(),
            "charge": self.charge,
            "phases": phases,
            "massless": massless,
        })
    }
}

/// Point with heart `h` whose simples have phases in `(0, 1]`.
pub fn make_point<D: CategoryModel + ?Sized>(d: &D, h: &Heart, z: &Charge<f64>) -> Result<Point, SlicingError> {
    make_point_in_window(d, h, z, 0.0)
}

/// Point with heart `h` whose simples have phases in `(w, w + 1]`.
pub fn make_point_in_window<D: CategoryModel + ?Sized>(
    d: &D,
    h: &Heart,
    z: &Charge<f64>,
    w: f64,
) -> Result<Point, SlicingError> {
    let mut ph = [0.0; 2];
    for (i, slot) in ph.iter_mut().enumerate() {
        let zc = nonzero(z, h.classes[i], &h.simples[i])?;
        *slot = lift_after(zc, w);
        if *slot > w + 1.0 + TOL_PHASE {
            return Err(SlicingError::ChargeOutsideHeart(h.simples[i].to_string()));
        }
    }
    build(d, h, z, ph)
}

/// Point with heart `h` whose simple phases are the lifts nearest to
/// `reference`. Used to follow a path of charges continuously.
pub fn make_point_near<D: CategoryModel + ?Sized>(
    d: &D,
    h: &Heart,
    z: &Charge<f64>,
    reference: [f64; 2],
) -> Result<Point, SlicingError> {
    let mut ph = [0.0; 2];
    for i in 0..2 {
        let zc = nonzero(z, h.classes[i], &h.simples[i])?;
        ph[i] = nearest_lift(zc, reference[i]);
    }
    if (ph[0] - ph[1]).abs() >= 1.0 - TOL_PHASE {
        let worst = if (ph[0] - reference[0]).abs() > (ph[1] - reference[1]).abs() { 0 } else { 1 };
        return Err(SlicingError::ChargeOutsideHeart(h.simples[worst].to_string()));
    }
    build(d, h, z, ph)
}

fn nonzero(z: &Charge<f64>, c: KClass, x: &ObjectId) -> Result<Complex64, SlicingError> {
    let v = z.eval(c);
    if v.norm() <= MASS_TOL {
        Err(SlicingError::DegenerateCharge(x.to_string()))
    } else {
        Ok(v)
    }
}

fn build<D: CategoryModel + ?Sized>(d: &D, h: &Heart, z: &Charge<f64>, ph: [f64; 2]) -> Result<Point, SlicingError> {
    if phase_eq(ph[0], ph[1]) {
        return Err(SlicingError::ChargeOnWall(h.simples[0].to_string(), h.simples[1].to_string()));
    }
    let lower = if ph[0] < ph[1] { 0 } else { 1 };
    let cell = d.cell_of(h, lower)?;
    let start = ph[lower];
    let mut phases: Vec<PhaseEntry> = Vec::with_capacity(cell.stables.len());
    for s in &cell.stables {
        let base = d.kclass_of(&ObjectId::new(s.name.clone(), 0))?;
        let zc = nonzero(z, base, s)?;
        let p0 = raw_phase(zc);
        let m = (start - p0 - TOL_PHASE).ceil() as i64;
        let id = ObjectId::new(s.name.clone(), m);
        phases.push(PhaseEntry { class: base.shifted(m), phase: p0 + m as f64, mass: zc.norm(), id });
    }
    for (i, a) in phases.iter().enumerate() {
        for b in &phases[i + 1..] {
            if phase_eq(a.phase, b.phase) {
                return Err(SlicingError::ChargeOnWall(a.id.to_string(), b.id.to_string()));
            }
        }
    }
    Ok(Point {
        driver: d.name().to_string(),
        heart: h.clone(),
        simple_phases: ph,
        chamber: d.chamber_label(&cell),
        cell,
        charge: z.clone(),
        phases,
        massless: BTreeSet::new(),
    })
}

/// Sum of the masses of the HN factors of `x`.
pub fn mass_of<D: CategoryModel + ?Sized>(d: &D, p: &Point, x: &ObjectId) -> Result<f64, SlicingError> {
    let f = d.hn_factors(x, &p.cell)?;
    let mut m = 0.0;
    for (y, k) in f {
        if p.massless.contains(&y.name) {
            continue;
        }
        m += k as f64 * p.charge.eval(d.kclass_of(&y)?).norm();
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drivers::{A2, P1};
    use std::f64::consts::SQRT_2;

    fn z(a: (f64, f64), b: (f64, f64)) -> Charge<f64> {
        Charge::from_parts(a, b)
    }

    #[test]
    fn a2_triple_chamber_phases() {
        let d = A2;
        let p = make_point(&d, &d.seed_heart(), &z((0.0, 1.0), (-1.0, 1.0))).unwrap();
        assert_eq!(p.chamber, "triple");
        assert!((p.phase_of(&ObjectId::new("s", 0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((p.phase_of(&ObjectId::new("t", 0)).unwrap() - 0.75).abs() < 1e-15);
        let e = (2.0f64).atan2(-1.0) / std::f64::consts::PI;
        assert!((p.phase_of(&ObjectId::new("e", 0)).unwrap() - e).abs() < 1e-15);
        assert!((mass_of(&d, &p, &ObjectId::new("e", 0)).unwrap() - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn a2_pair_chamber_mass() {
        let d = A2;
        let p = make_point(&d, &d.seed_heart(), &z((-1.0, 1.0), (0.0, 1.0))).unwrap();
        assert_eq!(p.chamber, "pair:s,t");
        assert!((mass_of(&d, &p, &ObjectId::new("e", 0)).unwrap() - (SQRT_2 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn equal_phases_are_on_a_wall() {
        let d = A2;
        let e = make_point(&d, &d.seed_heart(), &z((0.0, 1.0), (0.0, 1.0))).unwrap_err();
        assert!(matches!(e, SlicingError::ChargeOnWall(..)));
        let e = make_point(&d, &d.seed_heart(), &z((0.0, -1.0), (0.0, 1.0))).unwrap_err();
        assert!(matches!(e, SlicingError::ChargeOutsideHeart(..)));
    }

    #[test]
    fn geometric_p1_point() {
        let d = P1::new(6);
        // Z = -deg + i rk on the heart <O, O(-1)[1]>
        let zg = z((0.0, 1.0), (-1.0, 0.0));
        let p = make_point_near(&d, &d.seed_heart(), &zg, [0.5, 1.25]).unwrap();
        assert_eq!(p.chamber, "classical");
        assert!((p.phase_of(&ObjectId::new("O_x", 0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((p.phase_of(&ObjectId::new("O(-1)", 0)).unwrap() - 0.25).abs() < 1e-15);
        assert!(make_point(&d, &d.seed_heart(), &zg).is_err());
    }
}
