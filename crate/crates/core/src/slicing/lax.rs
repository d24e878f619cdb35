use num_integer::Integer;
use serde::Serialize;

use super::{Point, SlicingError};
use crate::drivers::{CategoryModel, ObjectId};
use crate::lattice::phase::{nearest_lift, MASS_TOL};
use crate::lattice::{Charge, KClass};

/// Send the charges of the `dying` heart simples to zero along their rays,
/// keeping every phase.
pub fn degenerate_limit<D: CategoryModel + ?Sized>(d: &D, p: &Point, dying: &[&str]) -> Result<Point, SlicingError> {
    if dying.is_empty() {
        return Ok(p.clone());
    }
    let h = &p.heart;
    for name in dying {
        if let Some(reason) = d.boundary_exclusion(name) {
            return Err(SlicingError::UnreachableStratum(format!("{name}: {reason}")));
        }
        if h.index_of(name).is_none() {
            return Err(SlicingError::UnreachableStratum(format!("{name} is not a simple of the heart {h}")));
        }
    }
    let val = |i: usize| {
        if dying.contains(&h.simples[i].name.as_str()) {
            num_complex::Complex64::new(0.0, 0.0)
        } else {
            p.charge.eval(h.classes[i])
        }
    };
    let z = Charge::from_values_on(h.classes[0], val(0), h.classes[1], val(1))
        .expect("heart classes form a basis");
    let mut q = p.clone();
    q.charge = z;
    for e in &mut q.phases {
        let v = q.charge.eval(e.class);
        if v.norm() <= MASS_TOL {
            e.mass = 0.0;
            q.massless.insert(e.id.name.clone());
        } else {
            e.phase = nearest_lift(v, e.phase);
            e.mass = v.norm();
        }
    }
    Ok(q)
}

/// Primitive class spanning the massless classes, first non-zero
/// coordinate positive.
pub fn massless_generator(p: &Point) -> Result<KClass, SlicingError> {
    let classes: Vec<KClass> = p.phases.iter().filter(|e| p.massless.contains(&e.id.name)).map(|e| e.class).collect();
    let first = *classes.first().ok_or(SlicingError::NoMassless)?;
    if classes.iter().any(|c| c.det(&first) != 0) {
        return Err(SlicingError::RankTwoMassless);
    }
    let g = first.x.gcd(&first.y);
    let mut v = KClass::new(first.x / g, first.y / g);
    if v.x < 0 || (v.x == 0 && v.y < 0) {
        v = -v;
    }
    Ok(v)
}

/// Common phase of the massless heart simples, reduced so that it is the
/// phase of the simple itself. With two massless simples the lower one is
/// used.
pub fn rho_n(p: &Point) -> Result<f64, SlicingError> {
    (0..2)
        .filter(|&i| p.massless.contains(&p.heart.simples[i].name))
        .map(|i| p.simple_phases[i])
        .reduce(f64::min)
        .or_else(|| p.phases.iter().find(|e| p.massless.contains(&e.id.name)).map(|e| e.phase))
        .ok_or(SlicingError::NoMassless)
}

/// Rank-one quotient stability datum: the image of the generator, its
/// phase and its mass, also in log coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientDatum {
    pub generator: ObjectId,
    pub class: KClass,
    pub phase: f64,
    pub mass: f64,
    pub log_mass: f64,
    pub angle: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MasslessStratumCoords {
    pub quotient: Option<QuotientDatum>,
    pub psi: f64,
}

impl MasslessStratumCoords {
    pub fn of(p: &Point) -> Result<Self, SlicingError> {
        let psi = rho_n(p)?;
        let quotient = match mu_n(p) {
            Ok(q) => Some(q),
            Err(SlicingError::RankTwoMassless) => None,
            Err(e) => return Err(e),
        };
        Ok(MasslessStratumCoords { quotient, psi })
    }
}

pub fn mu_n(p: &Point) -> Result<QuotientDatum, SlicingError> {
    let g = massless_generator(p)?;
    let best = p
        .phases
        .iter()
        .filter(|e| !p.massless.contains(&e.id.name) && g.det(&e.class).abs() == 1)
        .min_by(|a, b| a.mass.total_cmp(&b.mass))
        .ok_or(SlicingError::NoMassless)?;
    let (generator, class, phase) = if g.det(&best.class) == 1 {
        (best.id.clone(), best.class, best.phase)
    } else {
        (best.id.shifted(1), -best.class, best.phase + 1.0)
    };
    Ok(QuotientDatum {
        generator,
        class,
        phase,
        mass: best.mass,
        log_mass: best.mass.ln(),
        angle: std::f64::consts::PI * phase,
    })
}

/// Slicing distance between the quotient points of two lax points.
pub fn quotient_distance(a: &Point, b: &Point) -> Result<f64, SlicingError> {
    Ok((mu_n(a)?.phase - mu_n(b)?.phase).abs())
}
