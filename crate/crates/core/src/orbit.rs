//! Closures of orbits in the Poincare disk: phase diagrams, boundary charges
//! from the sine rule, and the classification of disk-boundary points.

use num_complex::Complex64;
use serde::Serialize;

use crate::drivers::{Accumulation, CategoryModel, ObjectId};
use crate::lattice::phase::{circle_dist, mod1, TOL_PHASE};
use crate::scalar::round6;
use crate::slicing::Point;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("phase 0 requires the w = 1 branch")]
    ZeroPhase,
    #[error("object {0} is not stable at this point")]
    NotStable(String),
}

/// Occupied phases mod 1 and the driver's accumulation points.
#[derive(Clone, Debug, Serialize)]
pub struct PhaseDiagram {
    /// `(phase mod 1, stables of that phase)`, sorted by phase.
    pub isolated: Vec<(f64, Vec<String>)>,
    pub accumulation: Vec<Accumulation>,
    pub dense: bool,
    /// `false` when the stables were truncated.
    pub exhaustive: bool,
}

impl PhaseDiagram {
    pub fn occupied(&self, phi: f64) -> Option<&[String]> {
        self.isolated.iter().find(|(p, _)| circle_dist(*p, phi) <= TOL_PHASE).map(|(_, n)| n.as_slice())
    }

    pub fn accumulation_at(&self, phi: f64) -> Option<&Accumulation> {
        self.accumulation.iter().find(|a| circle_dist(a.phase, phi) <= TOL_PHASE)
    }
}

pub fn phase_diagram<D: CategoryModel + ?Sized>(d: &D, p: &Point) -> PhaseDiagram {
    let mut isolated: Vec<(f64, Vec<String>)> = Vec::new();
    for e in &p.phases {
        let ph = mod1(e.phase);
        match isolated.iter_mut().find(|(q, _)| circle_dist(*q, ph) <= TOL_PHASE) {
            Some((_, names)) => names.push(e.id.name.clone()),
            None => isolated.push((ph, vec![e.id.name.clone()])),
        }
    }
    isolated.sort_by(|a, b| a.0.total_cmp(&b.0));
    let table: Vec<(ObjectId, f64)> = p.phases.iter().map(|e| (e.id.clone(), e.phase)).collect();
    PhaseDiagram {
        isolated,
        accumulation: d.accumulation_phases(&p.cell, &table),
        dense: false,
        exhaustive: p.cell.complete,
    }
}

/// Conformal map from the disk to the upper half-plane.
pub fn cayley(w: Complex64) -> Complex64 {
    Complex64::new(0.0, 1.0) * (1.0 + w) / (1.0 - w)
}

/// `M_w`: the real-linear map with `1 -> 1`, `i -> f(w)`, or `1 -> 0`,
/// `i -> -1` at `w = 1`.
pub fn m_w(w: Complex64, z: Complex64) -> Complex64 {
    if (w - 1.0).norm() == 0.0 {
        Complex64::new(-z.im, 0.0)
    } else {
        z.re + cayley(w) * z.im
    }
}

/// Sine rule: `Z_w(c)` for `c` of mass `m` and phase `phi_c`, at the
/// boundary point `w = exp(2 pi i phi)`.
pub fn sine_rule(m: f64, phi_c: f64, phi: f64) -> Result<f64, OrbitError> {
    let pi = std::f64::consts::PI;
    let s = (pi * phi).sin();
    if mod1(phi) == 0.0 || s.abs() < 1e-15 {
        return Err(OrbitError::ZeroPhase);
    }
    Ok(m * (pi * (phi - phi_c)).sin() / s)
}

/// The `w = 1` branch of the sine rule.
pub fn sine_rule_at_one(m: f64, phi_c: f64) -> f64 {
    -m * (std::f64::consts::PI * phi_c).sin()
}

/// `Z_w(c)` as a signed real for a stable `c` of `p`.
pub fn boundary_charge(p: &Point, phi: f64, c: &ObjectId) -> Result<f64, OrbitError> {
    let phc = p.phase_of(c).ok_or_else(|| OrbitError::NotStable(c.to_string()))?;
    let e = p.entry(&c.name).expect("stable");
    if mod1(phi) == 0.0 {
        Ok(sine_rule_at_one(e.mass, phc))
    } else {
        sine_rule(e.mass, phc, phi)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum Verdict {
    Classical,
    Lax { psi_min: f64, psi_max: f64 },
    Excluded,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiskBoundaryClass {
    pub phi: f64,
    pub w: [f64; 2],
    pub verdict: Verdict,
    pub support_ok: bool,
    pub massless: Vec<String>,
}

impl DiskBoundaryClass {
    /// Whether the point belongs to the quotient closure.
    pub fn in_quotient_closure(&self) -> bool {
        match self.verdict {
            Verdict::Classical => true,
            Verdict::Lax { .. } => self.support_ok,
            Verdict::Excluded => false,
        }
    }
}

pub fn classify_boundary(diagram: &PhaseDiagram, phi: f64) -> DiskBoundaryClass {
    let phi = mod1(phi);
    let angle = 2.0 * std::f64::consts::PI * phi;
    let w = [angle.cos(), angle.sin()];
    let massless: Vec<String> = diagram.occupied(phi).map(|n| n.to_vec()).unwrap_or_default();
    let acc = diagram.accumulation_at(phi);
    let (verdict, support_ok) = if diagram.dense {
        (Verdict::Excluded, false)
    } else if massless.is_empty() {
        match acc {
            None => (Verdict::Classical, true),
            Some(_) => (Verdict::Excluded, false),
        }
    } else {
        match acc {
            None => (Verdict::Lax { psi_min: 0.0, psi_max: 1.0 }, true),
            // accumulating from above only: nothing just below phi
            Some(a) if a.from_above && !a.from_below => (Verdict::Lax { psi_min: 1.0, psi_max: 1.0 }, true),
            Some(a) if a.from_below && !a.from_above => (Verdict::Lax { psi_min: 0.0, psi_max: 0.0 }, true),
            Some(_) => (Verdict::Excluded, false),
        }
    };
    DiskBoundaryClass { phi, w, verdict, support_ok, massless }
}

/// Classified boundary points of the orbit closure. Points not listed are
/// classical.
#[derive(Clone, Debug, Serialize)]
pub struct DiskReport {
    pub schema: &'static str,
    pub driver: String,
    pub chamber: String,
    pub diagram: PhaseDiagram,
    pub boundary: Vec<DiskBoundaryClass>,
    pub generic_classical: bool,
}

impl DiskReport {
    /// Listed points of `D_sigma`.
    pub fn d_sigma(&self) -> Vec<&DiskBoundaryClass> {
        self.boundary.iter().filter(|b| b.verdict == Verdict::Classical).collect()
    }

    /// Listed points of `D_sigma^Q`.
    pub fn d_sigma_q(&self) -> Vec<&DiskBoundaryClass> {
        self.boundary.iter().filter(|b| b.in_quotient_closure()).collect()
    }

    /// JSON under `orbit-report.v1`.
    pub fn to_json(&self) -> serde_json::Value {
        let phases: serde_json::Map<String, serde_json::Value> = self
            .diagram
            .isolated
            .iter()
            .flat_map(|(p, names)| names.iter().map(move |n| (n.clone(), serde_json::json!(round6(*p)))))
            .collect();
        let boundary: Vec<_> = self
            .boundary
            .iter()
            .map(|b| {
                let (verdict, range) = match b.verdict {
                    Verdict::Classical => ("CLASSICAL", serde_json::Value::Null),
                    Verdict::Lax { psi_min, psi_max } => ("LAX", serde_json::json!([psi_min, psi_max])),
                    Verdict::Excluded => ("EXCLUDED", serde_json::Value::Null),
                };
                serde_json::json!({
                    "phi": round6(b.phi),
                    "verdict": verdict,
                    "psi_range": range,
                    "support_ok": b.support_ok,
                    "massless": b.massless,
                })
            })
            .collect();
        serde_json::json!({
            "schema": self.schema,
            "driver": self.driver,
            "chamber": self.chamber,
            "phases": phases,
            "accumulation": self.diagram.accumulation.iter().map(|a| round6(a.phase)).collect::<Vec<_>>(),
            "boundary": boundary,
            "generic_classical": self.generic_classical,
            "dense": self.diagram.dense,
        })
    }
}

pub fn disk_report<D: CategoryModel + ?Sized>(d: &D, p: &Point) -> DiskReport {
    let diagram = phase_diagram(d, p);
    let mut phis: Vec<f64> = diagram.isolated.iter().map(|(p, _)| *p).collect();
    for a in &diagram.accumulation {
        if !phis.iter().any(|q| circle_dist(*q, a.phase) <= TOL_PHASE) {
            phis.push(a.phase);
        }
    }
    phis.sort_by(f64::total_cmp);
    let boundary = if diagram.dense { Vec::new() } else { phis.iter().map(|&f| classify_boundary(&diagram, f)).collect() };
    DiskReport {
        schema: "orbit-report.v1",
        driver: d.name().to_string(),
        chamber: p.chamber.clone(),
        generic_classical: !diagram.dense,
        diagram,
        boundary,
    }
}
