use num_complex::Complex64;
use serde::Serialize;

use super::{make_point_near, rho_n, slicing_distance, Point, SlicingError};
use crate::drivers::{CategoryModel, TiltDir};
use crate::lattice::phase::MASS_TOL;
use crate::lattice::{norm_kclass, seminorm_sigma, Charge, InnerProduct, KClass, SeminormValue};

#[derive(Clone, Debug, Serialize)]
pub struct DeformationReport {
    pub r: f64,
    pub eps: f64,
    pub psi: f64,
    /// `||W_N||_sigma` with `W_N` extended by zero on the orthogonal
    /// complement of the massless line.
    pub seminorm: f64,
    /// `|W_N(g)| / ||g||` on the massless line alone.
    pub restricted_norm: f64,
    pub heart: String,
    pub chamber: String,
    pub classical: bool,
    pub psi_matches: bool,
    pub distance: f64,
    pub arctan_r: f64,
    pub arctan_r_over_pi: f64,
    /// `(r_k, distance)` along `r_k = r / 2^k`.
    pub convergence: Vec<(f64, f64)>,
    pub converges: bool,
    #[serde(skip)]
    pub deformed: Option<Point>,
}

impl DeformationReport {
    pub fn passes(&self) -> bool {
        self.classical && self.psi_matches && self.distance < self.eps && self.converges
    }
}

/// Class of the massless heart simple used to orient the deformation.
fn massless_simple(p: &Point) -> Result<(usize, KClass), SlicingError> {
    (0..2)
        .find(|&i| p.massless.contains(&p.heart.simples[i].name))
        .map(|i| (i, p.heart.classes[i]))
        .ok_or(SlicingError::NoMassless)
}

/// `W_N`: equal to `r e^{i pi psi}` on the massless simple and zero on its
/// orthogonal complement.
fn normal_charge(c: KClass, r: f64, psi: f64, ip: &InnerProduct) -> Charge<f64> {
    let w = Complex64::from_polar(r, std::f64::consts::PI * psi);
    let cc = crate::Scalar::to_f64(&ip.pair(c, c));
    let coef = |e: KClass| crate::Scalar::to_f64(&ip.pair(e, c)) / cc;
    Charge::new(w * coef(KClass::new(1, 0)), w * coef(KClass::new(0, 1)))
}

/// Realise the charge `z` near the lax point: its own heart first, then
/// the four simple tilts.
fn realise<D: CategoryModel + ?Sized>(d: &D, p: &Point, z: &Charge<f64>) -> Result<Point, SlicingError> {
    let mut hearts = vec![p.heart.clone()];
    for at in 0..2 {
        for dir in [TiltDir::Forward, TiltDir::Backward] {
            hearts.push(d.tilt(&p.heart, at, dir)?);
        }
    }
    for h in hearts {
        let refs = [p.phase_of(&h.simples[0]), p.phase_of(&h.simples[1])];
        let (Some(a), Some(b)) = (refs[0], refs[1]) else { continue };
        if let Ok(q) = make_point_near(d, &h, z, [a, b]) {
            return Ok(q);
        }
    }
    Err(SlicingError::Unrealizable)
}

fn deform<D: CategoryModel + ?Sized>(
    d: &D,
    p: &Point,
    r: f64,
    psi: f64,
    c: KClass,
    ip: &InnerProduct,
) -> Result<(Charge<f64>, Point), SlicingError> {
    let w = normal_charge(c, r, psi, ip);
    let z = p.charge.clone() + w.clone();
    Ok((w, realise(d, p, &z)?))
}

/// Deform a lax point with rank-one massless set to a classical point and
/// check it lands close by.
pub fn verify_normal_deformation<D: CategoryModel + ?Sized>(
    d: &D,
    p: &Point,
    r: f64,
    eps: f64,
    depth: u32,
    ip: &InnerProduct,
) -> Result<DeformationReport, SlicingError> {
    if !(eps > 0.0 && eps <= 0.125) {
        return Err(SlicingError::EpsOutOfRange(eps));
    }
    super::massless_generator(p)?;
    let psi = rho_n(p)?;
    let (slot, c) = massless_simple(p)?;
    let w = normal_charge(c, r, psi, ip);
    let bound = (std::f64::consts::PI * eps).sin();
    let seminorm = match seminorm_sigma(&w, &p.massive_stables(), p.family()) {
        SeminormValue::Finite(v) if v < bound => v,
        SeminormValue::Finite(v) => return Err(SlicingError::NormBound { norm: v, bound }),
        SeminormValue::Infinite => return Err(SlicingError::NormBound { norm: f64::INFINITY, bound }),
    };
    let (_, q) = deform(d, p, r, psi, c, ip)?;
    let classical = q.phases.iter().all(|e| e.mass > MASS_TOL);
    let simple = &p.heart.simples[slot];
    let psi_matches = q.phase_of(simple).is_some_and(|ph| (ph - psi).abs() < 1e-9);
    let distance = slicing_distance(d, p, &q, depth)?;
    let mut convergence = Vec::new();
    for k in 1..=4 {
        let rk = r / f64::from(1u32 << k);
        let (_, qk) = deform(d, p, rk, psi, c, ip)?;
        convergence.push((rk, slicing_distance(d, p, &qk, depth)?));
    }
    let converges = convergence.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-15)
        && convergence.last().is_some_and(|l| l.1 <= distance / 4.0 + 1e-15);
    Ok(DeformationReport {
        r,
        eps,
        psi,
        seminorm,
        restricted_norm: r / norm_kclass(c, ip),
        heart: q.heart.to_string(),
        chamber: q.chamber.clone(),
        classical,
        psi_matches,
        distance,
        arctan_r: r.atan(),
        arctan_r_over_pi: r.atan() / std::f64::consts::PI,
        convergence,
        converges,
        deformed: Some(q),
    })
}
