//! Independent oracles shared by the oracle and acceptance tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use stabscan::drivers::{CategoryModel, Heart, ObjectId, TiltDir, A2};
use stabscan::slicing::{make_point, make_point_near, mass_of, Point};
use stabscan::Charge;

pub fn cis(r: f64, t: f64) -> Complex64 {
    Complex64::from_polar(r, std::f64::consts::PI * t)
}

/// Real part of `M_w(z)` at `w = rho exp(2 pi i phi)`, computed from the
/// Cayley map directly.
fn m_w_direct(z: Complex64, phi: f64, rho: f64) -> Complex64 {
    let w = Complex64::from_polar(rho, 2.0 * std::f64::consts::PI * phi);
    let f = Complex64::i() * (1.0 + w) / (1.0 - w);
    z.re + f * z.im
}

/// `lim_{rho -> 1} M_w(z)` by three-level Richardson extrapolation in
/// `h = 1 - rho`.
pub fn limit_along_radius(z: Complex64, phi: f64) -> Complex64 {
    let h = 1e-4;
    let g = |h: f64| m_w_direct(z, phi, 1.0 - h);
    let (a, b, c) = (g(h), g(h / 2.0), g(h / 4.0));
    let r1 = 2.0 * b - a;
    let r2 = 2.0 * c - b;
    (4.0 * r2 - r1) / 3.0
}

/// A2 point on the seed heart from masses and phases of `s` and `t`.
pub fn a2_point(ms: f64, ps: f64, mt: f64, pt: f64) -> Option<Point> {
    let d = A2;
    let z = Charge::new(cis(ms, ps), cis(mt, pt));
    make_point(&d, &d.seed_heart(), &z).ok()
}

pub fn a2_masses(p: &Point) -> [f64; 3] {
    ["s", "e", "t"].map(|n| mass_of(&A2, p, &ObjectId::new(n, 0)).unwrap())
}

/// Straight path of A2 charges crossing the wall `phi(s) = phi(t)` once.
pub struct WallPath {
    pub z0: Charge<f64>,
    pub z1: Charge<f64>,
    pub t_star: f64,
    pub reference: [f64; 2],
}

impl WallPath {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let a = rng.gen_range(0.25..0.75);
        let ms = rng.gen_range(0.5..2.0);
        let zs = cis(ms, a);
        let below = rng.gen_range(a - 0.2..a - 0.05);
        let above = rng.gen_range(a + 0.05..a + 0.2);
        let (b0, b1) = if rng.gen_bool(0.5) { (below, above) } else { (above, below) };
        let zt0 = cis(rng.gen_range(0.5..2.0), b0);
        let zt1 = cis(rng.gen_range(0.5..2.0), b1);
        // crossing of the segment with the ray of Z(s)
        let rot = cis(1.0, -a);
        let (p, q) = ((zt0 * rot).im, (zt1 * rot).im);
        let t_star = p / (p - q);
        WallPath { z0: Charge::new(zs, zt0), z1: Charge::new(zs, zt1), t_star, reference: [a, 0.5 * (b0 + b1)] }
    }

    pub fn at(&self, t: f64) -> Charge<f64> {
        Charge::new(self.z0.z1 + (self.z1.z1 - self.z0.z1) * t, self.z0.z2 + (self.z1.z2 - self.z0.z2) * t)
    }

    pub fn masses(&self, t: f64) -> [f64; 3] {
        let d = A2;
        let p = make_point_near(&d, &d.seed_heart(), &self.at(t), self.reference).expect("off the wall");
        a2_masses(&p)
    }

    /// `R(h) = |2 J(h/2) - J(h)|` per mass, `J(h) = |m(t* + h) - m(t* - h)|`.
    pub fn richardson(&self, h: f64) -> [f64; 3] {
        let j = |h: f64| {
            let (a, b) = (self.masses(self.t_star + h), self.masses(self.t_star - h));
            [0, 1, 2].map(|i| (a[i] - b[i]).abs())
        };
        let (full, half) = (j(h), j(h / 2.0));
        [0, 1, 2].map(|i| (2.0 * half[i] - full[i]).abs())
    }
}

/// First heart within `depth` tilts of the seed with a simple named `name`.
pub fn heart_with(d: &dyn CategoryModel, name: &str, depth: u32) -> Option<Heart> {
    let mut frontier = vec![d.seed_heart()];
    for _ in 0..=depth {
        if let Some(h) = frontier.iter().find(|h| h.index_of(name).is_some()) {
            return Some(h.clone());
        }
        frontier = frontier
            .iter()
            .flat_map(|h| {
                (0..2).flat_map(move |at| [TiltDir::Forward, TiltDir::Backward].map(|dir| d.tilt(h, at, dir).ok()))
            })
            .flatten()
            .collect();
    }
    None
}

/// A2 point on `h` with both simple phases in (0, 1).
pub fn a2_point_on(h: &Heart, pa: f64, pb: f64) -> Point {
    let d = A2;
    let z = Charge::from_values_on(h.classes[0], cis(1.0, pa), h.classes[1], cis(1.3, pb)).unwrap();
    make_point(&d, h, &z).unwrap()
}
