use serde::Serialize;

use crate::drivers::Heart;
use crate::lattice::InnerProduct;

/// Image of a cell-wall on the equator of real charges up to scale.
///
/// The endpoints are the real functionals vanishing on one simple; the
/// length is the dual-metric angle swept by positive mass ratios, with the
/// whole equator normalised to 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallArc {
    /// Functional with `f(a) = 0`, `f(b) = 1`.
    pub endpoint_a: [f64; 2],
    /// Functional with `f(a) = 1`, `f(b) = 0`.
    pub endpoint_b: [f64; 2],
    pub length: f64,
}

pub fn wall_arc(h: &Heart, ip: &InnerProduct) -> Option<WallArc> {
    let [a, b] = h.classes;
    let det = a.det(&b);
    if det == 0 {
        return None;
    }
    // f = (x, y) M^{-1} with M = [a b] as columns
    let d = det as f64;
    let inv = [[b.y as f64 / d, -b.x as f64 / d], [-a.y as f64 / d, a.x as f64 / d]];
    let row = |x: f64, y: f64| [x * inv[0][0] + y * inv[1][0], x * inv[0][1] + y * inv[1][1]];
    let ua = row(0.0, 1.0);
    let ub = row(1.0, 0.0);
    let length = ip.dual_angle(ua, ub) / std::f64::consts::PI;
    Some(WallArc { endpoint_a: ua, endpoint_b: ub, length })
}
