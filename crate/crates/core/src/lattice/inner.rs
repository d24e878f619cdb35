use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Charge, KClass, LatticeError};
use crate::scalar::{Rational, Scalar};

/// Symmetric positive-definite Gram matrix on the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerProduct {
    gram: [[Rational; 2]; 2],
}

impl Default for InnerProduct {
    fn default() -> Self {
        InnerProduct::identity()
    }
}

impl InnerProduct {
    pub fn new(gram: [[Rational; 2]; 2]) -> Result<Self, LatticeError> {
        if gram[0][1] != gram[1][0] {
            return Err(LatticeError::NotSymmetric);
        }
        let det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
        if !gram[0][0].is_positive() || !det.is_positive() {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(InnerProduct { gram })
    }

    pub fn identity() -> Self {
        let one = Ratio::from_integer(1);
        let zero = Ratio::zero();
        InnerProduct { gram: [[one, zero], [zero, one]] }
    }

    /// Gram matrix in which the basis vectors and their sum all have unit
    /// length (basis at 120 degrees).
    pub fn hexagonal() -> Self {
        let one = Ratio::from_integer(1);
        let h = Ratio::new(-1, 2);
        InnerProduct { gram: [[one, h], [h, one]] }
    }

    pub fn gram(&self) -> &[[Rational; 2]; 2] {
        &self.gram
    }

    pub fn gram_f64(&self) -> [[f64; 2]; 2] {
        let g = |i: usize, j: usize| self.gram[i][j].to_f64();
        [[g(0, 0), g(0, 1)], [g(1, 0), g(1, 1)]]
    }

    /// Exact `a^T G b`.
    pub fn pair(&self, a: KClass, b: KClass) -> Rational {
        let g = &self.gram;
        let (ax, ay) = (Ratio::from_integer(a.x), Ratio::from_integer(a.y));
        let (bx, by) = (Ratio::from_integer(b.x), Ratio::from_integer(b.y));
        ax * (g[0][0] * bx + g[0][1] * by) + ay * (g[1][0] * bx + g[1][1] * by)
    }

    pub fn norm_sq_real(&self, v: [f64; 2]) -> f64 {
        let g = self.gram_f64();
        v[0] * (g[0][0] * v[0] + g[0][1] * v[1]) + v[1] * (g[1][0] * v[0] + g[1][1] * v[1])
    }

    /// Lower-triangular `L` with `G = L L^T`.
    pub fn cholesky(&self) -> [[f64; 2]; 2] {
        let g = self.gram_f64();
        let l00 = g[0][0].sqrt();
        let l10 = g[1][0] / l00;
        let l11 = (g[1][1] - l10 * l10).sqrt();
        [[l00, 0.0], [l10, l11]]
    }

    /// Inverse Gram matrix: the induced metric on real functionals.
    pub fn dual_gram_f64(&self) -> [[f64; 2]; 2] {
        let g = self.gram_f64();
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]]
    }

    /// Dual-metric angle (in radians, in `[0, pi]`) between two real
    /// functionals given by their values on the basis.
    pub fn dual_angle(&self, u: [f64; 2], v: [f64; 2]) -> f64 {
        let h = self.dual_gram_f64();
        let ip = |a: [f64; 2], b: [f64; 2]| {
            a[0] * (h[0][0] * b[0] + h[0][1] * b[1]) + a[1] * (h[1][0] * b[0] + h[1][1] * b[1])
        };
        let c = ip(u, v) / (ip(u, u).sqrt() * ip(v, v).sqrt());
        c.clamp(-1.0, 1.0).acos()
    }
}

/// `sqrt(a^T G a)`.
pub fn norm_kclass(a: KClass, ip: &InnerProduct) -> f64 {
    ip.pair(a, a).to_f64().sqrt()
}

/// Largest singular value of the real matrix of `u` in an orthonormal basis
/// for `ip`.
pub fn operator_norm<T: Scalar>(u: &Charge<T>, ip: &InnerProduct) -> f64 {
    let a = u.real_matrix();
    let l = ip.cholesky();
    // B = A L^{-T}
    let inv_lt = {
        let det = l[0][0] * l[1][1];
        // L^T = [[l00, l10], [0, l11]], inverse:
        [[1.0 / l[0][0], -l[1][0] / det], [0.0, 1.0 / l[1][1]]]
    };
    let mut b = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            b[i][j] = a[i][0] * inv_lt[0][j] + a[i][1] * inv_lt[1][j];
        }
    }
    let frob = b.iter().flatten().map(|x| x * x).sum::<f64>();
    let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    let disc = (frob * frob - 4.0 * det * det).max(0.0).sqrt();
    ((frob + disc) / 2.0).sqrt()
}

/// Real vector spanning the kernel of a rank-1 charge.
pub(crate) fn kernel_line(z: &Charge<f64>) -> Option<[f64; 2]> {
    let m = z.real_matrix();
    // pick the row with the larger norm
    let r = if m[0][0].hypot(m[0][1]) >= m[1][0].hypot(m[1][1]) { m[0] } else { m[1] };
    if r[0] == 0.0 && r[1] == 0.0 {
        return None;
    }
    let v = [-r[1], r[0]];
    let n = v[0].hypot(v[1]);
    Some([v[0] / n, v[1] / n])
}
