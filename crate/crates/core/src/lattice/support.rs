use num_complex::Complex64;
use serde::Serialize;

use super::inner::kernel_line;
use super::phase::MASS_TOL;
use super::{norm_kclass, Charge, InnerProduct, KClass, LatticeError};

/// `inf |Z(s)| / ||v(s)||` over the massive entries; `+inf` when none are
/// massive.
pub fn support_infimum(stables: &[(KClass, Complex64)], ip: &InnerProduct) -> f64 {
    stables
        .iter()
        .filter(|(c, z)| z.norm() > MASS_TOL && !c.is_zero())
        .map(|(c, z)| z.norm() / norm_kclass(*c, ip))
        .fold(f64::INFINITY, f64::min)
}

/// Running infima of `support_infimum` over growing prefixes. Used to watch
/// a truncated family drift towards zero.
pub fn support_ratios(stables: &[(KClass, Complex64)], ip: &InnerProduct) -> Vec<f64> {
    stables
        .iter()
        .filter(|(c, z)| z.norm() > MASS_TOL && !c.is_zero())
        .map(|(c, z)| z.norm() / norm_kclass(*c, ip))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    /// The constant `K` in `||v(s)|| <= K |Z(s)|`.
    pub k: f64,
    /// The same bound written as `|Z(s)| >= c ||v(s)||`, `c = 1/K`.
    pub k_inverse: f64,
    /// `Delta(v(s)) >= 0` on every massive stable.
    pub massive_ok: bool,
    /// Classes where `Delta < 0`.
    pub failures: Vec<KClass>,
    /// Real dimension of `ker Z`.
    pub kernel_dim: usize,
    /// `Delta` negative definite on `ker Z`.
    pub kernel_negative: bool,
    /// No massive stables and `Z = 0`.
    pub lax_trivial: bool,
}

impl SupportReport {
    pub fn passes(&self) -> bool {
        self.massive_ok && self.kernel_negative
    }
}

/// Quadratic form `Delta(l) = K^2 |Z(l)|^2 - ||l||^2` on the real plane.
pub fn delta(z: &Charge<f64>, k: f64, ip: &InnerProduct, v: [f64; 2]) -> f64 {
    k * k * z.eval_real(v).norm_sqr() - ip.norm_sq_real(v)
}

pub fn check_support_quadratic_form(
    stables: &[(KClass, Complex64)],
    z: &Charge<f64>,
    k: f64,
    ip: &InnerProduct,
) -> Result<SupportReport, LatticeError> {
    if k.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !k.is_finite() {
        return Err(LatticeError::NonPositiveConstant(k));
    }
    let mut failures = Vec::new();
    let mut massive = 0;
    for (c, val) in stables {
        if val.norm() <= MASS_TOL {
            continue;
        }
        massive += 1;
        // relative slack so the boundary case K = 1/inf is accepted
        let d = delta(z, k, ip, c.to_f64());
        if d < -1e-12 * ip.norm_sq_real(c.to_f64()) {
            failures.push(*c);
        }
    }
    let kernel_dim = 2 - z.real_rank();
    let kernel_negative = match kernel_dim {
        0 => true,
        1 => kernel_line(z).map(|v| delta(z, k, ip, v) < 0.0).unwrap_or(false),
        _ => {
            // Z = 0: Delta = -||.||^2, negative definite iff the Gram is
            let e = [[1.0, 0.0], [0.0, 1.0]];
            let g = ip.gram_f64();
            let d0 = delta(z, k, ip, e[0]);
            d0 < 0.0 && (g[0][0] * g[1][1] - g[0][1] * g[1][0]) > 0.0
        }
    };
    Ok(SupportReport {
        k,
        k_inverse: 1.0 / k,
        massive_ok: failures.is_empty(),
        failures,
        kernel_dim,
        kernel_negative,
        lax_trivial: massive == 0 && kernel_dim == 2,
    })
}
