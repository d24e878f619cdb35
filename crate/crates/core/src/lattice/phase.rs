//! Phase arithmetic. Every equality test on phases goes through
//! [`phase_eq`].

use std::cmp::Ordering;

use num_complex::Complex64;

/// Tolerance for phase equality.
pub const TOL_PHASE: f64 = 1e-12;

/// Masses at or below this are treated as zero.
pub const MASS_TOL: f64 = 1e-12;

pub fn phase_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL_PHASE
}

pub fn phase_cmp(a: f64, b: f64) -> Ordering {
    if phase_eq(a, b) {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// `arg(z)/pi` in `(-1, 1]`.
pub fn raw_phase(z: Complex64) -> f64 {
    let p = z.im.atan2(z.re) / std::f64::consts::PI;
    if p <= -1.0 {
        p + 2.0
    } else {
        p
    }
}

/// The lift of `arg(z)/pi` lying in `(start, start + 2]`.
pub fn lift_after(z: Complex64, start: f64) -> f64 {
    let mut p = raw_phase(z);
    let k = ((start - p) / 2.0).floor() + 1.0;
    p += 2.0 * k;
    if p > start + 2.0 {
        p -= 2.0;
    }
    p
}

/// The lift of `arg(z)/pi` closest to `reference`.
pub fn nearest_lift(z: Complex64, reference: f64) -> f64 {
    let p = raw_phase(z);
    let k = ((reference - p) / 2.0).round();
    p + 2.0 * k
}

/// Reduce a phase to `[0, 1)`.
pub fn mod1(p: f64) -> f64 {
    let r = p.rem_euclid(1.0);
    if (1.0 - r) <= TOL_PHASE {
        0.0
    } else {
        r
    }
}

/// Distance between two phases in `R/Z`.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = mod1(a - b);
    d.min(1.0 - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts() {
        let z = Complex64::new(-1.0, 0.0);
        assert_eq!(raw_phase(z), 1.0);
        assert!((lift_after(Complex64::new(0.0, -1.0), 0.0) - 1.5).abs() < 1e-15);
        assert!((lift_after(Complex64::new(0.0, 1.0), 0.6) - 2.5).abs() < 1e-15);
        assert!((nearest_lift(Complex64::new(1.0, -1e-3), 2.0) - (2.0 - 1e-3 / std::f64::consts::PI)).abs() < 1e-9);
    }

    #[test]
    fn circle_reduction() {
        assert!((mod1(-0.25) - 0.75).abs() < 1e-15);
        assert_eq!(mod1(1.0 - 1e-14), 0.0);
        assert!((circle_dist(0.95, 0.05) - 0.1).abs() < 1e-12);
    }
}
