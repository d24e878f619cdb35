//! Scalar abstraction for charge arithmetic.
//!
//! Lattice and Gram arithmetic is exact; charges can be exact Gaussian
//! rationals or floats. Everything that needs a square root or an argument
//! goes through `to_f64`.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// Exact rational scalar used for lattice and Gram arithmetic.
pub type Rational = Ratio<i64>;

/// Numeric type a [`Charge`](crate::lattice::Charge) can be built over.
pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// `true` when arithmetic in this type is exact.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero test: exact equality for exact types, an absolute tolerance for
    /// floats.
    fn is_negligible(&self) -> bool;

    fn to_json(&self) -> serde_json::Value;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-12
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(round6(*self))
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-6
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(round6(*self as f64))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn to_json(&self) -> serde_json::Value {
        if *self.denom() == 1 {
            serde_json::json!(self.numer())
        } else {
            serde_json::json!(format!("{}/{}", self.numer(), self.denom()))
        }
    }
}

/// Round to six decimals; all JSON and SVG output goes through this.
pub fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Parse `p`, `p/q` or a decimal literal into a rational. Decimals are
/// converted exactly (`0.25` becomes `1/4`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Ratio::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.trim_start().starts_with('-');
        let int_abs: i64 = int.trim_start_matches(['-', '+']).parse().unwrap_or(0);
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let frac_v: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
        let num = int_abs.checked_mul(den)?.checked_add(frac_v)?;
        return Some(Ratio::new(if neg { -num } else { num }, den));
    }
    s.parse::<i64>().ok().map(Ratio::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_exactly() {
        assert_eq!(parse_rational("3/4"), Some(Ratio::new(3, 4)));
        assert_eq!(parse_rational("-0.25"), Some(Ratio::new(-1, 4)));
        assert_eq!(parse_rational("7"), Some(Ratio::from_integer(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn rounding_kills_negative_zero() {
        assert_eq!(round6(-1e-9).to_string(), "0");
        assert_eq!(round6(0.1234567), 0.123457);
    }
}
