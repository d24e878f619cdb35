use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Class of an object in the rank-2 lattice, in the driver's basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct KClass {
    pub x: i64,
    pub y: i64,
}

impl KClass {
    pub const ZERO: KClass = KClass { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        KClass { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Determinant of the 2x2 matrix with columns `self`, `other`.
    pub fn det(&self, other: &KClass) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// `(-1)^n * self`, the class of the `n`-fold shift.
    pub fn shifted(self, n: i64) -> KClass {
        if n.rem_euclid(2) == 0 {
            self
        } else {
            -self
        }
    }

    pub fn to_f64(self) -> [f64; 2] {
        [self.x as f64, self.y as f64]
    }

    /// Coefficients `(p, q)` with `self = p*a + q*b`, if integral.
    pub fn coords_in(&self, a: KClass, b: KClass) -> Option<(i64, i64)> {
        let d = a.det(&b);
        if d == 0 {
            return None;
        }
        let p = self.det(&b);
        let q = a.det(self);
        if p % d != 0 || q % d != 0 {
            return None;
        }
        Some((p / d, q / d))
    }
}

impl From<[i64; 2]> for KClass {
    fn from(v: [i64; 2]) -> Self {
        KClass::new(v[0], v[1])
    }
}

impl From<KClass> for [i64; 2] {
    fn from(k: KClass) -> Self {
        [k.x, k.y]
    }
}

impl Add for KClass {
    type Output = KClass;
    fn add(self, o: KClass) -> KClass {
        KClass::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for KClass {
    type Output = KClass;
    fn sub(self, o: KClass) -> KClass {
        KClass::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass::new(-self.x, -self.y)
    }
}

impl Mul<i64> for KClass {
    type Output = KClass;
    fn mul(self, k: i64) -> KClass {
        KClass::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_in_a_basis() {
        let a = KClass::new(1, 0);
        let b = KClass::new(1, 1);
        assert_eq!(KClass::new(3, 2).coords_in(a, b), Some((1, 2)));
        assert_eq!(KClass::new(1, 0).coords_in(KClass::new(2, 0), KClass::new(0, 1)), None);
    }

    #[test]
    fn shift_flips_sign_on_odd() {
        let c = KClass::new(1, -2);
        assert_eq!(c.shifted(3), -c);
        assert_eq!(c.shifted(-2), c);
    }
}
