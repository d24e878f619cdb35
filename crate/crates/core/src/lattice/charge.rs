use std::ops::{Add, Sub};

use num_complex::{Complex, Complex64};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde::{Deserialize, Deserializer};

use super::KClass;
use crate::scalar::{Rational, Scalar};

/// A linear map from the lattice to `C`, stored as the images of the two
/// basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Charge<T: Scalar> {
    pub z1: Complex<T>,
    pub z2: Complex<T>,
}

impl<T: Scalar> Charge<T> {
    pub fn new(z1: Complex<T>, z2: Complex<T>) -> Self {
        Charge { z1, z2 }
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Charge { z1: z.clone(), z2: z }
    }

    pub fn is_exact(&self) -> bool {
        T::EXACT
    }

    /// `Z(a) = a.x * z1 + a.y * z2`.
    pub fn eval(&self, a: KClass) -> Complex<T> {
        let x = T::from_i64(a.x);
        let y = T::from_i64(a.y);
        Complex::new(
            x.clone() * self.z1.re.clone() + y.clone() * self.z2.re.clone(),
            x * self.z1.im.clone() + y * self.z2.im.clone(),
        )
    }

    pub fn scale(&self, k: T) -> Self {
        Charge::new(self.z1.clone() * k.clone(), self.z2.clone() * k)
    }

    /// Precomposition with an integer matrix acting on lattice coordinates:
    /// returns `Z ∘ M`, where column `j` of `m` is the image of basis vector `j`.
    pub fn compose(&self, m: [[i64; 2]; 2]) -> Self {
        let col = |j: usize| KClass::new(m[0][j], m[1][j]);
        Charge::new(self.eval(col(0)), self.eval(col(1)))
    }

    pub fn to_f64(&self) -> Charge<f64> {
        Charge::new(
            Complex64::new(self.z1.re.to_f64(), self.z1.im.to_f64()),
            Complex64::new(self.z2.re.to_f64(), self.z2.im.to_f64()),
        )
    }

    /// Real 2x2 matrix (rows: real and imaginary part; columns: basis
    /// vectors) of the underlying real-linear map.
    pub fn real_matrix(&self) -> [[f64; 2]; 2] {
        [
            [self.z1.re.to_f64(), self.z2.re.to_f64()],
            [self.z1.im.to_f64(), self.z2.im.to_f64()],
        ]
    }

    /// Rank of the underlying real map, decided exactly for exact scalars.
    pub fn real_rank(&self) -> usize {
        let det = self.z1.re.clone() * self.z2.im.clone() - self.z2.re.clone() * self.z1.im.clone();
        if !det.is_negligible() {
            2
        } else if self.z1.re.is_negligible()
            && self.z1.im.is_negligible()
            && self.z2.re.is_negligible()
            && self.z2.im.is_negligible()
        {
            0
        } else {
            1
        }
    }
}

impl Charge<f64> {
    pub fn from_parts(z1: (f64, f64), z2: (f64, f64)) -> Self {
        Charge::new(Complex64::new(z1.0, z1.1), Complex64::new(z2.0, z2.1))
    }

    pub fn eval_real(&self, v: [f64; 2]) -> Complex64 {
        self.z1 * v[0] + self.z2 * v[1]
    }

    /// Multiply by a complex number (the charge part of the `C`-action).
    pub fn rotate(&self, w: Complex64) -> Self {
        Charge::new(self.z1 * w, self.z2 * w)
    }

    /// Charge with prescribed values on a basis `a`, `b` of the lattice.
    pub fn from_values_on(a: KClass, za: Complex64, b: KClass, zb: Complex64) -> Option<Self> {
        let d = a.det(&b) as f64;
        if d == 0.0 {
            return None;
        }
        // [z1 z2] * [a b] = [za zb]  =>  [z1 z2] = [za zb] * [a b]^{-1}
        let inv = [[b.y as f64 / d, -b.x as f64 / d], [-a.y as f64 / d, a.x as f64 / d]];
        let z1 = za * inv[0][0] + zb * inv[1][0];
        let z2 = za * inv[0][1] + zb * inv[1][1];
        Some(Charge::new(z1, z2))
    }
}

impl Charge<Rational> {
    pub fn to_exact_value(&self, a: KClass) -> Complex<Rational> {
        self.eval(a)
    }
}

impl<T: Scalar> Add for Charge<T> {
    type Output = Charge<T>;
    fn add(self, o: Self) -> Self {
        Charge::new(self.z1 + o.z1, self.z2 + o.z2)
    }
}

impl<T: Scalar> Sub for Charge<T> {
    type Output = Charge<T>;
    fn sub(self, o: Self) -> Self {
        Charge::new(self.z1 - o.z1, self.z2 - o.z2)
    }
}

/// Serialized as `[[re, im], [re, im]]`; rationals as `"p/q"` strings.
impl<T: Scalar> Serialize for Charge<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        for z in [&self.z1, &self.z2] {
            seq.serialize_element(&[z.re.to_json(), z.im.to_json()])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Charge<f64> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: [[f64; 2]; 2] = Deserialize::deserialize(d)?;
        Ok(Charge::from_parts((v[0][0], v[0][1]), (v[1][0], v[1][1])))
    }
}
