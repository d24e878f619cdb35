//! Derived category of the A2 quiver.
//!
//! Indecomposables are `X_k` with `X_0 = s`, `X_1 = e`, `X_2 = t` and
//! `X_{k+3} = X_k[1]`. Hearts are `<X_i, X_j>` with `j - i = 2 mod 3`,
//! `j > i`; `Ext^1(X_{i+2}, X_i) = 1` and every other Ext^1 vanishes.

use super::{Cell, CategoryModel, DriverError, Heart, ObjectId, TiltDir};
use crate::lattice::KClass;

const NAMES: [&str; 3] = ["s", "e", "t"];

#[derive(Clone, Copy, Debug, Default)]
pub struct A2;

fn index_of(x: &ObjectId) -> Result<i64, DriverError> {
    let p = NAMES
        .iter()
        .position(|n| *n == x.name)
        .ok_or_else(|| DriverError::Untracked(x.to_string()))?;
    Ok(3 * x.shift + p as i64)
}

fn object(k: i64) -> ObjectId {
    ObjectId::new(NAMES[k.rem_euclid(3) as usize], k.div_euclid(3))
}

fn base(k: usize) -> KClass {
    [KClass::new(1, 0), KClass::new(1, 1), KClass::new(0, 1)][k]
}

fn class(k: i64) -> KClass {
    base(k.rem_euclid(3) as usize).shifted(k.div_euclid(3))
}

fn heart(k0: i64, k1: i64) -> Heart {
    let ext = |a: i64, b: i64| u32::from(a == b + 2);
    Heart {
        simples: [object(k0), object(k1)],
        classes: [class(k0), class(k1)],
        ext: [[0, ext(k0, k1)], [ext(k1, k0), 0]],
        spherical: [false, false],
    }
}

fn indices(h: &Heart) -> Result<[i64; 2], DriverError> {
    let k = [index_of(&h.simples[0])?, index_of(&h.simples[1])?];
    let (lo, hi) = (k[0].min(k[1]), k[0].max(k[1]));
    if hi == lo || (hi - lo).rem_euclid(3) != 2 {
        return Err(DriverError::NotAHeart(h.to_string()));
    }
    Ok(k)
}

impl CategoryModel for A2 {
    fn name(&self) -> &'static str {
        "a2"
    }

    fn seed_heart(&self) -> Heart {
        heart(0, 2)
    }

    fn base_class(&self, name: &str) -> Option<KClass> {
        NAMES.iter().position(|n| *n == name).map(base)
    }

    fn tilt(&self, h: &Heart, at: usize, dir: TiltDir) -> Result<Heart, DriverError> {
        let k = indices(h)?;
        let (x, y) = (k[at], k[1 - at]);
        let wall = (x - y).abs() == 2;
        let mut out = [0; 2];
        match dir {
            TiltDir::Forward => {
                out[at] = x + 3;
                out[1 - at] = if wall && x < y { x + 1 } else { y };
            }
            TiltDir::Backward => {
                out[at] = x - 3;
                out[1 - at] = if wall && x > y { x - 1 } else { y };
            }
        }
        Ok(heart(out[0], out[1]))
    }

    fn hn_factors(&self, x: &ObjectId, cell: &Cell) -> Result<Vec<(ObjectId, u32)>, DriverError> {
        let k = index_of(x)?;
        if cell.contains_stable(&x.name) {
            return Ok(vec![(x.clone(), 1)]);
        }
        Ok(vec![(object(k - 1), 1), (object(k + 1), 1)])
    }

    fn enumerate(&self, _depth: u32) -> Vec<ObjectId> {
        NAMES.iter().map(|n| ObjectId::new(*n, 0)).collect()
    }

    fn chamber_label(&self, cell: &Cell) -> String {
        if cell.stables.len() == 3 {
            return "triple".into();
        }
        let mut names: Vec<&str> = cell.stables.iter().map(|s| s.name.as_str()).collect();
        names.sort();
        names.dedup();
        format!("pair:{}", names.join(","))
    }

    fn finite_type(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drivers::{check_heart_classes, check_hn_classes, expected_tilt_classes};

    fn names(v: &[ObjectId]) -> Vec<String> {
        let mut n: Vec<_> = v.iter().map(|o| o.name.clone()).collect();
        n.sort();
        n
    }

    #[test]
    fn seed_stable_sets() {
        let d = A2;
        let h = d.seed_heart();
        let s = h.index_of("s").unwrap();
        let t = h.index_of("t").unwrap();
        assert_eq!(names(&d.stable_set(&h, s).unwrap()), ["e", "s", "t"]);
        assert_eq!(names(&d.stable_set(&h, t).unwrap()), ["s", "t"]);
    }

    #[test]
    fn tilts_respect_class_rule_and_invert() {
        let d = A2;
        let mut h = d.seed_heart();
        for step in 0..40usize {
            let at = step % 2;
            let dir = if step % 3 == 0 { TiltDir::Backward } else { TiltDir::Forward };
            let t = d.tilt(&h, at, dir).unwrap();
            assert_eq!(t.classes, expected_tilt_classes(&h, at, dir));
            check_heart_classes(&d, &t).unwrap();
            let back = match dir {
                TiltDir::Forward => TiltDir::Backward,
                TiltDir::Backward => TiltDir::Forward,
            };
            assert_eq!(d.tilt(&t, at, back).unwrap(), h);
            h = t;
        }
    }

    #[test]
    fn e_splits_in_pair_chamber() {
        let d = A2;
        let h = d.seed_heart();
        let cell = d.cell_of(&h, h.index_of("t").unwrap()).unwrap();
        let e = ObjectId::new("e", 0);
        let f = d.hn_factors(&e, &cell).unwrap();
        assert_eq!(f, vec![(ObjectId::new("s", 0), 1), (ObjectId::new("t", 0), 1)]);
        check_hn_classes(&d, &e, &f).unwrap();
        let e1 = e.shifted(1);
        let f1 = d.hn_factors(&e1, &cell).unwrap();
        assert!(f1.iter().zip(&f).all(|(a, b)| a.0 == b.0.shifted(1)));
    }
}
