//! Ginzburg CY2 algebra of A2.
//!
//! Spherical objects up to shift correspond to primitive integer vectors up
//! to sign (Farey vectors), hearts to Farey edges, and cells to Farey
//! triangles. Every heart has `Ext^1 = 1` in both directions. The K-class of
//! a spherical is the positive root matching the parity of its vector, with
//! the sign recorded through the parity of the shift.

use std::collections::{BTreeSet, VecDeque};

use super::{Cell, CategoryModel, DriverError, Heart, ObjectId, TiltDir};
use crate::lattice::KClass;

/// Euler form on the basis `{[s], [t]}`.
const EULER: [[i64; 2]; 2] = [[2, -1], [-1, 2]];

#[derive(Clone, Copy, Debug, Default)]
pub struct GinzburgA2;

fn normalize(v: (i64, i64)) -> (i64, i64) {
    if v.0 < 0 || (v.0 == 0 && v.1 < 0) {
        (-v.0, -v.1)
    } else {
        v
    }
}

fn name_of(v: (i64, i64)) -> String {
    match normalize(v) {
        (1, 0) => "s".into(),
        (0, 1) => "t".into(),
        (1, 1) => "e".into(),
        (p, q) => format!("v({p},{q})"),
    }
}

fn vector_of(name: &str) -> Option<(i64, i64)> {
    match name {
        "s" => Some((1, 0)),
        "t" => Some((0, 1)),
        "e" => Some((1, 1)),
        _ => {
            let inner = name.strip_prefix("v(")?.strip_suffix(')')?;
            let (p, q) = inner.split_once(',')?;
            let v = (p.trim().parse().ok()?, q.trim().parse().ok()?);
            (normalize(v) == v && num_integer::gcd(v.0, v.1) == 1).then_some(v)
        }
    }
}

fn root_of(v: (i64, i64)) -> KClass {
    KClass::new(v.0.rem_euclid(2), v.1.rem_euclid(2))
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Object with Farey vector `v` whose class is `class`, choosing the shift of
/// the right parity nearest to `near`.
fn object_with_class(v: (i64, i64), class: KClass, near: i64) -> ObjectId {
    let root = root_of(v);
    let odd = class == -root;
    let shift = if (near.rem_euclid(2) == 1) == odd { near } else { near + 1 };
    ObjectId::new(name_of(v), shift)
}

impl GinzburgA2 {
    fn vectors(&self, h: &Heart) -> Result<[(i64, i64); 2], DriverError> {
        let u = vector_of(&h.simples[0].name).ok_or_else(|| DriverError::Untracked(h.simples[0].to_string()))?;
        let v = vector_of(&h.simples[1].name).ok_or_else(|| DriverError::Untracked(h.simples[1].to_string()))?;
        if det(u, v).abs() != 1 {
            return Err(DriverError::NotAHeart(h.to_string()));
        }
        Ok([u, v])
    }

    fn make(&self, simples: [ObjectId; 2]) -> Result<Heart, DriverError> {
        let classes = [self.kclass_of(&simples[0])?, self.kclass_of(&simples[1])?];
        Ok(Heart { simples, classes, ext: [[0, 1], [1, 0]], spherical: [true, true] })
    }

    /// Matrix of the spherical twist at a basis simple, derived from
    /// `[T_a x] = [x] - chi(a, x) [a]`.
    fn twist_matrix(a: usize) -> [[i64; 2]; 2] {
        let mut m = [[0; 2]; 2];
        for j in 0..2 {
            // column j is the image of basis vector j
            m[0][j] = i64::from(j == 0);
            m[1][j] = i64::from(j == 1);
            m[a][j] -= EULER[a][j];
        }
        m
    }
}

impl CategoryModel for GinzburgA2 {
    fn name(&self) -> &'static str {
        "ginzburg"
    }

    fn seed_heart(&self) -> Heart {
        self.make([ObjectId::new("s", 0), ObjectId::new("t", 0)]).expect("seed heart")
    }

    fn base_class(&self, name: &str) -> Option<KClass> {
        vector_of(name).map(root_of)
    }

    fn tilt(&self, h: &Heart, at: usize, dir: TiltDir) -> Result<Heart, DriverError> {
        let [u, v] = {
            let w = self.vectors(h)?;
            [w[at], w[1 - at]]
        };
        let v = if det(u, v) == 1 { v } else { (-v.0, -v.1) };
        let (dx, new_v) = match dir {
            TiltDir::Forward => (1, (v.0 + u.0, v.1 + u.1)),
            TiltDir::Backward => (-1, (v.0 - u.0, v.1 - u.1)),
        };
        let class = h.classes[1 - at] + h.classes[at];
        let y = &h.simples[1 - at];
        let mut simples = h.simples.clone();
        simples[at] = h.simples[at].shifted(dx);
        simples[1 - at] = object_with_class(new_v, class, y.shift);
        self.make(simples)
    }

    fn heart_key(&self, h: &Heart) -> String {
        let mut n = [h.simples[0].name.as_str(), h.simples[1].name.as_str()];
        n.sort();
        format!("{}|{}", n[0], n[1])
    }

    fn hn_factors(&self, x: &ObjectId, cell: &Cell) -> Result<Vec<(ObjectId, u32)>, DriverError> {
        if cell.contains_stable(&x.name) {
            Ok(vec![(x.clone(), 1)])
        } else {
            Err(DriverError::Untracked(x.to_string()))
        }
    }

    /// Simples of all hearts within `depth` tilts of the seed.
    fn enumerate(&self, depth: u32) -> Vec<ObjectId> {
        let mut seen = BTreeSet::new();
        let mut objs = BTreeSet::new();
        let mut queue = VecDeque::from([(self.seed_heart(), 0u32)]);
        while let Some((h, k)) = queue.pop_front() {
            if !seen.insert(self.heart_key(&h)) {
                continue;
            }
            for s in &h.simples {
                objs.insert(s.name.clone());
            }
            if k == depth {
                continue;
            }
            for at in 0..2 {
                for dir in [TiltDir::Forward, TiltDir::Backward] {
                    if let Ok(t) = self.tilt(&h, at, dir) {
                        queue.push_back((t, k + 1));
                    }
                }
            }
        }
        objs.into_iter().map(|n| ObjectId::new(n, 0)).collect()
    }

    fn twist_generators(&self) -> Vec<(String, [[i64; 2]; 2])> {
        vec![("T_s".into(), Self::twist_matrix(0)), ("T_t".into(), Self::twist_matrix(1))]
    }
}
