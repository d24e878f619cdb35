//! Coherent sheaves on the projective line.
//!
//! Tracked objects are the line bundles `O(k)` with `[O(k)] = (1, k)` and the
//! skyscraper class `O_x` with `[O_x] = (0, 1)`. Hearts up to shift are
//! `L_{k,n} = <O(k+1), O(k)[n]>`, `n >= 1`; `L_{k,1}` is the Kronecker heart
//! with `Ext^1(O(k)[1], O(k+1)) = 2`, the others are semisimple.
//!
//! The geometric side of the Kronecker walls is a single cell containing
//! every line bundle and the skyscraper. It is infinite, so it is listed
//! truncated to `|k| <= depth`.

use super::{trace_cell, Accumulation, Cell, CategoryModel, CellSide, DriverError, Heart, ObjectId, TiltDir};
use crate::lattice::KClass;

pub const SKYSCRAPER: &str = "O_x";
pub const CLASSICAL: &str = "classical";

#[derive(Clone, Copy, Debug)]
pub struct P1 {
    /// Truncation of the classical cell.
    pub depth: u32,
}

impl Default for P1 {
    fn default() -> Self {
        P1 { depth: 8 }
    }
}

pub(crate) fn line(k: i64) -> String {
    format!("O({k})")
}

pub(crate) fn line_index(name: &str) -> Option<i64> {
    name.strip_prefix("O(")?.strip_suffix(')')?.parse().ok()
}

/// `(k, n, shift, slot of O(k+1))` for `L_{k,n}[shift]`.
fn parse(h: &Heart) -> Result<(i64, i64, i64, usize), DriverError> {
    let bad = || DriverError::NotAHeart(h.to_string());
    let a = line_index(&h.simples[0].name).ok_or_else(bad)?;
    let b = line_index(&h.simples[1].name).ok_or_else(bad)?;
    if (a - b).abs() != 1 {
        return Err(bad());
    }
    let hi = if a > b { 0 } else { 1 };
    let c = h.simples[hi].shift;
    let n = h.simples[1 - hi].shift - c;
    if n < 1 {
        return Err(bad());
    }
    Ok((a.min(b), n, c, hi))
}

impl P1 {
    pub fn new(depth: u32) -> Self {
        P1 { depth }
    }

    fn make(&self, simples: [ObjectId; 2]) -> Result<Heart, DriverError> {
        let classes = [self.kclass_of(&simples[0])?, self.kclass_of(&simples[1])?];
        let mut h = Heart { simples, classes, ext: [[0; 2]; 2], spherical: [false; 2] };
        let (_, n, _, hi) = parse(&h)?;
        if n == 1 {
            h.ext[1 - hi][hi] = 2;
        }
        Ok(h)
    }

    /// The Kronecker heart `L_{k,1}`.
    pub fn kronecker(&self, k: i64) -> Heart {
        self.make([ObjectId::new(line(k + 1), 0), ObjectId::new(line(k), 1)]).expect("kronecker heart")
    }

    fn classical_cell(&self) -> Cell {
        let d = self.depth as i64;
        let walls = (-d..d).map(|k| CellSide { heart: self.kronecker(k), lower: 0 }).collect();
        // ordered by |k| so truncated families grow outwards
        let mut stables = vec![ObjectId::new(SKYSCRAPER, 0), ObjectId::new(line(0), 0)];
        for k in 1..=d {
            stables.push(ObjectId::new(line(k), 0));
            stables.push(ObjectId::new(line(-k), 0));
        }
        Cell { key: CLASSICAL.into(), walls, stables, complete: false }
    }
}

impl CategoryModel for P1 {
    fn name(&self) -> &'static str {
        "p1"
    }

    fn seed_heart(&self) -> Heart {
        self.kronecker(-1)
    }

    fn base_class(&self, name: &str) -> Option<KClass> {
        if name == SKYSCRAPER {
            return Some(KClass::new(0, 1));
        }
        line_index(name).map(|k| KClass::new(1, k))
    }

    fn tilt(&self, h: &Heart, at: usize, dir: TiltDir) -> Result<Heart, DriverError> {
        let (k, n, c, hi) = parse(h)?;
        let dx = if dir == TiltDir::Forward { 1 } else { -1 };
        let mut simples = h.simples.clone();
        simples[at] = h.simples[at].shifted(dx);
        if n == 1 {
            match (at == hi, dir) {
                (true, TiltDir::Forward) => simples[1 - at] = ObjectId::new(line(k + 2), c),
                (false, TiltDir::Backward) => simples[1 - at] = ObjectId::new(line(k - 1), c + 1),
                _ => {}
            }
        }
        self.make(simples)
    }

    fn cell_of(&self, h: &Heart, lower: usize) -> Result<Cell, DriverError> {
        let (_, n, _, hi) = parse(h)?;
        if n == 1 && lower == hi {
            Ok(self.classical_cell())
        } else {
            trace_cell(self, h, lower)
        }
    }

    fn hn_factors(&self, x: &ObjectId, cell: &Cell) -> Result<Vec<(ObjectId, u32)>, DriverError> {
        self.base_class(&x.name).ok_or_else(|| DriverError::Untracked(x.to_string()))?;
        if cell.key == CLASSICAL || cell.contains_stable(&x.name) {
            return Ok(vec![(x.clone(), 1)]);
        }
        let k = cell
            .stables
            .iter()
            .filter_map(|s| line_index(&s.name))
            .min()
            .ok_or_else(|| DriverError::Untracked(x.to_string()))?;
        let c = x.shift;
        let o = |j: i64, sh: i64, m: i64| (ObjectId::new(line(j), sh + c), m as u32);
        match line_index(&x.name) {
            None => Ok(vec![o(k + 1, 0, 1), o(k, 1, 1)]),
            Some(m) if m > k + 1 => Ok(vec![o(k + 1, 0, m - k), o(k, 1, m - k - 1)]),
            Some(m) => Ok(vec![o(k + 1, -1, k - m), o(k, 0, k + 1 - m)]),
        }
    }

    fn enumerate(&self, depth: u32) -> Vec<ObjectId> {
        let d = depth as i64;
        (-d..=d)
            .map(|k| ObjectId::new(line(k), 0))
            .chain(std::iter::once(ObjectId::new(SKYSCRAPER, 0)))
            .collect()
    }

    /// In the classical cell `O(n)` tends to the skyscraper phase from
    /// below as `n` grows, and `O(-n)[1]` from above, so both sides
    /// accumulate mod 1.
    fn accumulation_phases(&self, cell: &Cell, phases: &[(ObjectId, f64)]) -> Vec<Accumulation> {
        if cell.key != CLASSICAL {
            return Vec::new();
        }
        phases
            .iter()
            .filter(|(o, _)| o.name == SKYSCRAPER)
            .map(|(_, p)| Accumulation { phase: p.rem_euclid(1.0), from_below: true, from_above: true })
            .collect()
    }

    fn boundary_exclusion(&self, name: &str) -> Option<&'static str> {
        (name == SKYSCRAPER).then_some("skyscraper is stable but never simple in an algebraic heart")
    }

    fn chamber_label(&self, cell: &Cell) -> String {
        if cell.key == CLASSICAL {
            return CLASSICAL.into();
        }
        let k = cell.stables.iter().filter_map(|s| line_index(&s.name)).min();
        k.map(|k| format!("chain:{k}")).unwrap_or_else(|| cell.key.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drivers::{check_heart_classes, check_hn_classes, expected_tilt_classes};

    #[test]
    fn skyscraper_splits_in_chain_chamber() {
        let d = P1::new(4);
        let h = d.kronecker(0);
        let cell = d.cell_of(&h, 1).unwrap();
        assert_eq!(cell.walls.len(), 2);
        let x = ObjectId::new(SKYSCRAPER, 0);
        let f = d.hn_factors(&x, &cell).unwrap();
        assert_eq!(f, vec![(ObjectId::new("O(1)", 0), 1), (ObjectId::new("O(0)", 1), 1)]);
        check_hn_classes(&d, &x, &f).unwrap();
        for m in -5..=5 {
            let o = ObjectId::new(line(m), -1);
            check_hn_classes(&d, &o, &d.hn_factors(&o, &cell).unwrap()).unwrap();
        }
    }

    #[test]
    fn classical_cell_is_truncated() {
        let d = P1::new(3);
        let c = d.cell_of(&d.seed_heart(), 0).unwrap();
        assert!(!c.complete);
        assert_eq!(c.walls.len(), 6);
        assert_eq!(c.stables.len(), 8);
    }

    #[test]
    fn tilts_invert_and_conserve_classes() {
        let d = P1::default();
        let mut h = d.seed_heart();
        for step in 0..60usize {
            let at = (step * 3 / 2) % 2;
            let dir = if step % 5 == 3 { TiltDir::Backward } else { TiltDir::Forward };
            let t = d.tilt(&h, at, dir).unwrap();
            assert_eq!(t.classes, expected_tilt_classes(&h, at, dir), "{h} at {at} {dir:?}");
            check_heart_classes(&d, &t).unwrap();
            let back = if dir == TiltDir::Forward { TiltDir::Backward } else { TiltDir::Forward };
            assert_eq!(d.tilt(&t, at, back).unwrap(), h);
            h = t;
        }
    }
}
