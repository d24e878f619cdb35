//! Bound path algebra with one arrow in each direction and one relation.
//!
//! Objects are the 2-spherical `s` and the exceptional `t_n`, `n` in Z, with
//! `[s] = (1, 0)` and `[t_n] = (n mod 2, 1)`. Hearts up to shift:
//!
//! * `A_n = <s[-n], t_n>` with `Ext^1 = 1` both ways;
//! * `B_{n,k} = <t_n, t_{n-1}[k]>`, `k >= 1`, where only `B_{n,1}` has an
//!   extension, `Ext^1(t_{n-1}[1], t_n) = 1`.

use super::{Cell, CategoryModel, DriverError, Heart, ObjectId, TiltDir};
use crate::lattice::KClass;

#[derive(Clone, Copy, Debug, Default)]
pub struct Lambda210;

pub(crate) fn t_name(n: i64) -> String {
    format!("t_{n}")
}

pub(crate) fn t_index(name: &str) -> Option<i64> {
    name.strip_prefix("t_")?.parse().ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    A { n: i64 },
    B { n: i64, k: i64 },
}

/// Heart type, shift `c` of the canonical representative, and the slot of
/// its first simple (`s[-n]` or `t_n`).
fn parse(h: &Heart) -> Result<(Kind, i64, usize), DriverError> {
    let bad = || DriverError::NotAHeart(h.to_string());
    let [x, y] = &h.simples;
    match (t_index(&x.name), t_index(&y.name)) {
        (Some(a), Some(b)) => {
            let (first, n) = if a > b { (0, a) } else { (1, b) };
            if (a - b).abs() != 1 {
                return Err(bad());
            }
            let c = h.simples[first].shift;
            let k = h.simples[1 - first].shift - c;
            if k < 1 {
                return Err(bad());
            }
            Ok((Kind::B { n, k }, c, first))
        }
        (None, Some(n)) if x.name == "s" => (x.shift - y.shift == -n).then_some((Kind::A { n }, y.shift, 0)).ok_or_else(bad),
        (Some(n), None) if y.name == "s" => (y.shift - x.shift == -n).then_some((Kind::A { n }, x.shift, 1)).ok_or_else(bad),
        _ => Err(bad()),
    }
}

impl Lambda210 {
    fn make(&self, simples: [ObjectId; 2]) -> Result<Heart, DriverError> {
        let classes = [self.kclass_of(&simples[0])?, self.kclass_of(&simples[1])?];
        let mut h = Heart { simples, classes, ext: [[0; 2]; 2], spherical: [false; 2] };
        for i in 0..2 {
            h.spherical[i] = h.simples[i].name == "s";
        }
        let (kind, _, first) = parse(&h)?;
        match kind {
            Kind::A { .. } => h.ext = [[0, 1], [1, 0]],
            Kind::B { k: 1, .. } => h.ext[1 - first][first] = 1,
            Kind::B { .. } => {}
        }
        Ok(h)
    }
}

/// Parse a cell into (is_triple, n).
fn cell_index(cell: &Cell) -> Option<(bool, i64)> {
    let n = cell.stables.iter().filter_map(|s| t_index(&s.name)).max()?;
    Some((cell.contains_stable("s"), n))
}

impl CategoryModel for Lambda210 {
    fn name(&self) -> &'static str {
        "lambda"
    }

    fn seed_heart(&self) -> Heart {
        self.make([ObjectId::new("s", 0), ObjectId::new(t_name(0), 0)]).expect("seed heart")
    }

    fn base_class(&self, name: &str) -> Option<KClass> {
        if name == "s" {
            return Some(KClass::new(1, 0));
        }
        t_index(name).map(|n| KClass::new(n.rem_euclid(2), 1))
    }

    fn tilt(&self, h: &Heart, at: usize, dir: TiltDir) -> Result<Heart, DriverError> {
        let (kind, c, first) = parse(h)?;
        let dx = if dir == TiltDir::Forward { 1 } else { -1 };
        let mut simples = h.simples.clone();
        simples[at] = h.simples[at].shifted(dx);
        let o = 1 - at;
        let d = match dir {
            TiltDir::Forward => h.ext[o][at],
            TiltDir::Backward => h.ext[at][o],
        };
        if d > 0 {
            simples[o] = match (kind, at == first, dir) {
                // A_n: the t-simple moves to t_{n-1} or t_{n+1}
                (Kind::A { n }, true, TiltDir::Forward) | (Kind::A { n }, false, TiltDir::Backward) => {
                    ObjectId::new(t_name(n - 1), c)
                }
                (Kind::A { n }, true, TiltDir::Backward) | (Kind::A { n }, false, TiltDir::Forward) => {
                    ObjectId::new(t_name(n + 1), c)
                }
                // B_{n,1}: the extension is s[1-n]
                (Kind::B { n, .. }, _, _) => ObjectId::new("s", 1 - n + c),
            };
        }
        self.make(simples)
    }

    fn hn_factors(&self, x: &ObjectId, cell: &Cell) -> Result<Vec<(ObjectId, u32)>, DriverError> {
        if self.base_class(&x.name).is_none() {
            return Err(DriverError::Untracked(x.to_string()));
        }
        if cell.contains_stable(&x.name) {
            return Ok(vec![(x.clone(), 1)]);
        }
        let untracked = || DriverError::Untracked(format!("{x} in cell {}", cell.key));
        let (triple, n) = cell_index(cell).ok_or_else(untracked)?;
        let c = x.shift;
        let t = |m: i64, sh: i64| (ObjectId::new(t_name(m), sh + c), 1);
        let s = |sh: i64| (ObjectId::new("s", sh + c), 1);
        match (triple, t_index(&x.name)) {
            (true, Some(m)) if m > n => {
                let r = m - n;
                let mut v = vec![t(n, 0)];
                v.extend((0..r).map(|i| s(-n - i)));
                Ok(v)
            }
            (true, Some(m)) if m < n - 1 => {
                let r = n - 1 - m;
                let mut v: Vec<_> = (0..r).map(|i| s(r - n - i)).collect();
                v.push(t(n - 1, 0));
                Ok(v)
            }
            (false, None) => {
                // s up to shift: in the chain cell s[1-n] splits as t_n, t_{n-1}[1]
                let base = 1 - n;
                let c = x.shift - base;
                Ok(vec![(ObjectId::new(t_name(n), c), 1), (ObjectId::new(t_name(n - 1), 1 + c), 1)])
            }
            _ => Err(untracked()),
        }
    }

    fn enumerate(&self, depth: u32) -> Vec<ObjectId> {
        let d = depth as i64;
        std::iter::once(ObjectId::new("s", 0))
            .chain((-d..=d).map(|n| ObjectId::new(t_name(n), 0)))
            .collect()
    }

    fn chamber_label(&self, cell: &Cell) -> String {
        match cell_index(cell) {
            Some((true, n)) => format!("triple:{n}"),
            Some((false, n)) => format!("chain:{n}"),
            None => cell.key.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drivers::{check_heart_classes, check_hn_classes, expected_tilt_classes};

    #[test]
    fn seed_triple() {
        let d = Lambda210;
        let h = d.seed_heart();
        let mut n: Vec<_> = d.stable_set(&h, 0).unwrap().into_iter().map(|o| o.name).collect();
        n.sort();
        assert_eq!(n, ["s", "t_-1", "t_0"]);
        let cell = d.cell_of(&h, 0).unwrap();
        assert_eq!(cell.walls.len(), 3);
        assert_eq!(d.chamber_label(&cell), "triple:0");
    }

    #[test]
    fn chain_cells_have_two_walls() {
        let d = Lambda210;
        let h = d.seed_heart();
        let b = d.tilt(&h, 1, TiltDir::Backward).unwrap();
        let lower = b.index_of("t_-1").unwrap();
        let cell = d.cell_of(&b, lower).unwrap();
        assert_eq!(cell.walls.len(), 2);
        assert_eq!(d.chamber_label(&cell), "chain:0");
    }

    #[test]
    fn tilts_invert_and_conserve_classes() {
        let d = Lambda210;
        let mut h = d.seed_heart();
        for step in 0..60usize {
            let at = (step * 5 / 2) % 2;
            let dir = if step % 3 == 2 { TiltDir::Backward } else { TiltDir::Forward };
            let t = d.tilt(&h, at, dir).unwrap();
            assert_eq!(t.classes, expected_tilt_classes(&h, at, dir), "{h} at {at} {dir:?}");
            check_heart_classes(&d, &t).unwrap();
            let back = if dir == TiltDir::Forward { TiltDir::Backward } else { TiltDir::Forward };
            assert_eq!(d.tilt(&t, at, back).unwrap(), h);
            h = t;
        }
    }

    #[test]
    fn hn_conserves_classes() {
        let d = Lambda210;
        let h = d.seed_heart();
        let cell = d.cell_of(&h, 0).unwrap();
        for m in -6..=6 {
            let x = ObjectId::new(t_name(m), 2);
            let f = d.hn_factors(&x, &cell).unwrap();
            check_hn_classes(&d, &x, &f).unwrap();
        }
        let b = d.tilt(&h, 1, TiltDir::Backward).unwrap();
        let chain = d.cell_of(&b, b.index_of("t_-1").unwrap()).unwrap();
        let s = ObjectId::new("s", 3);
        check_hn_classes(&d, &s, &d.hn_factors(&s, &chain).unwrap()).unwrap();
    }
}
