//! The four example categories behind one interface.

mod a2;
mod ginzburg;
mod heart;
mod lambda;
mod p1;

use serde::Serialize;

pub use a2::A2;
pub use ginzburg::GinzburgA2;
pub use heart::{Cell, CellSide, Heart, ObjectId, TiltDir};
pub use lambda::Lambda210;
pub use p1::P1;

use crate::lattice::KClass;

/// Longest cycle traced before a cell is declared non-closing.
pub const MAX_CELL_CYCLE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DriverError {
    #[error("unknown driver `{0}`")]
    UnknownDriver(String),
    #[error("unknown twist generator `{0}`")]
    UnknownGenerator(String),
    #[error("object `{0}` is not tracked by this driver")]
    Untracked(String),
    #[error("`{0}` is not a heart of this driver")]
    NotAHeart(String),
    #[error("cell through `{0}` did not close within {MAX_CELL_CYCLE} tilts")]
    OpenCell(String),
    #[error("K-class not conserved for `{0}`")]
    ClassMismatch(String),
}

/// Behaviour shared by all category drivers.
pub trait CategoryModel: Send + Sync {
    fn name(&self) -> &'static str;

    fn seed_heart(&self) -> Heart;

    /// Class of the object `name[0]`.
    fn base_class(&self, name: &str) -> Option<KClass>;

    fn kclass_of(&self, x: &ObjectId) -> Result<KClass, DriverError> {
        self.base_class(&x.name)
            .map(|c| c.shifted(x.shift))
            .ok_or_else(|| DriverError::Untracked(x.to_string()))
    }

    /// Simple tilt. Slot `at` of the result holds the shifted simple, the
    /// other slot holds the new simple.
    fn tilt(&self, h: &Heart, at: usize, dir: TiltDir) -> Result<Heart, DriverError>;

    fn heart_key(&self, h: &Heart) -> String {
        h.default_key()
    }

    fn cell_of(&self, h: &Heart, lower: usize) -> Result<Cell, DriverError> {
        trace_cell(self, h, lower)
    }

    /// Stable objects, up to shift, in the open cell where `h` is the heart
    /// and `h.simples[lower]` has the smaller phase.
    fn stable_set(&self, h: &Heart, lower: usize) -> Result<Vec<ObjectId>, DriverError> {
        Ok(self.cell_of(h, lower)?.stables)
    }

    /// Harder-Narasimhan factors of `x` in `cell`, by decreasing phase.
    fn hn_factors(&self, x: &ObjectId, cell: &Cell) -> Result<Vec<(ObjectId, u32)>, DriverError>;

    /// Tracked objects up to shift at truncation `depth`.
    fn enumerate(&self, depth: u32) -> Vec<ObjectId>;

    /// Human-readable chamber name for a cell.
    fn chamber_label(&self, cell: &Cell) -> String {
        cell.key.clone()
    }

    /// Autoequivalences as integer matrices on K-theory, columns being the
    /// images of the basis. Charges transform by composition.
    fn twist_generators(&self) -> Vec<(String, [[i64; 2]; 2])> {
        Vec::new()
    }

    /// Phases that are limits of other stable phases, given the phases of
    /// the listed stables of `cell`.
    fn accumulation_phases(&self, _cell: &Cell, _phases: &[(ObjectId, f64)]) -> Vec<Accumulation> {
        Vec::new()
    }

    /// Reason an object can never be a massless boundary simple.
    fn boundary_exclusion(&self, _name: &str) -> Option<&'static str> {
        None
    }

    /// `true` when every cell is finite and there are finitely many stables.
    fn finite_type(&self) -> bool {
        false
    }
}

/// Follow forward tilts at the lower simple until the starting side comes
/// back up to shift.
pub fn trace_cell<D: CategoryModel + ?Sized>(d: &D, h: &Heart, lower: usize) -> Result<Cell, DriverError> {
    let start = d.heart_key(h);
    let start_name = h.simples[lower].name.clone();
    let mut walls = vec![CellSide { heart: h.clone(), lower }];
    let mut stables = vec![h.simples[lower].clone()];
    let mut cur = h.clone();
    let mut low = lower;
    for _ in 0..MAX_CELL_CYCLE {
        cur = d.tilt(&cur, low, TiltDir::Forward)?;
        low = 1 - low;
        if d.heart_key(&cur) == start && cur.simples[low].name == start_name {
            let key = walls
                .iter()
                .map(|w| format!("{}/{}", d.heart_key(&w.heart), w.heart.simples[w.lower].name))
                .min()
                .unwrap_or_default();
            return Ok(Cell { key, walls, stables, complete: true });
        }
        stables.push(cur.simples[low].clone());
        walls.push(CellSide { heart: cur.clone(), lower: low });
    }
    Err(DriverError::OpenCell(h.to_string()))
}

/// Class rule of a simple tilt: the new simple has class `[y] + d [x]`.
pub fn expected_tilt_classes(h: &Heart, at: usize, dir: TiltDir) -> [KClass; 2] {
    let o = 1 - at;
    let d = match dir {
        TiltDir::Forward => h.ext[o][at],
        TiltDir::Backward => h.ext[at][o],
    } as i64;
    let mut out = [KClass::ZERO; 2];
    out[at] = -h.classes[at];
    out[o] = h.classes[o] + h.classes[at] * d;
    out
}

/// Check that the classes of `h` match the driver's class map.
pub fn check_heart_classes<D: CategoryModel + ?Sized>(d: &D, h: &Heart) -> Result<(), DriverError> {
    for i in 0..2 {
        if d.kclass_of(&h.simples[i])? != h.classes[i] {
            return Err(DriverError::ClassMismatch(h.simples[i].to_string()));
        }
    }
    if h.classes[0].det(&h.classes[1]).abs() != 1 {
        return Err(DriverError::NotAHeart(h.to_string()));
    }
    Ok(())
}

/// Check K-class conservation of an HN filtration.
pub fn check_hn_classes<D: CategoryModel + ?Sized>(
    d: &D,
    x: &ObjectId,
    factors: &[(ObjectId, u32)],
) -> Result<(), DriverError> {
    let mut sum = KClass::ZERO;
    for (f, m) in factors {
        sum = sum + d.kclass_of(f)? * (*m as i64);
    }
    if sum == d.kclass_of(x)? {
        Ok(())
    } else {
        Err(DriverError::ClassMismatch(x.to_string()))
    }
}

/// An accumulation point of the phase diagram, taken mod 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Accumulation {
    pub phase: f64,
    /// Stable phases approach from below.
    pub from_below: bool,
    /// Stable phases approach from above.
    pub from_above: bool,
}

/// Look up a driver by its command-line name.
pub fn driver_by_name(name: &str, depth: u32) -> Result<Box<dyn CategoryModel>, DriverError> {
    match name {
        "a2" => Ok(Box::new(A2)),
        "ginzburg" | "ginzburg-a2" | "g2a2" => Ok(Box::new(GinzburgA2)),
        "lambda" | "lambda210" => Ok(Box::new(Lambda210)),
        "p1" => Ok(Box::new(P1::new(depth.max(1)))),
        other => Err(DriverError::UnknownDriver(other.to_string())),
    }
}

pub const DRIVER_NAMES: [&str; 4] = ["a2", "ginzburg", "lambda", "p1"];

/// Apply a twist generator to a charge.
pub fn twist_kaction<D: CategoryModel + ?Sized>(
    d: &D,
    generator: &str,
    z: &crate::lattice::Charge<f64>,
) -> Result<crate::lattice::Charge<f64>, DriverError> {
    d.twist_generators()
        .into_iter()
        .find(|(n, _)| n == generator)
        .map(|(_, m)| z.compose(m))
        .ok_or_else(|| DriverError::UnknownGenerator(generator.to_string()))
}

/// Static driver data under `category-model.v1`.
#[derive(Debug, Serialize)]
pub struct CategoryModelExport {
    pub schema: &'static str,
    pub driver: &'static str,
    pub seed: Heart,
    pub objects: Vec<(ObjectId, KClass)>,
    pub twists: Vec<(String, [[i64; 2]; 2])>,
}

pub fn export_model<D: CategoryModel + ?Sized>(d: &D, depth: u32) -> CategoryModelExport {
    let objects = d
        .enumerate(depth)
        .into_iter()
        .filter_map(|o| d.kclass_of(&o).ok().map(|c| (o, c)))
        .collect();
    CategoryModelExport {
        schema: "category-model.v1",
        driver: d.name(),
        seed: d.seed_heart(),
        objects,
        twists: d.twist_generators(),
    }
}
