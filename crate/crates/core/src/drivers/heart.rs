use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::KClass;

/// An indecomposable object up to isomorphism: a driver symbol and a shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectId {
    pub name: String,
    pub shift: i64,
}

impl ObjectId {
    pub fn new(name: impl Into<String>, shift: i64) -> Self {
        ObjectId { name: name.into(), shift }
    }

    pub fn shifted(&self, n: i64) -> Self {
        ObjectId { name: self.name.clone(), shift: self.shift + n }
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}[{}]", self.name, self.shift)
        }
    }
}

/// A finite-length heart with two simples.
///
/// `ext[i][j]` is `dim Ext^1(simple_i, simple_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Heart {
    pub simples: [ObjectId; 2],
    pub classes: [KClass; 2],
    pub ext: [[u32; 2]; 2],
    pub spherical: [bool; 2],
}

impl Heart {
    pub fn other(i: usize) -> usize {
        1 - i
    }

    /// Whether crossing this cell-wall changes the stable set.
    pub fn is_true_wall(&self) -> bool {
        self.ext[0][1] + self.ext[1][0] > 0
    }

    pub fn shifted(&self, n: i64) -> Heart {
        Heart {
            simples: [self.simples[0].shifted(n), self.simples[1].shifted(n)],
            classes: [self.classes[0].shifted(n), self.classes[1].shifted(n)],
            ext: self.ext,
            spherical: self.spherical,
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.simples.iter().position(|s| s.name == name)
    }

    /// Default key mod shift: names sorted, relative shift of the second.
    pub fn default_key(&self) -> String {
        let (a, b) = if self.simples[0].name <= self.simples[1].name {
            (&self.simples[0], &self.simples[1])
        } else {
            (&self.simples[1], &self.simples[0])
        };
        format!("{}|{}[{}]", a.name, b.name, b.shift - a.shift)
    }
}

impl fmt::Display for Heart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.simples[0], self.simples[1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TiltDir {
    /// The tilted simple `x` becomes `x[1]`.
    Forward,
    /// The tilted simple `x` becomes `x[-1]`.
    Backward,
}

/// One side of a cell-wall: a heart together with the simple of smaller
/// phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSide {
    pub heart: Heart,
    pub lower: usize,
}

/// A cell of the stability space: the hearts met when rotating phases
/// through one full turn, with the stables that appear as lower simples.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub key: String,
    pub walls: Vec<CellSide>,
    pub stables: Vec<ObjectId>,
    /// `false` when the cycle is infinite and only a truncation is listed.
    pub complete: bool,
}

impl Cell {
    pub fn contains_stable(&self, name: &str) -> bool {
        self.stables.iter().any(|s| s.name == name)
    }
}
