//! Breadth-first enumeration of cells, walls and chambers.

mod arcs;
mod graphs;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

pub use arcs::{wall_arc, WallArc};
pub use graphs::{bfs_distances, degrees, is_forest, to_dot, Graph};

use crate::drivers::{CategoryModel, DriverError, Heart, TiltDir};

#[derive(Clone, Debug, Serialize)]
pub struct CellInfo {
    pub key: String,
    pub chamber_label: String,
    /// Speiser distance from the seed cell.
    pub depth: u32,
    pub walls: Vec<String>,
    pub stables: Vec<String>,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallInfo {
    pub key: String,
    pub heart: Heart,
    pub true_wall: bool,
    /// Cell on each side, keyed by the name of the lower simple.
    pub sides: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Chamber {
    pub label: String,
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryPoint {
    pub name: String,
    pub walls: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedPoint {
    pub name: String,
    pub reason: String,
}

/// Everything found by [`scan`] up to the truncation depth.
#[derive(Clone, Debug, Serialize)]
pub struct Atlas {
    pub schema: &'static str,
    pub driver: String,
    pub depth: u32,
    pub seed_cell: String,
    pub cells: BTreeMap<String, CellInfo>,
    pub walls: BTreeMap<String, WallInfo>,
    pub chambers: Vec<Chamber>,
    pub speiser: Graph,
    pub exchange: Graph,
    pub boundary: Vec<BoundaryPoint>,
    pub excluded: Vec<ExcludedPoint>,
}

impl Atlas {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("atlas serialises")
    }

    pub fn boundary_names(&self) -> Vec<String> {
        self.boundary.iter().map(|b| b.name.clone()).collect()
    }
}

/// Cells within Speiser distance `depth` of the seed cell, with the walls
/// they touch, the chambers they form and both dual graphs.
pub fn scan<D: CategoryModel + ?Sized>(d: &D, depth: u32) -> Result<Atlas, DriverError> {
    let seed = d.seed_heart();
    let mut cells: BTreeMap<String, CellInfo> = BTreeMap::new();
    let mut walls: BTreeMap<String, WallInfo> = BTreeMap::new();
    let mut queue = VecDeque::from([(seed.clone(), 0usize, 0u32)]);
    let mut seed_cell = None;
    while let Some((h, lower, dist)) = queue.pop_front() {
        let cell = d.cell_of(&h, lower)?;
        if cells.contains_key(&cell.key) {
            continue;
        }
        seed_cell.get_or_insert_with(|| cell.key.clone());
        let mut wall_keys = Vec::with_capacity(cell.walls.len());
        for side in &cell.walls {
            let wk = d.heart_key(&side.heart);
            let w = walls.entry(wk.clone()).or_insert_with(|| WallInfo {
                key: wk.clone(),
                heart: side.heart.clone(),
                true_wall: side.heart.is_true_wall(),
                sides: BTreeMap::new(),
            });
            w.sides.insert(side.heart.simples[side.lower].name.clone(), cell.key.clone());
            wall_keys.push(wk);
            if dist < depth {
                queue.push_back((side.heart.clone(), 1 - side.lower, dist + 1));
            }
        }
        cells.insert(
            cell.key.clone(),
            CellInfo {
                key: cell.key.clone(),
                chamber_label: d.chamber_label(&cell),
                depth: dist,
                walls: wall_keys,
                stables: cell.stables.iter().map(|s| s.name.clone()).collect(),
                complete: cell.complete,
            },
        );
    }

    let mut speiser = Graph::default();
    for k in cells.keys() {
        speiser.add_vertex(k);
    }
    for w in walls.values() {
        if w.sides.len() == 2 {
            let v: Vec<&String> = w.sides.values().collect();
            speiser.add_edge(v[0], v[1], &w.key);
        }
    }

    let chambers = chambers_of(&cells, &walls);
    let exchange = exchange_graph(d, &walls)?;
    let (boundary, excluded) = boundary_points(d, depth, &walls);
    Ok(Atlas {
        schema: "atlas.v1",
        driver: d.name().to_string(),
        depth,
        seed_cell: seed_cell.unwrap_or_default(),
        cells,
        walls,
        chambers,
        speiser,
        exchange,
        boundary,
        excluded,
    })
}

/// Merge cells across walls without extensions.
fn chambers_of(cells: &BTreeMap<String, CellInfo>, walls: &BTreeMap<String, WallInfo>) -> Vec<Chamber> {
    let keys: Vec<&String> = cells.keys().collect();
    let index: BTreeMap<&String, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let n = p[j];
            p[j] = r;
            j = n;
        }
        r
    }
    for w in walls.values().filter(|w| !w.true_wall && w.sides.len() == 2) {
        let v: Vec<usize> = w.sides.values().map(|k| index[k]).collect();
        let (a, b) = (find(&mut parent, v[0]), find(&mut parent, v[1]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push((*k).clone());
    }
    groups
        .into_values()
        .map(|cells_in| Chamber { label: cells[&cells_in[0]].chamber_label.clone(), cells: cells_in })
        .collect()
}

/// Hearts up to shift, joined by forward simple tilts. Each tilt and its
/// inverse give one edge, so interior vertices have degree four.
fn exchange_graph<D: CategoryModel + ?Sized>(d: &D, walls: &BTreeMap<String, WallInfo>) -> Result<Graph, DriverError> {
    let mut g = Graph::default();
    for k in walls.keys() {
        g.add_vertex(k);
    }
    for w in walls.values() {
        for at in 0..2 {
            let t = d.tilt(&w.heart, at, TiltDir::Forward)?;
            let tk = d.heart_key(&t);
            if walls.contains_key(&tk) {
                g.add_edge(&w.key, &tk, &format!("{}+", w.heart.simples[at].name));
            }
        }
    }
    Ok(g)
}

fn boundary_points<D: CategoryModel + ?Sized>(
    d: &D,
    depth: u32,
    walls: &BTreeMap<String, WallInfo>,
) -> (Vec<BoundaryPoint>, Vec<ExcludedPoint>) {
    let tracked: BTreeSet<String> = d.enumerate(depth).into_iter().map(|o| o.name).collect();
    let mut adj: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for w in walls.values() {
        for s in &w.heart.simples {
            adj.entry(s.name.clone()).or_default().push(w.key.clone());
        }
    }
    let mut excluded = Vec::new();
    for name in &tracked {
        if let Some(reason) = d.boundary_exclusion(name) {
            excluded.push(ExcludedPoint { name: name.clone(), reason: reason.to_string() });
        }
    }
    let boundary = adj
        .into_iter()
        .filter(|(n, _)| tracked.contains(n) && d.boundary_exclusion(n).is_none())
        .map(|(name, walls)| BoundaryPoint { name, walls })
        .collect();
    (boundary, excluded)
}

#[cfg(test)]
mod tests;
