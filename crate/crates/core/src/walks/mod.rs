//! Random walks on Speiser graphs and the A2 mass map.

mod thurston;

pub use thurston::{thurston_map_a2, thurston_region_check, MassVector, ThurstonError, REGION_TOL};

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::drivers::CategoryModel;
use crate::lattice::InnerProduct;
use crate::scanner::{bfs_distances, scan, wall_arc, Atlas};

/// Default cap on `trials * max_steps`.
pub const DEFAULT_BUDGET: u64 = 1 << 34;
pub const DELTA: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("trials * max_steps = {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("trials and max_steps must be positive")]
    Empty,
    #[error("speiser graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Driver(#[from] crate::drivers::DriverError),
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkConfig {
    pub depth: u32,
    pub trials: u64,
    pub max_steps: u64,
    pub seed: u64,
    pub budget: u64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        Self { depth: 6, trials: 100_000, max_steps: 100_000, seed: 1, budget: DEFAULT_BUDGET }
    }
}

impl WalkConfig {
    fn check(&self) -> Result<(), WalkError> {
        if self.trials == 0 || self.max_steps == 0 {
            return Err(WalkError::Empty);
        }
        let needed = self.trials.saturating_mul(self.max_steps);
        if needed > self.budget {
            return Err(WalkError::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub to: String,
    pub wall: String,
    pub length: f64,
    pub prob: f64,
}

/// Arc-weighted walk on a truncated Speiser graph.
#[derive(Clone, Debug, Serialize)]
pub struct Transitions {
    pub origin: String,
    pub rows: BTreeMap<String, Vec<Step>>,
    /// Frontier cells; the walk stops on reaching one.
    pub absorbing: Vec<String>,
    /// Weight of the virtual absorbing edge at each truncated vertex.
    pub tail: BTreeMap<String, f64>,
}

/// Per-vertex normalised wall-arc lengths. Frontier cells absorb; a cell
/// whose walls were cut off gets one virtual absorbing edge carrying the
/// arc length the kept walls miss.
pub fn transition_matrix(atlas: &Atlas, ip: &InnerProduct) -> Transitions {
    let mut raw: BTreeMap<String, Vec<(String, String, f64)>> = BTreeMap::new();
    for v in &atlas.speiser.vertices {
        raw.entry(v.clone()).or_default();
    }
    for (a, b, w) in &atlas.speiser.edges {
        let len = wall_arc(&atlas.walls[w].heart, ip).map_or(0.0, |arc| arc.length);
        raw.get_mut(a).unwrap().push((b.clone(), w.clone(), len));
        raw.get_mut(b).unwrap().push((a.clone(), w.clone(), len));
    }
    let absorbing: Vec<String> =
        atlas.cells.values().filter(|c| c.depth >= atlas.depth && atlas.depth > 0).map(|c| c.key.clone()).collect();
    let mut rows = BTreeMap::new();
    let mut tail = BTreeMap::new();
    for (v, edges) in raw {
        let kept: f64 = edges.iter().map(|e| e.2).sum();
        let cell = &atlas.cells[&v];
        let missing = if cell.complete { 0.0 } else { (1.0 - kept).max(0.0) };
        let total = kept + missing;
        if missing > 0.0 {
            tail.insert(v.clone(), missing / total);
        }
        let steps = edges
            .into_iter()
            .map(|(to, wall, length)| Step { prob: if total > 0.0 { length / total } else { 0.0 }, to, wall, length })
            .collect();
        rows.insert(v, steps);
    }
    Transitions { origin: atlas.seed_cell.clone(), rows, absorbing, tail }
}

/// Dense form used by the sampler: cumulative probabilities per vertex.
struct Chain {
    origin: usize,
    absorbing: Vec<bool>,
    cumulative: Vec<Vec<(f64, usize)>>,
}

impl Chain {
    fn new(t: &Transitions) -> Self {
        let index: BTreeMap<&str, usize> = t.rows.keys().enumerate().map(|(i, k)| (k.as_str(), i)).collect();
        let n = index.len();
        let sink = n;
        let mut absorbing = vec![false; n + 1];
        absorbing[sink] = true;
        for a in &t.absorbing {
            absorbing[index[a.as_str()]] = true;
        }
        let cumulative = t
            .rows
            .iter()
            .map(|(v, steps)| {
                let mut acc = 0.0;
                let mut out: Vec<(f64, usize)> = steps
                    .iter()
                    .map(|s| {
                        acc += s.prob;
                        (acc, index[s.to.as_str()])
                    })
                    .collect();
                if let Some(p) = t.tail.get(v) {
                    acc += p;
                    out.push((acc, sink));
                }
                out
            })
            .collect();
        Self { origin: index[t.origin.as_str()], absorbing, cumulative }
    }

    /// `Some(true)` on return, `Some(false)` on absorption, `None` if cut.
    fn trial(&self, rng: &mut ChaCha8Rng, max_steps: u64) -> Option<bool> {
        let mut at = self.origin;
        for _ in 0..max_steps {
            let row = &self.cumulative[at];
            let total = row.last()?.0;
            let u: f64 = rng.gen::<f64>() * total;
            at = row.iter().find(|(c, _)| u < *c).unwrap_or(row.last()?).1;
            if at == self.origin {
                return Some(true);
            }
            if self.absorbing[at] {
                return Some(false);
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReturnEstimate {
    pub depth: u32,
    pub return_prob: f64,
    pub stderr: f64,
    pub returned: u64,
    pub censored: u64,
}

/// Monte-Carlo `P(return to the origin before the frontier)`.
///
/// Trial `i` draws from stream `i` of the seeded generator, so the result
/// does not depend on scheduling.
pub fn estimate_return(atlas: &Atlas, ip: &InnerProduct, cfg: &WalkConfig) -> Result<Option<ReturnEstimate>, WalkError> {
    cfg.check()?;
    let dist = bfs_distances(&atlas.speiser, &atlas.seed_cell);
    if dist.len() != atlas.speiser.vertices.len() {
        return Err(WalkError::Disconnected);
    }
    if atlas.speiser.edges.is_empty() {
        return Ok(None);
    }
    let chain = Chain::new(&transition_matrix(atlas, ip));
    let (returned, censored) = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i);
            match chain.trial(&mut rng, cfg.max_steps) {
                Some(true) => (1u64, 0u64),
                Some(false) => (0, 0),
                None => (0, 1),
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = cfg.trials as f64;
    let p = returned as f64 / n;
    Ok(Some(ReturnEstimate {
        depth: atlas.depth,
        return_prob: p,
        stderr: (p * (1.0 - p) / n).sqrt(),
        returned,
        censored,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkVerdict {
    RecurrentSignature,
    TransientSignature,
    Inconclusive,
    Trivial,
}

impl std::fmt::Display for WalkVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::RecurrentSignature => "recurrent-signature",
            Self::TransientSignature => "transient-signature",
            Self::Inconclusive => "inconclusive",
            Self::Trivial => "TRIVIAL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkReport {
    pub schema: &'static str,
    pub driver: String,
    pub seed: u64,
    pub trials: u64,
    pub ladder: Vec<ReturnEstimate>,
    /// Return probability extrapolated to infinite depth.
    pub limit: f64,
    pub limit_stderr: f64,
    pub monotone: bool,
    pub verdict: WalkVerdict,
    /// True when the origin has infinite valence and was truncated.
    pub surrogate: bool,
}

impl WalkReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("walk report serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("depth,return_prob,stderr\n");
        for e in &self.ladder {
            s.push_str(&format!("{},{:.6},{:.6}\n", e.depth, e.return_prob, e.stderr));
        }
        s
    }
}

/// Escape probability modelled as `e(d) = e_inf + c / ln d` through the
/// last two rungs; returns `(1 - max(e_inf, 0), stderr)`.
pub fn extrapolate(ladder: &[ReturnEstimate]) -> (f64, f64) {
    match ladder {
        [] => (f64::NAN, f64::NAN),
        [only] => (only.return_prob, only.stderr),
        [.., a, b] => {
            let (la, lb) = ((a.depth.max(2) as f64).ln(), (b.depth.max(2) as f64).ln());
            let (ea, eb) = (1.0 - a.return_prob, 1.0 - b.return_prob);
            let k = lb - la;
            let e_inf = (lb * eb - la * ea) / k;
            let se = ((lb * b.stderr).powi(2) + (la * a.stderr).powi(2)).sqrt() / k;
            (1.0 - e_inf.max(0.0), se)
        }
    }
}

/// Recurrent: the ladder rises (each drop within two standard errors, net
/// rise beyond them) and extrapolates above `1 - DELTA`. Transient: the
/// last rung and the extrapolation both sit below `1 - DELTA`.
pub fn verdict(ladder: &[ReturnEstimate]) -> (WalkVerdict, bool, f64, f64) {
    if ladder.is_empty() {
        return (WalkVerdict::Trivial, true, f64::NAN, f64::NAN);
    }
    let joint = |a: &ReturnEstimate, b: &ReturnEstimate| 2.0 * (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
    let monotone = ladder.windows(2).all(|w| w[1].return_prob >= w[0].return_prob - joint(&w[0], &w[1]));
    let (first, last) = (&ladder[0], &ladder[ladder.len() - 1]);
    let rises = ladder.len() == 1 || last.return_prob - first.return_prob > joint(first, last);
    let (limit, se) = extrapolate(ladder);
    let v = if monotone && rises && limit > 1.0 - DELTA {
        WalkVerdict::RecurrentSignature
    } else if last.return_prob < 1.0 - DELTA && limit + 2.0 * se < 1.0 - DELTA {
        WalkVerdict::TransientSignature
    } else {
        WalkVerdict::Inconclusive
    };
    (v, monotone, limit, se)
}

/// Scans the driver at every rung of `depths` and estimates the walk type.
pub fn estimate_type<D: CategoryModel + ?Sized>(
    d: &D,
    ip: &InnerProduct,
    depths: &[u32],
    cfg: &WalkConfig,
) -> Result<WalkReport, WalkError> {
    let mut ladder = Vec::new();
    let mut surrogate = false;
    for &depth in depths {
        let atlas = scan(d, depth)?;
        surrogate |= atlas.cells.values().any(|c| !c.complete);
        match estimate_return(&atlas, ip, &WalkConfig { depth, ..cfg.clone() })? {
            Some(e) => ladder.push(e),
            None => {
                ladder.clear();
                break;
            }
        }
    }
    let (verdict, monotone, limit, limit_stderr) = verdict(&ladder);
    Ok(WalkReport {
        schema: "walk-report.v1",
        driver: d.name().to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        ladder,
        limit,
        limit_stderr,
        monotone,
        verdict,
        surrogate,
    })
}

#[cfg(test)]
mod tests;
