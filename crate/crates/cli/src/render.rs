//! SVG pictures of an atlas in the unit disk.
//!
//! Cells sit on a radial tree layout of the Speiser graph, boundary points
//! on the circle, and cell-walls run between the boundary points carried by
//! their simples.

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::TAU;
use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use stabscan::scanner::Atlas;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Style {
    Schematic,
    Poincare,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Layers {
    pub chambers: bool,
    pub walls: bool,
    pub speiser: bool,
    pub exchange: bool,
    pub labels: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Self { chambers: true, walls: true, speiser: true, exchange: true, labels: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderSpec {
    pub style: Style,
    pub layers: Layers,
    pub palette: Vec<String>,
    /// Width and height in pixels.
    pub size: u32,
    /// Allow the Poincare style for a parabolic component.
    pub force_poincare: bool,
    /// Fixed boundary angles in turns, by object name.
    pub anchors: BTreeMap<String, f64>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            style: Style::Schematic,
            layers: Layers::default(),
            palette: ["#fde0c5", "#c6e2f5", "#d5ecc2", "#eadcf4", "#fbf3b8", "#f6c8d2"].map(String::from).to_vec(),
            size: 600,
            force_poincare: false,
            anchors: BTreeMap::new(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("poincare style needs a hyperbolic component; {0} is parabolic (set force_poincare to override)")]
    StyleNotPermitted(String),
    #[error("empty palette")]
    EmptyPalette,
}

/// Drivers whose quotient component is uniformised by the disk.
pub fn is_hyperbolic(driver: &str) -> bool {
    driver == "ginzburg"
}

/// Upper half-plane to disk, inverse of `w -> i(1 + w)/(1 - w)`.
pub fn to_disk(x: Complex64) -> Complex64 {
    let i = Complex64::i();
    (x - i) / (x + i)
}

fn fmt6(x: f64) -> String {
    let r = (x * 1e6).round() / 1e6 + 0.0;
    format!("{r:.6}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Positions in the disk, with y pointing down as in SVG.
pub struct Layout {
    pub cells: BTreeMap<String, Complex64>,
    pub boundary: BTreeMap<String, Complex64>,
    pub excluded: BTreeMap<String, Complex64>,
}

/// Planar radial layout. Each cell's walls, in their cyclic order, split
/// the cell's angular sector; the boundary point shared by two consecutive
/// walls sits on the circle where their slots meet.
pub fn layout(atlas: &Atlas, style: Style, anchors: &BTreeMap<String, f64>) -> Layout {
    let root = atlas.seed_cell.as_str();
    // BFS tree, remembering the wall each child was reached through
    let mut parent: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
    let mut order = vec![root];
    let mut depth: BTreeMap<&str, u32> = BTreeMap::from([(root, 0)]);
    let mut queue = VecDeque::from([root]);
    let by_wall: BTreeMap<(&str, &str), &str> = atlas
        .speiser
        .edges
        .iter()
        .flat_map(|(a, b, w)| [((a.as_str(), w.as_str()), b.as_str()), ((b.as_str(), w.as_str()), a.as_str())])
        .collect();
    while let Some(v) = queue.pop_front() {
        let Some(cell) = atlas.cells.get(v) else { continue };
        for w in &cell.walls {
            if let Some(&n) = by_wall.get(&(v, w.as_str())) {
                if !depth.contains_key(n) {
                    depth.insert(n, depth[v] + 1);
                    parent.insert(n, (v, w.as_str()));
                    order.push(n);
                    queue.push_back(n);
                }
            }
        }
    }

    // slots of a cell after its parent wall; None marks a truncation gap
    let slots = |v: &str| -> Vec<Option<&str>> {
        let cell = &atlas.cells[v];
        let mut ws: Vec<Option<&str>> = cell.walls.iter().map(|w| Some(w.as_str())).collect();
        if !cell.complete {
            ws.push(None);
        }
        if let Some((_, pw)) = parent.get(v) {
            if let Some(i) = ws.iter().position(|w| *w == Some(*pw)) {
                ws.rotate_left(i);
                ws.remove(0);
            }
        }
        ws
    };
    let child_of = |v: &str, w: &str| by_wall.get(&(v, w)).copied().filter(|n| parent.get(n).map(|p| p.0) == Some(v) && parent[n].1 == w);

    let mut weight: BTreeMap<&str, f64> = BTreeMap::new();
    for &v in order.iter().rev() {
        let total: f64 = slots(v).iter().map(|s| s.and_then(|w| child_of(v, w)).map_or(1.0, |c| weight[c])).sum();
        weight.insert(v, total.max(1.0));
    }

    let simples = |w: &str| -> [&str; 2] {
        let h = &atlas.walls[w].heart;
        [h.simples[0].name.as_str(), h.simples[1].name.as_str()]
    };
    let shared = |a: &str, b: &str| -> Option<&str> {
        let (x, y) = (simples(a), simples(b));
        x.into_iter().find(|n| y.contains(n))
    };
    let other = |w: &str, not: Option<&str>| -> Option<&str> { simples(w).into_iter().find(|n| Some(*n) != not) };

    let max_depth = depth.values().copied().max().unwrap_or(0) as f64;
    let radius = |d: u32| match style {
        Style::Schematic => 0.85 * d as f64 / (max_depth + 1.0),
        Style::Poincare => (d as f64 * 0.5).tanh(),
    };
    let start = std::f64::consts::FRAC_PI_2;
    let mut sector: BTreeMap<&str, (f64, f64)> = BTreeMap::from([(root, (start, start + TAU))]);
    let mut cells = BTreeMap::new();
    let mut angle_of: BTreeMap<String, f64> = BTreeMap::new();
    let mut gaps: Vec<f64> = Vec::new();
    for &v in &order {
        let (a, b) = sector[v];
        cells.insert(v.to_string(), Complex64::from_polar(radius(depth[v]), 0.5 * (a + b)));
        let ss = slots(v);
        let cyclic = !parent.contains_key(v);
        let mut at = a;
        for (i, s) in ss.iter().enumerate() {
            let child = s.and_then(|w| child_of(v, w));
            let width = (b - a) * child.map_or(1.0, |c| weight[c]) / weight[v];
            match child {
                Some(c) => {
                    sector.insert(c, (at, at + width));
                }
                None if s.is_none() => gaps.push(at + 0.5 * width),
                None => {}
            }
            at += width;
            let next = if i + 1 < ss.len() {
                Some(ss[i + 1])
            } else if cyclic {
                Some(ss[0])
            } else {
                None
            };
            let name = match (s, next) {
                (Some(x), Some(Some(y))) => shared(x, y),
                (Some(x), Some(None)) => other(x, i.checked_sub(1).and_then(|j| ss[j]).and_then(|p| shared(p, x))),
                (None, Some(Some(y))) => other(y, ss.get(i + 2).copied().flatten().and_then(|n| shared(y, n))),
                _ => None,
            };
            if let Some(n) = name {
                angle_of.entry(n.to_string()).or_insert(at);
            }
        }
    }
    for k in atlas.cells.keys() {
        cells.entry(k.clone()).or_insert(Complex64::new(0.0, 0.0));
    }

    let n = atlas.boundary.len().max(1) as f64;
    let boundary: BTreeMap<String, Complex64> = atlas
        .boundary
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let angle = anchors
                .get(&b.name)
                .map(|t| t * TAU)
                .or_else(|| angle_of.get(&b.name).copied())
                .unwrap_or(TAU * i as f64 / n);
            (b.name.clone(), Complex64::from_polar(1.0, angle))
        })
        .collect();
    // excluded points go in a truncation gap, else the widest gap
    let mut angles: Vec<f64> = boundary.values().map(|z| z.arg().rem_euclid(TAU)).collect();
    angles.sort_by(f64::total_cmp);
    let widest = match angles.len() {
        0 => 0.0,
        k => (0..k)
            .map(|i| {
                let a = angles[i];
                let b = if i + 1 < k { angles[i + 1] } else { angles[0] + TAU };
                (b - a, 0.5 * (a + b))
            })
            .max_by(|x, y| x.0.total_cmp(&y.0))
            .unwrap()
            .1,
    };
    let spot = gaps.first().copied().unwrap_or(widest);
    let excluded = atlas
        .excluded
        .iter()
        .map(|e| {
            let angle = anchors.get(&e.name).map_or(spot, |t| t * TAU);
            (e.name.clone(), Complex64::from_polar(1.0, angle))
        })
        .collect();
    Layout { cells, boundary, excluded }
}

/// SVG path from `p` to `q`: a chord, or the hyperbolic geodesic.
pub fn edge_path(p: Complex64, q: Complex64, style: Style, scale: f64) -> String {
    let s = |z: Complex64| format!("{} {}", fmt6(z.re * scale), fmt6(z.im * scale));
    let cross = p.re * q.im - p.im * q.re;
    if style == Style::Schematic || cross.abs() < 1e-9 {
        return format!("M {} L {}", s(p), s(q));
    }
    // centre c with 2 c.p = |p|^2 + 1 and 2 c.q = |q|^2 + 1
    let (a, b) = ((p.norm_sqr() + 1.0) / 2.0, (q.norm_sqr() + 1.0) / 2.0);
    let det = p.re * q.im - p.im * q.re;
    let c = Complex64::new((a * q.im - b * p.im) / det, (p.re * b - q.re * a) / det);
    let r = (c - p).norm();
    let (u, v) = (p - c, q - c);
    let sweep = u.re * v.im - u.im * v.re > 0.0;
    format!("M {} A {} {} 0 0 {} {}", s(p), fmt6(r * scale), fmt6(r * scale), u8::from(sweep), s(q))
}

pub fn render_svg(atlas: &Atlas, spec: &RenderSpec) -> Result<String, RenderError> {
    if spec.style == Style::Poincare && !spec.force_poincare && !is_hyperbolic(&atlas.driver) {
        return Err(RenderError::StyleNotPermitted(atlas.driver.clone()));
    }
    if spec.palette.is_empty() {
        return Err(RenderError::EmptyPalette);
    }
    let lay = layout(atlas, spec.style, &spec.anchors);
    let half = spec.size as f64 / 2.0;
    let scale = half * 0.9;
    let pt = |z: Complex64| (fmt6(z.re * scale), fmt6(z.im * scale));
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="{o} {o} {s} {s}">"#,
        s = spec.size,
        o = fmt6(-half)
    );
    let disclaimer = match (spec.style, is_hyperbolic(&atlas.driver)) {
        (Style::Poincare, true) => "hyperbolic component; disk metric is the uniformising one",
        (Style::Poincare, false) => "parabolic component drawn in the disk by override; not holomorphically accurate",
        (Style::Schematic, true) => "schematic layout; not the uniformising metric",
        (Style::Schematic, false) => "parabolic component; the disk is a schematic, not holomorphically accurate",
    };
    let _ = writeln!(
        out,
        r#"<metadata>driver={} depth={} style={:?} note="{}"</metadata>"#,
        xml_escape(&atlas.driver),
        atlas.depth,
        spec.style,
        disclaimer
    );
    let _ = writeln!(out, r##"<circle cx="0" cy="0" r="{}" fill="#fafafa" stroke="#000000" stroke-width="1.5"/>"##, fmt6(scale));

    if spec.layers.walls {
        let _ = writeln!(out, r##"<g id="walls" fill="none" stroke="#333333" stroke-width="1">"##);
        // shifted copies of a wall share its endpoints; draw each once
        let mut drawn = std::collections::BTreeSet::new();
        for w in atlas.walls.values() {
            let [a, b] = [&w.heart.simples[0].name, &w.heart.simples[1].name];
            if let (Some(&p), Some(&q)) = (lay.boundary.get(a), lay.boundary.get(b)) {
                let d = edge_path(p, q, spec.style, scale);
                if drawn.insert((d.clone(), w.true_wall)) {
                    let dash = if w.true_wall { "" } else { r#" stroke-dasharray="4 3""# };
                    let _ = writeln!(out, r#"<path d="{d}"{dash}/>"#);
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }
    if spec.layers.speiser {
        let _ = writeln!(out, r##"<g id="speiser" fill="none" stroke="#d62728" stroke-width="1.5">"##);
        for (a, b, _) in &atlas.speiser.edges {
            let _ = writeln!(out, r#"<path d="{}"/>"#, edge_path(lay.cells[a], lay.cells[b], spec.style, scale));
        }
        let _ = writeln!(out, "</g>");
    }
    if spec.layers.exchange {
        let mid: BTreeMap<&String, Complex64> = atlas
            .walls
            .values()
            .map(|w| {
                let sides: Vec<Complex64> = w.sides.values().map(|c| lay.cells[c]).collect();
                (&w.key, sides.iter().sum::<Complex64>() / sides.len().max(1) as f64)
            })
            .collect();
        let _ = writeln!(out, r##"<g id="exchange" fill="none" stroke="#1f77b4" stroke-width="0.8">"##);
        for (a, b, _) in &atlas.exchange.edges {
            let _ = writeln!(out, r#"<path d="{}"/>"#, edge_path(mid[a], mid[b], Style::Schematic, scale));
        }
        let _ = writeln!(out, "</g>");
    }
    if spec.layers.chambers {
        let _ = writeln!(out, r##"<g id="cells" stroke="#000000" stroke-width="0.5">"##);
        for (i, ch) in atlas.chambers.iter().enumerate() {
            let fill = &spec.palette[i % spec.palette.len()];
            for c in &ch.cells {
                let (x, y) = pt(lay.cells[c]);
                let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="4" fill="{fill}"><title>{}</title></circle>"#, xml_escape(c));
            }
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, r##"<g id="boundary" stroke="#000000" stroke-width="1">"##);
    for (name, z) in &lay.boundary {
        let (x, y) = pt(*z);
        let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="4" fill="#000000"/>"##);
        if spec.layers.labels {
            let (lx, ly) = pt(*z * 1.07);
            let _ = writeln!(
                out,
                r#"<text x="{lx}" y="{ly}" font-size="11" text-anchor="middle" dominant-baseline="middle" stroke="none">{}</text>"#,
                xml_escape(name)
            );
        }
    }
    for (name, z) in &lay.excluded {
        let (x, y) = pt(*z);
        let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="4" fill="#ffffff"><title>{}</title></circle>"##, xml_escape(name));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use stabscan::drivers::{GinzburgA2, A2};
    use stabscan::scanner::scan;

    #[test]
    fn geodesic_is_orthogonal_to_the_circle() {
        let p = Complex64::new(0.3, 0.2);
        let q = Complex64::new(-0.1, 0.5);
        let d = edge_path(p, q, Style::Poincare, 1.0);
        let r: f64 = d.split_whitespace().nth(4).unwrap().parse().unwrap();
        // |c|^2 = 1 + r^2 for an orthogonal circle
        let (a, b) = ((p.norm_sqr() + 1.0) / 2.0, (q.norm_sqr() + 1.0) / 2.0);
        let det = p.re * q.im - p.im * q.re;
        let c = Complex64::new((a * q.im - b * p.im) / det, (p.re * b - q.re * a) / det);
        assert!((c.norm_sqr() - 1.0 - r * r).abs() < 1e-5);
    }

    #[test]
    fn cayley_pair_is_inverse() {
        let w = Complex64::new(0.2, -0.4);
        let x = Complex64::i() * (1.0 + w) / (1.0 - w);
        assert!((to_disk(x) - w).norm() < 1e-14);
    }

    #[test]
    fn poincare_only_for_hyperbolic() {
        let spec = RenderSpec { style: Style::Poincare, ..RenderSpec::default() };
        assert!(render_svg(&scan(&A2, 3).unwrap(), &spec).is_err());
        assert!(render_svg(&scan(&GinzburgA2, 3).unwrap(), &spec).is_ok());
    }

    #[test]
    fn no_negative_zero() {
        assert_eq!(fmt6(-0.0000001), "0.000000");
    }
}
