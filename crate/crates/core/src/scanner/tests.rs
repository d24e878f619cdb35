use std::collections::BTreeSet;

use super::*;
use crate::drivers::{GinzburgA2, Lambda210, A2, P1};
use crate::lattice::InnerProduct;

#[test]
fn a2_four_chambers_star() {
    let a = scan(&A2, 5).unwrap();
    assert_eq!(a.chambers.len(), 4);
    let labels: BTreeSet<_> = a.chambers.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(labels, BTreeSet::from(["pair:e,s", "pair:e,t", "pair:s,t", "triple"]));
    assert_eq!(a.boundary_names(), ["e", "s", "t"]);
    assert!(is_forest(&a.speiser));
    assert_eq!(a.speiser.vertices.len(), 16);
    let deg = degrees(&a.speiser);
    assert_eq!(deg[a.seed_cell.as_str()], 3);
    assert!(deg.iter().all(|(v, d)| *v == a.seed_cell || *d <= 2));
}

#[test]
fn exchange_graph_is_four_valent_inside() {
    for atlas in [scan(&A2, 4).unwrap(), scan(&Lambda210, 4).unwrap(), scan(&GinzburgA2, 3).unwrap()] {
        let deg = degrees(&atlas.exchange);
        let mut interior = 0;
        for (k, w) in &atlas.walls {
            let all_in = (0..2).all(|at| {
                [TiltDir::Forward, TiltDir::Backward].iter().all(|dir| {
                    let d = crate::drivers::driver_by_name(&atlas.driver, atlas.depth).unwrap();
                    let t = d.tilt(&w.heart, at, *dir).unwrap();
                    atlas.walls.contains_key(&d.heart_key(&t))
                })
            });
            if all_in {
                interior += 1;
                assert_eq!(deg[k.as_str()], 4, "{} {k}", atlas.driver);
            }
        }
        assert!(interior > 0);
    }
}

#[test]
fn ginzburg_trivalent_ball() {
    let a = scan(&GinzburgA2, 4).unwrap();
    assert_eq!(a.cells.len(), 46);
    assert!(a.cells.values().all(|c| c.walls.len() == 3));
    assert_eq!(a.chambers.len(), 46);
    assert!(is_forest(&a.speiser));
    let dist = bfs_distances(&a.speiser, &a.seed_cell);
    let mut shells = [0; 5];
    for d in dist.values() {
        shells[*d as usize] += 1;
    }
    assert_eq!(shells, [1, 3, 6, 12, 24]);
    let deg = degrees(&a.speiser);
    for (v, d) in &dist {
        if *d < 4 {
            assert_eq!(deg[v], 3);
        }
    }
}

#[test]
fn lambda_comb() {
    for depth in 1..=5u32 {
        let a = scan(&Lambda210, depth).unwrap();
        let coord = |key: &str| {
            let c = &a.cells[key];
            let (kind, n) = c.chamber_label.split_once(':').unwrap();
            let n: i64 = n.parse().unwrap();
            match kind {
                "triple" => (n, 0),
                _ => (n, c.depth as i64 - n.abs()),
            }
        };
        let actual: BTreeSet<_> = a
            .speiser
            .edges
            .iter()
            .map(|(x, y, _)| {
                let (p, q) = (coord(x), coord(y));
                (p.min(q), p.max(q))
            })
            .collect();
        let d = depth as i64;
        let mut expected = BTreeSet::new();
        for n in -d..=d {
            for k in 0..=(d - n.abs()) {
                if k > 0 {
                    expected.insert(((n, k - 1), (n, k)));
                }
                if k == 0 && n < d && (n + 1).abs() <= d {
                    expected.insert(((n, 0), (n + 1, 0)));
                }
            }
        }
        assert_eq!(actual, expected, "depth {depth}");
        assert_eq!(a.cells.len(), ((d + 1) * (d + 1)) as usize);
        let mut names = vec!["s".to_string()];
        names.extend((-d..=d).map(|n| format!("t_{n}")));
        names.sort();
        assert_eq!(a.boundary_names(), names);
    }
}

#[test]
fn p1_boundary_excludes_skyscraper() {
    let a = scan(&P1::new(3), 3).unwrap();
    let mut expected: Vec<String> = (-3..=3).map(|k| format!("O({k})")).collect();
    expected.sort();
    assert_eq!(a.boundary_names(), expected);
    assert_eq!(a.excluded.len(), 1);
    assert_eq!(a.excluded[0].name, "O_x");
    assert!(a.excluded[0].reason.contains("never simple"));
    assert!(is_forest(&a.speiser));
}

#[test]
fn atlas_is_deterministic() {
    let a = serde_json::to_string(&scan(&Lambda210, 4).unwrap()).unwrap();
    let b = serde_json::to_string(&scan(&Lambda210, 4).unwrap()).unwrap();
    assert_eq!(a, b);
}

/// Sweep the wall by positive mass ratios and add up small dual angles.
fn arc_oracle(h: &crate::drivers::Heart, ip: &InnerProduct) -> f64 {
    let arc = wall_arc(h, ip).unwrap();
    let n = 20000;
    let pt = |i: usize| {
        let t = std::f64::consts::FRAC_PI_2 * i as f64 / n as f64;
        let (x, y) = (t.cos(), t.sin());
        [x * arc.endpoint_b[0] + y * arc.endpoint_a[0], x * arc.endpoint_b[1] + y * arc.endpoint_a[1]]
    };
    // angle via atan2 of the dual-metric area and inner product
    let h = ip.dual_gram_f64();
    let root_det = (h[0][0] * h[1][1] - h[0][1] * h[1][0]).sqrt();
    let angle = |u: [f64; 2], v: [f64; 2]| {
        let dot = u[0] * (h[0][0] * v[0] + h[0][1] * v[1]) + u[1] * (h[1][0] * v[0] + h[1][1] * v[1]);
        let cross = root_det * (u[0] * v[1] - u[1] * v[0]);
        cross.abs().atan2(dot)
    };
    (0..n).map(|i| angle(pt(i), pt(i + 1))).sum::<f64>() / std::f64::consts::PI
}

#[test]
fn a2_wall_arcs_fill_the_equator() {
    let d = A2;
    let a = scan(&d, 1).unwrap();
    let true_walls: Vec<_> = a.walls.values().filter(|w| w.true_wall).collect();
    assert_eq!(true_walls.len(), 3);
    for ip in [InnerProduct::identity(), InnerProduct::hexagonal()] {
        let lens: Vec<f64> = true_walls.iter().map(|w| wall_arc(&w.heart, &ip).unwrap().length).collect();
        assert!((lens.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        for w in &true_walls {
            let l = wall_arc(&w.heart, &ip).unwrap().length;
            assert!((l - arc_oracle(&w.heart, &ip)).abs() < 1e-9);
            let mut swapped = w.heart.clone();
            swapped.simples.swap(0, 1);
            swapped.classes.swap(0, 1);
            assert!((wall_arc(&swapped, &ip).unwrap().length - l).abs() < 1e-15);
        }
    }
    let seed = wall_arc(&d.seed_heart(), &InnerProduct::identity()).unwrap();
    assert!((seed.length - 0.5).abs() < 1e-15);
    let hex: Vec<f64> =
        true_walls.iter().map(|w| wall_arc(&w.heart, &InnerProduct::hexagonal()).unwrap().length).collect();
    assert!(hex.iter().all(|l| (l - 1.0 / 3.0).abs() < 1e-12));
}
