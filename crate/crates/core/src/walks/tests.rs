use super::*;
use crate::drivers::{GinzburgA2, Lambda210, A2, P1};
use crate::lattice::Charge;
use crate::slicing::{degenerate_limit, make_point};

fn small(trials: u64) -> WalkConfig {
    WalkConfig { trials, max_steps: 10_000, ..WalkConfig::default() }
}

#[test]
fn a2_centre_is_uniform_for_hexagonal_ip() {
    let atlas = scan(&A2, 3).unwrap();
    let t = transition_matrix(&atlas, &InnerProduct::hexagonal());
    let row = &t.rows[&atlas.seed_cell];
    assert_eq!(row.len(), 3);
    for s in row {
        assert!((s.prob - 1.0 / 3.0).abs() < 1e-12, "{s:?}");
    }
}

#[test]
fn rows_sum_to_one_and_scale_free() {
    for atlas in [scan(&Lambda210, 4).unwrap(), scan(&GinzburgA2, 3).unwrap(), scan(&P1::new(4), 4).unwrap()] {
        let t = transition_matrix(&atlas, &InnerProduct::identity());
        for (v, row) in &t.rows {
            let s: f64 = row.iter().map(|s| s.prob).sum::<f64>() + t.tail.get(v).copied().unwrap_or(0.0);
            assert!((s - 1.0).abs() < 1e-12, "{v}: {s}");
            if row.len() == 2 && !t.tail.contains_key(v) {
                let ratio = row[0].prob / row[1].prob;
                assert!((ratio - row[0].length / row[1].length).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn p1_centre_has_truncation_tail() {
    let atlas = scan(&P1::new(4), 4).unwrap();
    let t = transition_matrix(&atlas, &InnerProduct::identity());
    let tail = t.tail[&atlas.seed_cell];
    assert!(tail > 0.0 && tail < 1.0);
    assert_eq!(t.rows[&atlas.seed_cell].len(), 8);
}

#[test]
fn single_vertex_is_trivial() {
    let atlas = scan(&A2, 0).unwrap();
    assert_eq!(estimate_return(&atlas, &InnerProduct::identity(), &small(10)).unwrap(), None);
    let r = estimate_type(&A2, &InnerProduct::identity(), &[0], &small(10)).unwrap();
    assert_eq!(r.verdict, WalkVerdict::Trivial);
}

#[test]
fn budget_is_enforced() {
    let atlas = scan(&A2, 2).unwrap();
    let cfg = WalkConfig { budget: 99, trials: 10, max_steps: 10, ..WalkConfig::default() };
    assert!(matches!(estimate_return(&atlas, &InnerProduct::identity(), &cfg), Err(WalkError::BudgetExceeded { .. })));
}

#[test]
fn estimates_are_reproducible() {
    let atlas = scan(&GinzburgA2, 3).unwrap();
    let ip = InnerProduct::identity();
    let a = estimate_return(&atlas, &ip, &small(2000)).unwrap();
    let b = estimate_return(&atlas, &ip, &small(2000)).unwrap();
    assert_eq!(a, b);
}

/// Exact return probability by iterating the harmonic equations.
fn exact_return(t: &Transitions) -> f64 {
    let mut h: BTreeMap<&str, f64> = t.rows.keys().map(|k| (k.as_str(), 0.0)).collect();
    h.insert(&t.origin, 1.0);
    let step = |h: &BTreeMap<&str, f64>, v: &str| t.rows[v].iter().map(|s| s.prob * h[s.to.as_str()]).sum::<f64>();
    for _ in 0..20_000 {
        let keys: Vec<&str> = h.keys().copied().collect();
        for v in keys {
            if v != t.origin && !t.absorbing.iter().any(|a| a == v) {
                let x = step(&h, v);
                h.insert(v, x);
            }
        }
    }
    step(&h, &t.origin)
}

#[test]
fn monte_carlo_matches_harmonic_oracle() {
    let ip = InnerProduct::hexagonal();
    for atlas in [scan(&A2, 4).unwrap(), scan(&Lambda210, 3).unwrap(), scan(&GinzburgA2, 3).unwrap(), scan(&P1::new(3), 3).unwrap()] {
        let exact = exact_return(&transition_matrix(&atlas, &ip));
        let r = estimate_return(&atlas, &ip, &small(40_000)).unwrap().unwrap();
        assert!((r.return_prob - exact).abs() < 4.0 * r.stderr + 1e-3, "{} {r:?} vs {exact}", atlas.driver);
    }
}

#[test]
fn verdict_rules() {
    let e = |depth, p: f64| ReturnEstimate { depth, return_prob: p, stderr: 0.001, returned: 0, censored: 0 };
    let line = [e(4, 0.75), e(6, 1.0 - 1.0 / 6.0), e(8, 0.875)];
    assert_eq!(verdict(&line).0, WalkVerdict::RecurrentSignature);
    let tree = [e(4, 0.4667), e(6, 0.492), e(8, 0.498)];
    assert_eq!(verdict(&tree).0, WalkVerdict::TransientSignature);
    let falling = [e(4, 0.9), e(6, 0.7), e(8, 0.95)];
    assert_eq!(verdict(&falling).0, WalkVerdict::Inconclusive);
}

#[test]
fn thurston_examples() {
    let v = MassVector::from_masses([1.0, 2.0, 1.0]).unwrap();
    assert_eq!(v.0, [0.25, 0.5, 0.25]);
    assert!(thurston_region_check(&v));
    assert!(thurston_region_check(&MassVector([1.0 / 3.0; 3])));
    assert!(!thurston_region_check(&MassVector([1.0, 0.0, 0.0])));
    assert!(!thurston_region_check(&MassVector([0.6, 0.1, 0.3])));
}

#[test]
fn thurston_boundary_vertex_and_collision() {
    let d = A2;
    let cis = |t: f64| {
        let a = std::f64::consts::PI * t;
        (a.cos(), a.sin())
    };
    let p = make_point(&d, &d.seed_heart(), &Charge::from_parts((0.0, 1.0), (-1.0, 1.0))).unwrap();
    let l = degenerate_limit(&d, &p, &["s"]).unwrap();
    assert_eq!(thurston_map_a2(&l).unwrap().0, [0.0, 0.5, 0.5]);
    let a = make_point(&d, &d.seed_heart(), &Charge::from_parts(cis(0.8), cis(0.3))).unwrap();
    let b = make_point(&d, &d.seed_heart(), &Charge::from_parts(cis(0.9), cis(0.2))).unwrap();
    let (va, vb) = (thurston_map_a2(&a).unwrap(), thurston_map_a2(&b).unwrap());
    assert!((va.0[1] - 0.5).abs() < 1e-15);
    assert!(va.0.iter().zip(vb.0).all(|(x, y)| (x - y).abs() < 1e-15));
    assert!(thurston_region_check(&va));
}

#[test]
#[ignore]
fn calibrate() {
    let cfg = WalkConfig { trials: 100_000, ..WalkConfig::default() };
    for ip in [InnerProduct::identity(), InnerProduct::hexagonal()] {
        for d in [&A2 as &dyn CategoryModel, &Lambda210, &GinzburgA2, &P1::new(8)] {
            let r = estimate_type(d, &ip, &[4, 6, 8], &cfg).unwrap();
            let probs: Vec<_> = r.ladder.iter().map(|e| e.return_prob).collect();
            println!("{} {:?} limit={:.4} {}", d.name(), probs, r.limit, r.verdict);
        }
    }
}
