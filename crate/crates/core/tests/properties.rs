//! Property suites over random charges and random tilt sequences.

use num_complex::Complex64;
use proptest::prelude::*;
use stabscan::drivers::{check_hn_classes, CategoryModel, DriverError, GinzburgA2, Heart, Lambda210, ObjectId, TiltDir, A2, P1};
use stabscan::scanner::{is_forest, scan};
use stabscan::slicing::{act, degenerate_limit, make_point, make_point_near, mass_of, quotient_distance, slicing_distance, Point};
use stabscan::Charge;

fn drivers() -> Vec<Box<dyn CategoryModel>> {
    vec![Box::new(A2), Box::new(GinzburgA2), Box::new(Lambda210), Box::new(P1::new(6))]
}

fn cis(r: f64, t: f64) -> Complex64 {
    Complex64::from_polar(r, std::f64::consts::PI * t)
}

/// Charge on the seed heart with simple phases `a`, `b` in (0, 1).
fn seed_point(d: &dyn CategoryModel, r: (f64, f64), a: f64, b: f64) -> Option<Point> {
    let h = d.seed_heart();
    let z = Charge::from_values_on(h.classes[0], cis(r.0, a), h.classes[1], cis(r.1, b))?;
    make_point(d, &h, &z).ok()
}

fn params() -> impl Strategy<Value = (usize, (f64, f64), f64, f64)> {
    (0usize..4, (0.2f64..5.0, 0.2f64..5.0), 0.01f64..0.99, 0.01f64..0.99)
        .prop_filter("simple phases apart", |(_, _, a, b)| (a - b).abs() > 1e-3)
}

fn tracked(d: &dyn CategoryModel, p: &Point) -> Vec<ObjectId> {
    let mut xs = d.enumerate(2);
    for e in &p.phases {
        let o = ObjectId::new(e.id.name.clone(), 0);
        if !xs.contains(&o) {
            xs.push(o);
        }
    }
    xs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hn_conserves_classes_and_orders_phases((k, r, a, b) in params()) {
        let ds = drivers();
        let d = ds[k].as_ref();
        let Some(p) = seed_point(d, r, a, b) else { return Ok(()) };
        for x in tracked(d, &p) {
            let f = match d.hn_factors(&x, &p.cell) {
                Ok(f) => f,
                Err(DriverError::Untracked(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            prop_assert!(check_hn_classes(d, &x, &f).is_ok(), "{x}: {f:?}");
            let ph: Vec<f64> = f.iter().map(|(y, _)| p.phase_of(y).unwrap()).collect();
            prop_assert!(ph.windows(2).all(|w| w[0] > w[1]), "{x}: {ph:?}");
        }
    }

    #[test]
    fn hn_is_shift_equivariant((k, r, a, b) in params(), n in -3i64..=3) {
        let ds = drivers();
        let d = ds[k].as_ref();
        let Some(p) = seed_point(d, r, a, b) else { return Ok(()) };
        for x in tracked(d, &p) {
            let Ok(f) = d.hn_factors(&x, &p.cell) else { continue };
            let g = d.hn_factors(&x.shifted(n), &p.cell).unwrap();
            let shifted: Vec<_> = f.iter().map(|(y, m)| (y.shifted(n), *m)).collect();
            prop_assert_eq!(g, shifted);
        }
    }

    #[test]
    fn mass_is_additive((k, r, a, b) in params()) {
        let ds = drivers();
        let d = ds[k].as_ref();
        let Some(p) = seed_point(d, r, a, b) else { return Ok(()) };
        for x in tracked(d, &p) {
            let Ok(f) = d.hn_factors(&x, &p.cell) else { continue };
            let m = mass_of(d, &p, &x).unwrap();
            let parts: f64 = f.iter().map(|(y, c)| *c as f64 * mass_of(d, &p, y).unwrap()).sum();
            prop_assert!((m - parts).abs() <= 1e-12 * m.max(1.0));
            prop_assert!((mass_of(d, &p, &x.shifted(1)).unwrap() - m).abs() <= 1e-12 * m.max(1.0));
            // the mass dominates the central charge
            prop_assert!(p.charge.eval(d.kclass_of(&x).unwrap()).norm() <= m * (1.0 + 1e-12));
        }
    }

    #[test]
    fn c_action_is_covariant((k, r, a, b) in params(), re in -2.0f64..2.0, im in -1.0f64..1.0) {
        let ds = drivers();
        let d = ds[k].as_ref();
        let Some(p) = seed_point(d, r, a, b) else { return Ok(()) };
        let w = Complex64::new(re, im);
        let q = act(&p, w);
        let direct = make_point_near(d, &p.heart, &q.charge, q.simple_phases).unwrap();
        prop_assert_eq!(direct.stable_names(), p.stable_names());
        prop_assert_eq!(&direct.cell.key, &p.cell.key);
        let scale = (std::f64::consts::PI * im).exp();
        for e in &p.phases {
            let f = direct.entry(&e.id.name).unwrap();
            prop_assert!((f.phase - (e.phase + re)).abs() < 1e-12);
            prop_assert!((f.mass - e.mass * scale).abs() <= 1e-12 * f.mass.max(1.0));
        }
    }

    #[test]
    fn mu_n_contracts(r1 in (0.2f64..5.0, 0.2f64..5.0), a1 in 0.01f64..0.99, b1 in 0.01f64..0.99,
                      r2 in (0.2f64..5.0, 0.2f64..5.0), a2 in 0.01f64..0.99, b2 in 0.01f64..0.99) {
        let d = A2;
        let (Some(p), Some(q)) = (seed_point(&d, r1, a1, b1), seed_point(&d, r2, a2, b2)) else { return Ok(()) };
        let (Ok(lp), Ok(lq)) = (degenerate_limit(&d, &p, &["s"]), degenerate_limit(&d, &q, &["s"])) else { return Ok(()) };
        let dq = quotient_distance(&lp, &lq).unwrap();
        let ds = slicing_distance(&d, &lp, &lq, 3).unwrap();
        prop_assert!(dq <= ds + 1e-12, "{dq} > {ds}");
    }

    #[test]
    fn tilts_are_involutive(k in 0usize..4, path in proptest::collection::vec((0usize..2, any::<bool>()), 0..=8)) {
        let ds = drivers();
        let d = ds[k].as_ref();
        let mut h: Heart = d.seed_heart();
        for (at, fwd) in path {
            let dir = if fwd { TiltDir::Forward } else { TiltDir::Backward };
            let back = if fwd { TiltDir::Backward } else { TiltDir::Forward };
            let Ok(t) = d.tilt(&h, at, dir) else { break };
            let u = d.tilt(&t, at, back).unwrap();
            prop_assert_eq!(d.heart_key(&u), d.heart_key(&h));
            // the Γ2 driver keeps shifts mod 2 only
            if d.name() != "ginzburg" {
                prop_assert_eq!(&u.simples, &h.simples);
            }
            h = t;
        }
    }
}

#[test]
fn speiser_graph_is_a_forest_at_every_depth() {
    for d in drivers() {
        for depth in 0..=6 {
            let a = scan(d.as_ref(), depth).unwrap();
            assert!(is_forest(&a.speiser), "{} depth {depth}", d.name());
        }
    }
}

#[test]
fn atlas_is_deterministic() {
    for d in drivers() {
        let a = serde_json::to_string(&scan(d.as_ref(), 4).unwrap().to_json()).unwrap();
        let b = serde_json::to_string(&scan(d.as_ref(), 4).unwrap().to_json()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn generator_yields_points_for_every_driver() {
    for d in drivers() {
        for (a, b) in [(0.3, 0.6), (0.6, 0.3)] {
            assert!(seed_point(d.as_ref(), (1.0, 1.0), a, b).is_some(), "{}", d.name());
        }
    }
}
