//! Property tests for the solver, metrics and file formats.

use proptest::prelude::*;

use uavkm::io::{parse_scenario, scenario_to_string};
use uavkm::kmeans::{
    assign_step, build_problem, init_centroids, lloyd, objective, update_step, LloydOptions,
    WeightedPoints,
};
use uavkm::metrics::{compare, evaluate};
use uavkm::{solve, Area, InitMethod, Mode, Scenario, SolveConfig, User};

/// Users on a 0.25 grid inside 100 × 100, loads in 1..=8, unique ids.
fn scenario_strategy(max_users: usize) -> impl Strategy<Value = Scenario> {
    (2..=max_users)
        .prop_flat_map(|n| {
            (
                prop::collection::vec((0u32..=400, 0u32..=400, 1u32..=8), n),
                1..=3usize.min(n),
            )
        })
        .prop_map(|(raw, k)| {
            let users = raw
                .into_iter()
                .enumerate()
                .map(|(i, (x, y, w))| {
                    User::new(
                        format!("u{i:03}"),
                        x as f64 * 0.25,
                        y as f64 * 0.25,
                        w as f64,
                    )
                })
                .collect();
            Scenario::new(Area::square(100.0), k, users)
        })
        .prop_filter("need k distinct positions", |s| {
            let mut pts: Vec<_> = s
                .users
                .iter()
                .map(|u| (u.x.to_bits(), u.y.to_bits()))
                .collect();
            pts.sort();
            pts.dedup();
            pts.len() >= s.k
        })
}

fn modes() -> impl Strategy<Value = Mode> {
    prop::sample::select(Mode::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scenario_text_round_trip(s in scenario_strategy(30), jitter in 0.0f64..1.0) {
        let mut s = s;
        // Exercise non-grid floats too.
        for u in &mut s.users {
            u.x = (u.x + jitter * 0.1).min(100.0);
            u.load *= 1.0 + jitter / 3.0;
        }
        let back = parse_scenario(&scenario_to_string(&s)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn every_half_step_is_non_increasing(s in scenario_strategy(25), mode in modes(), seed in any::<u64>()) {
        let cfg = SolveConfig { seed, ..SolveConfig::with_mode(mode) };
        let problem = build_problem(&s, &cfg).unwrap();
        let pts = &problem.points;
        let mut centroids = init_centroids(pts, s.k, InitMethod::UniformRandom, seed).unwrap();
        let mut assignment = assign_step(pts, &centroids).unwrap();
        let mut current = objective(pts, &centroids, &assignment);
        for _ in 0..20 {
            centroids = update_step(pts, &assignment, s.k);
            let after_update = objective(pts, &centroids, &assignment);
            prop_assert!(after_update <= current + 1e-9 * current.max(1.0));
            assignment = assign_step(pts, &centroids).unwrap();
            let after_assign = objective(pts, &centroids, &assignment);
            prop_assert!(after_assign <= after_update + 1e-9 * after_update.max(1.0));
            current = after_assign;
        }
    }

    #[test]
    fn solve_trace_is_non_increasing(s in scenario_strategy(40), mode in modes(), seed in any::<u64>()) {
        let cfg = SolveConfig { seed, restarts: 2, ..SolveConfig::with_mode(mode) };
        let sol = solve(&s, &cfg).unwrap();
        for w in sol.report.objective_trace.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9);
        }
        prop_assert!(sol.placement.iterations <= cfg.max_iters);
        prop_assert_eq!(sol.placement.assignment.len(), s.users.len());
        prop_assert!(sol.placement.assignment.values().all(|&c| c < s.k));
    }

    #[test]
    fn translation_equivariance(s in scenario_strategy(25), dx in -40i32..40, dy in -40i32..40, seed in any::<u64>()) {
        let cfg = SolveConfig::with_mode(Mode::WeightedReplication);
        let base = build_problem(&s, &cfg).unwrap();
        let init = init_centroids(&base.points, s.k, InitMethod::PlusPlus, seed).unwrap();
        let (dx, dy) = (dx as f64, dy as f64);
        let shift = |v: &Vec<f64>| vec![v[0] + dx, v[1] + dy];
        let moved = WeightedPoints::new(
            base.points.points().iter().map(shift).collect(),
            base.points.weights().to_vec(),
        ).unwrap();
        let opts = LloydOptions { max_iters: 300, shift_tol: 0.0 };
        let a = lloyd(&base.points, init.clone(), &opts).unwrap();
        let b = lloyd(&moved, init.iter().map(shift).collect(), &opts).unwrap();
        prop_assert_eq!(&a.assignment, &b.assignment);
        for (ca, cb) in a.centroids.iter().zip(&b.centroids) {
            prop_assert!((ca[0] + dx - cb[0]).abs() < 1e-9);
            prop_assert!((ca[1] + dy - cb[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn permutation_invariance(s in scenario_strategy(30), mode in modes(), perm_seed in any::<u64>(), seed in any::<u64>()) {
        let mut shuffled = s.clone();
        let mut r = uavkm::rng::SplitMix64::new(perm_seed);
        for i in (1..shuffled.users.len()).rev() {
            let j = (r.next_u64() % (i as u64 + 1)) as usize;
            shuffled.users.swap(i, j);
        }
        let cfg = SolveConfig { seed, restarts: 3, ..SolveConfig::with_mode(mode) };
        let a = solve(&s, &cfg).unwrap().placement;
        let b = solve(&shuffled, &cfg).unwrap().placement;
        let mut ca: Vec<_> = a.centroids.iter().map(|c| c.position()).collect();
        let mut cb: Vec<_> = b.centroids.iter().map(|c| c.position()).collect();
        ca.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cb.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in ca.iter().zip(&cb) {
            prop_assert!((x[0] - y[0]).abs() < 1e-9 && (x[1] - y[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn alpha_zero_matches_two_feature_trajectory(s in scenario_strategy(30), seed in any::<u64>()) {
        let two = build_problem(&s, &SolveConfig::with_mode(Mode::TwoFeature)).unwrap();
        let three = build_problem(&s, &SolveConfig { load_scale: 0.0, ..SolveConfig::with_mode(Mode::ThreeFeature) }).unwrap();
        let init = init_centroids(&two.points, s.k, InitMethod::PlusPlus, seed).unwrap();
        let init3: Vec<Vec<f64>> = init.iter().map(|c| vec![c[0], c[1], 0.0]).collect();
        let opts = LloydOptions::default();
        let a = lloyd(&two.points, init, &opts).unwrap();
        let b = lloyd(&three.points, init3, &opts).unwrap();
        prop_assert_eq!(a.history.len(), b.history.len());
        for (x, y) in a.history.iter().zip(&b.history) {
            prop_assert_eq!(&x.assignment, &y.assignment);
        }
    }

    #[test]
    fn replication_matches_weighting(s in scenario_strategy(25), seed in any::<u64>()) {
        let w = build_problem(&s, &SolveConfig::with_mode(Mode::WeightedReplication)).unwrap();
        let r = build_problem(&s, &SolveConfig { replication_unit: Some(1.0), ..SolveConfig::with_mode(Mode::WeightedReplication) }).unwrap();
        let init = init_centroids(&w.points, s.k, InitMethod::UniformRandom, seed).unwrap();
        let opts = LloydOptions { max_iters: 300, shift_tol: 0.0 };
        let a = lloyd(&w.points, init.clone(), &opts).unwrap();
        let b = lloyd(&r.points, init, &opts).unwrap();
        prop_assert_eq!(a.history.len(), b.history.len());
        for (x, y) in a.history.iter().zip(&b.history) {
            for (cx, cy) in x.centroids.iter().zip(&y.centroids) {
                for (p, q) in cx.iter().zip(cy) {
                    prop_assert!((p - q).abs() < 1e-12, "{} vs {}", p, q);
                }
            }
        }
    }

    #[test]
    fn k1_closed_form(s in scenario_strategy(30), seed in any::<u64>()) {
        let mut s = s;
        s.k = 1;
        let w: f64 = s.users.iter().map(|u| u.load).sum();
        let wx: f64 = s.users.iter().map(|u| u.load * u.x).sum::<f64>() / w;
        let wy: f64 = s.users.iter().map(|u| u.load * u.y).sum::<f64>() / w;
        let n = s.users.len() as f64;
        let ux: f64 = s.users.iter().map(|u| u.x).sum::<f64>() / n;
        let uy: f64 = s.users.iter().map(|u| u.y).sum::<f64>() / n;
        let cw = solve(&s, &SolveConfig { seed, ..SolveConfig::with_mode(Mode::WeightedReplication) }).unwrap().placement.centroids[0];
        let cu = solve(&s, &SolveConfig { seed, ..SolveConfig::with_mode(Mode::TwoFeature) }).unwrap().placement.centroids[0];
        prop_assert!((cw.x - wx).abs() < 1e-12 && (cw.y - wy).abs() < 1e-12);
        prop_assert!((cu.x - ux).abs() < 1e-12 && (cu.y - uy).abs() < 1e-12);
    }

    #[test]
    fn equal_loads_make_weighting_a_no_op(s in scenario_strategy(30), load in 1u32..=8, seed in any::<u64>()) {
        let mut s = s;
        for u in &mut s.users {
            u.load = load as f64;
        }
        let cfg = |mode| SolveConfig { seed, restarts: 3, ..SolveConfig::with_mode(mode) };
        let a = solve(&s, &cfg(Mode::TwoFeature)).unwrap().placement;
        let b = solve(&s, &cfg(Mode::WeightedReplication)).unwrap().placement;
        prop_assert_eq!(&a, &b);
        let c = compare(&s, &a, &b, s.median_load()).unwrap();
        prop_assert!(c.metrics.iter().all(|m| m.delta == 0.0));
    }

    #[test]
    fn weighted_mean_distance_is_bounded(s in scenario_strategy(30), seed in any::<u64>()) {
        let sol = solve(&s, &SolveConfig { seed, restarts: 1, ..Default::default() }).unwrap();
        let p = &sol.placement;
        let d: Vec<f64> = s.users.iter().map(|u| {
            let c = p.centroids[p.assignment[&u.id]];
            ((u.x - c.x).powi(2) + (u.y - c.y).powi(2)).sqrt()
        }).collect();
        let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = d.iter().copied().fold(0.0, f64::max);
        let r = &sol.report;
        prop_assert!(r.mean_dist_weighted >= lo - 1e-9 && r.mean_dist_weighted <= hi + 1e-9);
    }

    #[test]
    fn reported_objective_is_a_recomputation(s in scenario_strategy(30), mode in modes(), seed in any::<u64>()) {
        let sol = solve(&s, &SolveConfig { seed, restarts: 2, ..SolveConfig::with_mode(mode) }).unwrap();
        let again = evaluate(&s, &sol.placement, s.median_load()).unwrap();
        let scale = sol.report.objective.abs().max(1e-300);
        prop_assert!((again.objective - sol.report.objective).abs() <= 1e-9 * scale);
        if mode == Mode::WeightedReplication {
            // The solver objective uses loads divided by the smallest load.
            let min_load = s.users.iter().map(|u| u.load).fold(f64::INFINITY, f64::min);
            let solver = sol.run.objective * min_load;
            prop_assert!((solver - again.objective).abs() <= 1e-9 * scale.max(1.0));
        }
    }

    #[test]
    fn validated_scenarios_are_accepted(
        raw in prop::collection::vec((0u32..3, 0u32..3, 1u32..=8), 1..8),
        k in 1usize..=4,
        mode in modes(),
    ) {
        // A coarse grid so that co-located users are common.
        let users = raw.iter().enumerate()
            .map(|(i, &(x, y, w))| User::new(format!("u{i}"), x as f64, y as f64, w as f64))
            .collect();
        let s = Scenario::new(Area::square(10.0), k, users);
        prop_assume!(s.check().is_ok());
        let sol = solve(&s, &SolveConfig { restarts: 1, ..SolveConfig::with_mode(mode) });
        prop_assert!(sol.is_ok());
        let r = evaluate(&s, &sol.unwrap().placement, s.median_load());
        prop_assert!(r.is_ok());
    }
}
