//! The experiment-level acceptance checks (A1–A5). A6, which exercises the
//! command-line tool, lives in the CLI crate.
//!
//! Each check runs a fixed seeded workload and reports pass/fail together with
//! the counts it measured. Thresholds and tolerances are constants here.

use std::fmt;
use std::time::{Duration, Instant};

use crate::kmeans::{build_problem, init_centroids, lloyd, LloydOptions};
use crate::metrics::compare_labeled;
use crate::model::{InitMethod, Mode, Scenario, SolveConfig};
use crate::oracle::optimal_partition;
use crate::rng::SplitMix64;
use crate::scenario::{generate, generate_border_stress, BorderStressParams, GenerateParams};
use crate::{solve, Result};

pub const A1_SCENARIOS: u64 = 200;
pub const A1_STEP_TOL: f64 = 1e-9;
pub const A1_BUDGET: Duration = Duration::from_secs(10);

pub const A2_SCENARIOS: u64 = 100;
pub const A2_RESTARTS: usize = 10;
pub const A2_MIN_HIGHLOAD_WINS: usize = 90;
pub const A2_MIN_WEIGHTED_WINS: usize = 95;
pub const A2_BUDGET: Duration = Duration::from_secs(30);

pub const A3_SCENARIOS: u64 = 50;
pub const A3_COORD_TOL: f64 = 1e-12;
pub const A3_BUDGET: Duration = Duration::from_secs(10);

pub const A4_INSTANCES: u64 = 100;
pub const A4_RESTARTS: usize = 20;
pub const A4_REL_TOL: f64 = 1e-6;
pub const A4_BELOW_TOL: f64 = 1e-9;
pub const A4_MIN_OPTIMAL: usize = 95;
pub const A4_BUDGET: Duration = Duration::from_secs(20);

pub const A5_MEAN_TOL: f64 = 1e-12;
pub const A5_BUDGET: Duration = Duration::from_secs(1);

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {} [{:.2}s / {}s budget]",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

/// Runs `body`, which returns (passed, detail), and applies the time budget.
pub fn timed(
    id: &'static str,
    title: &'static str,
    budget: Duration,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionOutcome {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let within = elapsed <= budget;
    CriterionOutcome {
        id,
        title,
        passed: passed && within,
        detail: if within {
            detail
        } else {
            format!("{detail}; over time budget")
        },
        elapsed,
        budget,
    }
}

pub fn a1_monotone_descent() -> CriterionOutcome {
    timed("A1", "monotone descent", A1_BUDGET, || {
        let mut solves = 0;
        let mut violations = 0;
        let mut worst = 0.0f64;
        for seed in 0..A1_SCENARIOS {
            let s = generate(&GenerateParams {
                seed,
                ..Default::default()
            })?;
            for mode in Mode::ALL {
                let cfg = SolveConfig {
                    seed,
                    ..SolveConfig::with_mode(mode)
                };
                let trace = solve(&s, &cfg)?.report.objective_trace;
                solves += 1;
                for w in trace.windows(2) {
                    let rise = w[1] - w[0];
                    worst = worst.max(rise);
                    if rise > A1_STEP_TOL {
                        violations += 1;
                    }
                }
            }
        }
        Ok((
            violations == 0,
            format!("{solves} solves, {violations} rising steps, largest rise {worst:.3e}"),
        ))
    })
}

/// Two-feature vs weighted solve on one border-stress scenario:
/// `(weighted wins mean_dist_highload, weighted wins mean_dist_weighted)`.
pub fn border_stress_trial(seed: u64) -> Result<(bool, bool)> {
    let s = generate_border_stress(&BorderStressParams {
        seed,
        ..Default::default()
    })?;
    let cfg = |mode| SolveConfig {
        seed,
        restarts: A2_RESTARTS,
        ..SolveConfig::with_mode(mode)
    };
    let two = solve(&s, &cfg(Mode::TwoFeature))?.placement;
    let weighted = solve(&s, &cfg(Mode::WeightedReplication))?.placement;
    let c = compare_labeled(
        &s,
        ("two-feature", &two),
        ("weighted", &weighted),
        s.median_load(),
    )?;
    let wins = |m: &str| {
        let d = c.get(m).expect("metric present");
        d.b < d.a
    };
    Ok((wins("mean_dist_highload"), wins("mean_dist_weighted")))
}

pub fn a2_border_reproduction() -> CriterionOutcome {
    timed(
        "A2",
        "high-load border users move off the border",
        A2_BUDGET,
        || {
            let mut high_wins = 0;
            let mut weighted_wins = 0;
            for seed in 0..A2_SCENARIOS {
                let (h, w) = border_stress_trial(seed)?;
                high_wins += h as usize;
                weighted_wins += w as usize;
            }
            Ok((
            high_wins >= A2_MIN_HIGHLOAD_WINS && weighted_wins >= A2_MIN_WEIGHTED_WINS,
            format!(
                "mean_dist_highload lower in {high_wins}/{A2_SCENARIOS} (need {A2_MIN_HIGHLOAD_WINS}), \
                 mean_dist_weighted lower in {weighted_wins}/{A2_SCENARIOS} (need {A2_MIN_WEIGHTED_WINS})"
            ),
        ))
        },
    )
}

/// Default scenario for `seed` with loads replaced by integers in 1..=8.
pub fn integer_load_scenario(seed: u64) -> Result<Scenario> {
    let mut s = generate(&GenerateParams {
        seed,
        ..Default::default()
    })?;
    let mut rng = SplitMix64::new(seed ^ 0x5EED_1000);
    for u in &mut s.users {
        u.load = (1 + rng.next_u64() % 8) as f64;
    }
    Ok(s)
}

/// Largest per-coordinate centroid difference between the weighted and the
/// replicated trajectory, or `None` if their lengths differ.
pub fn replication_gap(s: &Scenario, seed: u64) -> Result<Option<f64>> {
    let weighted_cfg = SolveConfig::with_mode(Mode::WeightedReplication);
    let replicated_cfg = SolveConfig {
        replication_unit: Some(1.0),
        ..weighted_cfg.clone()
    };
    let weighted = build_problem(s, &weighted_cfg)?;
    let replicated = build_problem(s, &replicated_cfg)?;
    let init = init_centroids(&weighted.points, s.k, InitMethod::PlusPlus, seed)?;
    let opts = LloydOptions {
        max_iters: weighted_cfg.max_iters,
        shift_tol: 0.0,
    };
    let a = lloyd(&weighted.points, init.clone(), &opts)?;
    let b = lloyd(&replicated.points, init, &opts)?;
    if a.history.len() != b.history.len() {
        return Ok(None);
    }
    let mut gap = 0.0f64;
    for (sa, sb) in a.history.iter().zip(&b.history) {
        for (ca, cb) in sa.centroids.iter().zip(&sb.centroids) {
            for (x, y) in ca.iter().zip(cb) {
                gap = gap.max((x - y).abs());
            }
        }
    }
    Ok(Some(gap))
}

pub fn a3_replication_equivalence() -> CriterionOutcome {
    timed("A3", "replication equivalence", A3_BUDGET, || {
        let mut failures = 0;
        let mut worst = 0.0f64;
        for seed in 0..A3_SCENARIOS {
            let s = integer_load_scenario(seed)?;
            match replication_gap(&s, seed)? {
                Some(g) if g < A3_COORD_TOL => worst = worst.max(g),
                Some(g) => {
                    worst = worst.max(g);
                    failures += 1;
                }
                None => failures += 1,
            }
        }
        Ok((
            failures == 0,
            format!(
                "{failures}/{A3_SCENARIOS} trajectories diverged, largest coordinate gap {worst:.3e}"
            ),
        ))
    })
}

pub fn tiny_instance(seed: u64) -> Result<Scenario> {
    generate(&GenerateParams {
        seed,
        n_users: 4 + (seed % 5) as usize,
        k: 2,
        high_fraction: 0.3,
        ..Default::default()
    })
}

pub fn a4_oracle_gap() -> CriterionOutcome {
    timed("A4", "oracle optimality gap", A4_BUDGET, || {
        let mut optimal = 0;
        let mut below = 0;
        for seed in 0..A4_INSTANCES {
            let s = tiny_instance(seed)?;
            let best = optimal_partition(&s)?.objective;
            let got = solve(
                &s,
                &SolveConfig {
                    seed,
                    restarts: A4_RESTARTS,
                    ..SolveConfig::with_mode(Mode::WeightedReplication)
                },
            )?
            .report
            .objective;
            if (got - best).abs() <= A4_REL_TOL * best.abs() {
                optimal += 1;
            }
            if got < best - A4_BELOW_TOL {
                below += 1;
            }
        }
        Ok((
            optimal >= A4_MIN_OPTIMAL && below == 0,
            format!(
                "optimum reached in {optimal}/{A4_INSTANCES} (need {A4_MIN_OPTIMAL}), {below} below optimum"
            ),
        ))
    })
}

pub fn a5_closed_forms() -> CriterionOutcome {
    timed("A5", "closed forms", A5_BUDGET, || {
        let mut problems = Vec::new();

        for seed in 0..10 {
            let s = generate(&GenerateParams {
                seed,
                k: 1,
                ..Default::default()
            })?;
            let (mut wx, mut wy, mut w) = (0.0, 0.0, 0.0);
            let (mut ux, mut uy) = (0.0, 0.0);
            for u in &s.users {
                wx += u.load * u.x;
                wy += u.load * u.y;
                w += u.load;
                ux += u.x;
                uy += u.y;
            }
            let n = s.users.len() as f64;
            for (mode, unit, expect) in [
                (Mode::WeightedReplication, None, (wx / w, wy / w)),
                (Mode::WeightedReplication, Some(1.0), (wx / w, wy / w)),
                (Mode::TwoFeature, None, (ux / n, uy / n)),
            ] {
                let cfg = SolveConfig {
                    seed,
                    replication_unit: unit,
                    ..SolveConfig::with_mode(mode)
                };
                let c = solve(&s, &cfg)?.placement.centroids[0];
                let err = (c.x - expect.0).abs().max((c.y - expect.1).abs());
                if err >= A5_MEAN_TOL {
                    problems.push(format!("k=1 {mode} seed {seed}: off by {err:.3e}"));
                }
            }
        }

        for seed in 0..10 {
            let mut s = generate(&GenerateParams {
                seed,
                high_fraction: 0.0,
                ..Default::default()
            })?;
            if seed % 2 == 1 {
                for u in &mut s.users {
                    u.load = 3.0;
                }
            }
            let cfg = |mode| SolveConfig {
                seed,
                ..SolveConfig::with_mode(mode)
            };
            let a = solve(&s, &cfg(Mode::TwoFeature))?.placement;
            let b = solve(&s, &cfg(Mode::WeightedReplication))?.placement;
            let c = compare_labeled(&s, ("two-feature", &a), ("weighted", &b), s.median_load())?;
            if let Some(m) = c.metrics.iter().find(|m| m.delta != 0.0) {
                problems.push(format!(
                    "equal loads seed {seed}: {} delta {}",
                    m.metric, m.delta
                ));
            }
        }

        for seed in 0..10 {
            let s = generate(&GenerateParams {
                seed,
                ..Default::default()
            })?;
            let two = solve(
                &s,
                &SolveConfig {
                    seed,
                    ..SolveConfig::with_mode(Mode::TwoFeature)
                },
            )?;
            let three = solve(
                &s,
                &SolveConfig {
                    seed,
                    load_scale: 0.0,
                    ..SolveConfig::with_mode(Mode::ThreeFeature)
                },
            )?;
            if two.placement.assignment != three.placement.assignment {
                problems.push(format!("alpha=0 seed {seed}: assignments differ"));
            }
        }

        Ok((
            problems.is_empty(),
            if problems.is_empty() {
                "k=1 means, equal-load deltas and alpha=0 assignments all exact".to_string()
            } else {
                problems.join("; ")
            },
        ))
    })
}

/// A1–A5 in order.
pub fn run_library_criteria() -> Vec<CriterionOutcome> {
    vec![
        a1_monotone_descent(),
        a2_border_reproduction(),
        a3_replication_equivalence(),
        a4_oracle_gap(),
        a5_closed_forms(),
    ]
}
