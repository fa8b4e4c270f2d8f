//! Lloyd iteration in three feature modes.
//!
//! * `TwoFeature`: users are `(x, y)` points with unit weight.
//! * `ThreeFeature`: users are `(x, y, load_scale * load)` with unit weight.
//! * `WeightedReplication`: users are `(x, y)` points weighted by load, or,
//!   with a replication unit, split into co-located unit replicas.
//!
//! Whatever the mode, the UAV position reported in a [`Placement`] is the
//! `(x, y)` part of the centroid.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::metrics::{self, PlacementReport};
use crate::model::{Centroid, InitMethod, Mode, Placement, Scenario, SolveConfig, UserId};
use crate::preprocess;
use crate::rng::SplitMix64;

pub type FeatureVector = Vec<f64>;

/// Feature vectors with one weight each. All vectors share one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPoints {
    dim: usize,
    points: Vec<FeatureVector>,
    weights: Vec<f64>,
}

impl WeightedPoints {
    pub fn new(points: Vec<FeatureVector>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::InvalidParams(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        let dim = points.first().map_or(0, Vec::len);
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        Ok(WeightedPoints {
            dim,
            points,
            weights,
        })
    }

    pub fn unweighted(points: Vec<FeatureVector>) -> Result<Self> {
        let w = vec![1.0; points.len()];
        Self::new(points, w)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FeatureVector] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn distinct_count(&self) -> usize {
        self.points
            .iter()
            .map(|p| p.iter().map(|v| (v + 0.0).to_bits()).collect::<Vec<_>>())
            .collect::<HashSet<_>>()
            .len()
    }
}

pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn positional_sq_dist(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(&a[..2], &b[..2])
}

/// Sum with pairwise (cascade) splitting; error grows with `log n` rather than `n`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

/// Nearest centroid for every point; exact ties go to the lowest index.
pub fn assign_step(points: &WeightedPoints, centroids: &[FeatureVector]) -> Result<Vec<usize>> {
    if centroids.is_empty() {
        return Err(Error::InvalidParams(
            "at least one centroid required".into(),
        ));
    }
    if let Some(c) = centroids.iter().find(|c| c.len() != points.dim) {
        return Err(Error::DimensionMismatch {
            expected: points.dim,
            found: c.len(),
        });
    }
    Ok(points
        .points
        .iter()
        .map(|p| {
            let mut best = 0;
            let mut best_d = sq_dist(p, &centroids[0]);
            for (i, c) in centroids.iter().enumerate().skip(1) {
                let d = sq_dist(p, c);
                if d < best_d {
                    best = i;
                    best_d = d;
                }
            }
            best
        })
        .collect())
}

/// Weighted mean of each cluster's members.
///
/// An empty cluster is reseeded onto the point farthest (in `x, y`) from the
/// centroid serving it, where centroids reseeded earlier in the same pass also
/// count as serving. This keeps `k` fixed.
pub fn update_step(points: &WeightedPoints, assignment: &[usize], k: usize) -> Vec<FeatureVector> {
    let dim = points.dim;
    let mut sums = vec![vec![0.0; dim]; k];
    let mut mass = vec![0.0; k];
    for ((p, &w), &c) in points.points.iter().zip(&points.weights).zip(assignment) {
        for (s, v) in sums[c].iter_mut().zip(p) {
            *s += w * v;
        }
        mass[c] += w;
    }
    let mut centroids: Vec<Option<FeatureVector>> = sums
        .into_iter()
        .zip(&mass)
        .map(|(s, &m)| (m > 0.0).then(|| s.into_iter().map(|v| v / m).collect()))
        .collect();

    let empty: Vec<usize> = (0..k).filter(|&i| centroids[i].is_none()).collect();
    if empty.is_empty() || points.is_empty() {
        return centroids
            .into_iter()
            .map(|c| c.unwrap_or_else(|| vec![0.0; dim]))
            .collect();
    }

    let mut gap: Vec<f64> = points
        .points
        .iter()
        .zip(assignment)
        .map(|(p, &c)| match &centroids[c] {
            Some(m) => positional_sq_dist(p, m),
            None => f64::INFINITY,
        })
        .collect();
    for i in empty {
        let mut far = 0;
        for j in 1..gap.len() {
            if gap[j] > gap[far] {
                far = j;
            }
        }
        let seed = points.points[far].clone();
        for (g, p) in gap.iter_mut().zip(&points.points) {
            *g = g.min(positional_sq_dist(p, &seed));
        }
        centroids[i] = Some(seed);
    }
    centroids.into_iter().map(|c| c.unwrap()).collect()
}

/// Weighted within-cluster sum of squared feature-space distances.
pub fn objective(
    points: &WeightedPoints,
    centroids: &[FeatureVector],
    assignment: &[usize],
) -> f64 {
    let terms: Vec<f64> = points
        .points
        .iter()
        .zip(&points.weights)
        .zip(assignment)
        .map(|((p, &w), &c)| w * sq_dist(p, &centroids[c]))
        .collect();
    pairwise_sum(&terms)
}

/// Draws an index with probability proportional to `weights`.
fn sample_index(rng: &mut SplitMix64, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let target = rng.next_f64() * total;
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if target < acc && w > 0.0 {
            return i;
        }
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

pub fn init_centroids(
    points: &WeightedPoints,
    k: usize,
    method: InitMethod,
    seed: u64,
) -> Result<Vec<FeatureVector>> {
    let distinct = points.distinct_count();
    if k == 0 || k > distinct {
        return Err(Error::TooFewDistinctPoints { k, distinct });
    }
    let mut rng = SplitMix64::new(seed);
    match method {
        InitMethod::UniformRandom => {
            let dim = points.dim;
            let mut lo = vec![f64::INFINITY; dim];
            let mut hi = vec![f64::NEG_INFINITY; dim];
            for p in &points.points {
                for d in 0..dim {
                    lo[d] = lo[d].min(p[d]);
                    hi[d] = hi[d].max(p[d]);
                }
            }
            Ok((0..k)
                .map(|_| (0..dim).map(|d| rng.uniform(lo[d], hi[d])).collect())
                .collect())
        }
        InitMethod::PlusPlus => {
            let first = sample_index(&mut rng, &points.weights);
            let mut chosen = vec![points.points[first].clone()];
            let mut nearest: Vec<f64> = points
                .points
                .iter()
                .map(|p| sq_dist(p, &chosen[0]))
                .collect();
            while chosen.len() < k {
                let score: Vec<f64> = nearest
                    .iter()
                    .zip(&points.weights)
                    .map(|(d, w)| d * w)
                    .collect();
                let next = points.points[sample_index(&mut rng, &score)].clone();
                for (d, p) in nearest.iter_mut().zip(&points.points) {
                    *d = d.min(sq_dist(p, &next));
                }
                chosen.push(next);
            }
            Ok(chosen)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LloydOptions {
    pub max_iters: usize,
    pub shift_tol: f64,
}

impl Default for LloydOptions {
    fn default() -> Self {
        LloydOptions {
            max_iters: 300,
            shift_tol: 1e-9,
        }
    }
}

/// Snapshot after one assignment + update pass.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationState {
    pub t: usize,
    pub centroids: Vec<FeatureVector>,
    pub assignment: Vec<usize>,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LloydRun {
    pub initial: Vec<FeatureVector>,
    pub centroids: Vec<FeatureVector>,
    /// Nearest-centroid assignment for the final centroids.
    pub assignment: Vec<usize>,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    pub history: Vec<IterationState>,
}

impl LloydRun {
    pub fn objective_trace(&self) -> Vec<f64> {
        self.history.iter().map(|s| s.objective).collect()
    }
}

/// Runs Lloyd iterations from the given centroids until the assignment stops
/// changing, the largest centroid move drops below `shift_tol`, or
/// `max_iters` passes have run.
pub fn lloyd(
    points: &WeightedPoints,
    initial: Vec<FeatureVector>,
    opts: &LloydOptions,
) -> Result<LloydRun> {
    let k = initial.len();
    let mut centroids = initial.clone();
    let mut previous: Option<Vec<usize>> = None;
    let mut history = Vec::new();
    let mut converged = false;
    let mut t = 0;
    while t < opts.max_iters {
        let assignment = assign_step(points, &centroids)?;
        if previous.as_ref() == Some(&assignment) {
            converged = true;
            break;
        }
        let next = update_step(points, &assignment, k);
        let shift = centroids
            .iter()
            .zip(&next)
            .map(|(a, b)| sq_dist(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = next;
        t += 1;
        history.push(IterationState {
            t,
            centroids: centroids.clone(),
            assignment: assignment.clone(),
            objective: objective(points, &centroids, &assignment),
        });
        previous = Some(assignment);
        if shift < opts.shift_tol {
            converged = true;
            break;
        }
    }
    let assignment = assign_step(points, &centroids)?;
    let objective = objective(points, &centroids, &assignment);
    Ok(LloydRun {
        initial,
        centroids,
        assignment,
        objective,
        iterations: t,
        converged,
        history,
    })
}

/// The clustering problem a scenario becomes under a given configuration.
#[derive(Debug, Clone)]
pub struct Problem {
    pub points: WeightedPoints,
    /// Scenario user index of each point, in point order.
    pub origin: Vec<usize>,
    pub replicas: Option<preprocess::ReplicaSet>,
}

/// Builds feature vectors for `s` under `cfg`. Users are taken in ascending
/// id order, so the result does not depend on scenario order.
pub fn build_problem(s: &Scenario, cfg: &SolveConfig) -> Result<Problem> {
    let mut order: Vec<usize> = (0..s.users.len()).collect();
    order.sort_by(|&a, &b| s.users[a].id.cmp(&s.users[b].id));
    let users: Vec<_> = order.iter().map(|&i| &s.users[i]).collect();

    match (cfg.mode, cfg.replication_unit) {
        (Mode::WeightedReplication, Some(unit)) => {
            let sorted = Scenario::new(s.area, s.k, users.into_iter().cloned().collect());
            let replicas = preprocess::split_users(&sorted, unit)?;
            let points = WeightedPoints::unweighted(
                replicas.replicas.iter().map(|r| vec![r.x, r.y]).collect(),
            )?;
            let origin = replicas
                .replicas
                .iter()
                .map(|r| order[r.origin_index])
                .collect();
            Ok(Problem {
                points,
                origin,
                replicas: Some(replicas),
            })
        }
        (mode, _) => {
            let min_load = users.iter().map(|u| u.load).fold(f64::INFINITY, f64::min);
            let (pts, weights): (Vec<_>, Vec<_>) = users
                .iter()
                .map(|u| match mode {
                    Mode::TwoFeature => (vec![u.x, u.y], 1.0),
                    Mode::ThreeFeature => (vec![u.x, u.y, cfg.load_scale * u.load], 1.0),
                    // Normalized so that equal loads give weights of exactly 1.
                    Mode::WeightedReplication => (vec![u.x, u.y], u.load / min_load),
                })
                .unzip();
            Ok(Problem {
                points: WeightedPoints::new(pts, weights)?,
                origin: order,
                replicas: None,
            })
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub placement: Placement,
    pub report: PlacementReport,
    /// The winning run, in solver feature space.
    pub run: LloydRun,
    pub best_restart: usize,
}

impl From<Solution> for (Placement, PlacementReport) {
    fn from(s: Solution) -> Self {
        (s.placement, s.report)
    }
}

/// Best of `cfg.restarts` seeded runs, judged by the solver objective of
/// each run's final state. Ties keep the earliest restart.
pub fn best_run(problem: &Problem, k: usize, cfg: &SolveConfig) -> Result<(usize, LloydRun)> {
    let opts = LloydOptions {
        max_iters: cfg.max_iters,
        shift_tol: cfg.shift_tol,
    };
    let mut best: Option<(usize, LloydRun)> = None;
    for r in 0..cfg.restarts {
        let init = init_centroids(
            &problem.points,
            k,
            cfg.init,
            cfg.seed.wrapping_add(r as u64),
        )?;
        let run = lloyd(&problem.points, init, &opts)?;
        if best
            .as_ref()
            .is_none_or(|(_, b)| run.objective < b.objective)
        {
            best = Some((r, run));
        }
    }
    Ok(best.expect("restarts >= 1"))
}

pub fn solve(s: &Scenario, cfg: &SolveConfig) -> Result<Solution> {
    cfg.check()?;
    s.check()?;
    let problem = build_problem(s, cfg)?;
    let (best_restart, run) = best_run(&problem, s.k, cfg)?;
    let placement = to_placement(s, cfg, &problem, &run)?;
    let mut report = metrics::evaluate(s, &placement, s.median_load())?;
    report.objective_trace = run.objective_trace();
    Ok(Solution {
        placement,
        report,
        run,
        best_restart,
    })
}

fn to_placement(
    s: &Scenario,
    cfg: &SolveConfig,
    problem: &Problem,
    run: &LloydRun,
) -> Result<Placement> {
    let assignment: BTreeMap<UserId, usize> = match &problem.replicas {
        Some(replicas) => preprocess::fold_dense(replicas, &run.assignment)?,
        None => problem
            .origin
            .iter()
            .zip(&run.assignment)
            .map(|(&u, &c)| (s.users[u].id.clone(), c))
            .collect(),
    };

    let centroids = run
        .centroids
        .iter()
        .enumerate()
        .map(|(i, c)| Centroid {
            x: c[0],
            y: c[1],
            load_coord: (cfg.mode == Mode::ThreeFeature)
                .then(|| member_load(s, &assignment, i, c, cfg)),
        })
        .collect();

    Ok(Placement {
        centroids,
        assignment,
        iterations: run.iterations,
        converged: run.converged,
    })
}

/// Mean load of a cluster's members, i.e. the unscaled third coordinate.
fn member_load(
    s: &Scenario,
    assignment: &BTreeMap<UserId, usize>,
    cluster: usize,
    centroid: &[f64],
    cfg: &SolveConfig,
) -> f64 {
    let loads: Vec<f64> = s
        .users
        .iter()
        .filter(|u| assignment.get(&u.id) == Some(&cluster))
        .map(|u| u.load)
        .collect();
    if !loads.is_empty() {
        loads.iter().sum::<f64>() / loads.len() as f64
    } else if cfg.load_scale > 0.0 {
        centroid[2] / cfg.load_scale
    } else {
        s.total_load() / s.users.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Area, User};

    fn pts(p: &[&[f64]]) -> WeightedPoints {
        WeightedPoints::unweighted(p.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn assign_nearest() {
        let p = pts(&[&[0.0, 0.0], &[10.0, 0.0]]);
        let a = assign_step(&p, &[vec![1.0, 0.0], vec![9.0, 0.0]]).unwrap();
        assert_eq!(a, vec![0, 1]);
    }

    #[test]
    fn assign_tie_goes_to_lowest_index() {
        let p = pts(&[&[5.0, 0.0]]);
        let a = assign_step(&p, &[vec![0.0, 0.0], vec![10.0, 0.0]]).unwrap();
        assert_eq!(a, vec![0]);
        let a = assign_step(&p, &[vec![10.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(a, vec![0]);
    }

    #[test]
    fn assign_three_feature() {
        let alpha = 1.0;
        let p = pts(&[&[0.0, 0.0, alpha * 4.0]]);
        let a = assign_step(
            &p,
            &[vec![0.0, 0.0, alpha * 1.0], vec![0.0, 0.0, alpha * 5.0]],
        )
        .unwrap();
        assert_eq!(a, vec![1]);
    }

    #[test]
    fn assign_dimension_mismatch() {
        let p = pts(&[&[0.0, 0.0]]);
        assert!(matches!(
            assign_step(&p, &[vec![0.0, 0.0, 0.0]]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn update_weighted_mean() {
        let p = WeightedPoints::new(vec![vec![0.0, 0.0], vec![10.0, 0.0]], vec![1.0, 3.0]).unwrap();
        assert_eq!(update_step(&p, &[0, 0], 1), vec![vec![7.5, 0.0]]);
    }

    #[test]
    fn update_single_member_is_identity() {
        let p = WeightedPoints::new(vec![vec![3.25, -1.5]], vec![42.0]).unwrap();
        assert_eq!(update_step(&p, &[0], 1), vec![vec![3.25, -1.5]]);
    }

    #[test]
    fn update_unit_weights_is_arithmetic_mean() {
        let p = pts(&[&[0.0, 0.0], &[2.0, 4.0], &[10.0, 10.0], &[12.0, 14.0]]);
        let c = update_step(&p, &[0, 0, 1, 1], 2);
        assert_eq!(c, vec![vec![1.0, 2.0], vec![11.0, 12.0]]);
    }

    #[test]
    fn update_reseeds_empty_cluster_at_farthest_point() {
        let p = pts(&[&[0.0, 0.0], &[1.0, 0.0], &[9.0, 0.0]]);
        // Cluster 0 = {0, 1, 9} with mean ~3.33; cluster 1 empty.
        let c = update_step(&p, &[0, 0, 0], 2);
        assert_eq!(c[1], vec![9.0, 0.0]);
    }

    #[test]
    fn update_reseeds_two_empty_clusters_at_distinct_points() {
        let p = pts(&[&[0.0, 0.0], &[9.0, 0.0], &[9.0, 0.0], &[-8.0, 0.0]]);
        let c = update_step(&p, &[0, 0, 0, 0], 3);
        // Mean is 2.5; farthest is (-8), then (9) since (-8) is now served.
        assert_eq!(c[1], vec![-8.0, 0.0]);
        assert_eq!(c[2], vec![9.0, 0.0]);
    }

    #[test]
    fn pairwise_sum_matches_exact_for_integers() {
        let xs: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
    }

    #[test]
    fn plus_plus_single_seed_is_an_input_point() {
        let p = pts(&[&[0.0, 0.0], &[3.0, 1.0], &[7.0, 7.0]]);
        for seed in 0..20 {
            let c = init_centroids(&p, 1, InitMethod::PlusPlus, seed).unwrap();
            assert!(p.points().contains(&c[0]));
        }
    }

    #[test]
    fn init_is_deterministic() {
        let p = pts(&[&[0.0, 0.0], &[3.0, 1.0], &[7.0, 7.0], &[2.0, 9.0]]);
        for m in [InitMethod::PlusPlus, InitMethod::UniformRandom] {
            assert_eq!(
                init_centroids(&p, 3, m, 11).unwrap(),
                init_centroids(&p, 3, m, 11).unwrap()
            );
        }
    }

    #[test]
    fn plus_plus_exhausts_distinct_points() {
        // 4 distinct points, one duplicated; k = 4 must hit each distinct point once.
        let p = pts(&[
            &[0.0, 0.0],
            &[1.0, 0.0],
            &[1.0, 0.0],
            &[0.0, 5.0],
            &[6.0, 6.0],
        ]);
        for seed in 0..50 {
            let mut c = init_centroids(&p, 4, InitMethod::PlusPlus, seed).unwrap();
            c.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(
                c,
                vec![
                    vec![0.0, 0.0],
                    vec![0.0, 5.0],
                    vec![1.0, 0.0],
                    vec![6.0, 6.0]
                ]
            );
        }
    }

    #[test]
    fn too_few_distinct_points() {
        let p = pts(&[&[1.0, 1.0], &[1.0, 1.0], &[2.0, 2.0]]);
        assert!(matches!(
            init_centroids(&p, 3, InitMethod::PlusPlus, 0),
            Err(Error::TooFewDistinctPoints { k: 3, distinct: 2 })
        ));
    }

    #[test]
    fn uniform_init_stays_in_bounding_box() {
        let p = pts(&[&[0.0, 10.0, 1.0], &[4.0, 20.0, 8.0], &[2.0, 15.0, 3.0]]);
        for seed in 0..20 {
            for c in init_centroids(&p, 3, InitMethod::UniformRandom, seed).unwrap() {
                assert!((0.0..=4.0).contains(&c[0]));
                assert!((10.0..=20.0).contains(&c[1]));
                assert!((1.0..=8.0).contains(&c[2]));
            }
        }
    }

    fn two_user_scenario() -> Scenario {
        Scenario::new(
            Area::square(10.0),
            1,
            vec![
                User::new("a", 0.0, 0.0, 1.0),
                User::new("b", 10.0, 0.0, 3.0),
            ],
        )
    }

    #[test]
    fn k1_weighted_and_two_feature_means() {
        let s = two_user_scenario();
        let w = solve(&s, &SolveConfig::with_mode(Mode::WeightedReplication)).unwrap();
        assert_eq!(w.placement.centroids[0].position(), [7.5, 0.0]);
        let t = solve(&s, &SolveConfig::with_mode(Mode::TwoFeature)).unwrap();
        assert_eq!(t.placement.centroids[0].position(), [5.0, 0.0]);
        let r = solve(
            &s,
            &SolveConfig {
                replication_unit: Some(1.0),
                ..SolveConfig::with_mode(Mode::WeightedReplication)
            },
        )
        .unwrap();
        assert_eq!(r.placement.centroids[0].position(), [7.5, 0.0]);
    }

    #[test]
    fn k_equals_n_is_exact_fit() {
        let users = vec![
            User::new("a", 1.0, 1.0, 1.0),
            User::new("b", 4.0, 2.0, 2.0),
            User::new("c", 8.0, 9.0, 1.0),
            User::new("d", 3.0, 7.0, 5.0),
        ];
        let s = Scenario::new(Area::square(10.0), 4, users.clone());
        let sol = solve(&s, &SolveConfig::with_mode(Mode::TwoFeature)).unwrap();
        assert_eq!(sol.report.objective, 0.0);
        let mut used = HashSet::new();
        for u in &users {
            let c = sol.placement.cluster_of(&u.id).unwrap();
            assert!(used.insert(c));
            assert_eq!(sol.placement.centroids[c].position(), u.position());
        }
    }

    #[test]
    fn three_feature_carries_load_coordinate() {
        let s = two_user_scenario();
        let sol = solve(&s, &SolveConfig::with_mode(Mode::ThreeFeature)).unwrap();
        assert_eq!(sol.placement.centroids[0].load_coord, Some(2.0));
        let sol = solve(&s, &SolveConfig::with_mode(Mode::TwoFeature)).unwrap();
        assert_eq!(sol.placement.centroids[0].load_coord, None);
    }

    #[test]
    fn non_integral_load_propagates() {
        let mut s = two_user_scenario();
        s.users[1].load = 2.5;
        let cfg = SolveConfig {
            replication_unit: Some(1.0),
            ..SolveConfig::with_mode(Mode::WeightedReplication)
        };
        assert!(matches!(solve(&s, &cfg), Err(Error::NonIntegralLoad(_))));
    }

    #[test]
    fn invalid_scenario_is_rejected() {
        let mut s = two_user_scenario();
        s.k = 3;
        assert!(matches!(
            solve(&s, &SolveConfig::default()),
            Err(Error::InvalidScenario(_))
        ));
    }

    #[test]
    fn converged_assignment_is_stable() {
        let s = crate::scenario::generate(&crate::scenario::GenerateParams {
            seed: 5,
            ..Default::default()
        })
        .unwrap();
        for mode in Mode::ALL {
            let sol = solve(&s, &SolveConfig::with_mode(mode)).unwrap();
            assert!(sol.placement.converged);
            let problem = build_problem(&s, &SolveConfig::with_mode(mode)).unwrap();
            let again = assign_step(&problem.points, &sol.run.centroids).unwrap();
            assert_eq!(again, sol.run.assignment);
        }
    }

    #[test]
    fn max_iters_cap_is_respected() {
        let s = crate::scenario::generate(&crate::scenario::GenerateParams {
            seed: 9,
            ..Default::default()
        })
        .unwrap();
        let cfg = SolveConfig {
            max_iters: 1,
            restarts: 1,
            init: InitMethod::UniformRandom,
            ..SolveConfig::with_mode(Mode::TwoFeature)
        };
        let sol = solve(&s, &cfg).unwrap();
        assert!(sol.placement.iterations <= 1);
    }
}
