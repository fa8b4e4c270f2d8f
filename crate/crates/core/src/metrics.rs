//! Placement quality. Every distance here is positional (`x`, `y`); the load
//! coordinate of three-feature centroids never enters a metric.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kmeans::pairwise_sum;
use crate::model::{Placement, Scenario};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementReport {
    /// Σ load · squared distance to the assigned centroid.
    pub objective: f64,
    pub per_cluster_load: BTreeMap<usize, f64>,
    pub mean_dist_all: f64,
    pub mean_dist_weighted: f64,
    /// Mean distance over users with load above `highload_threshold`;
    /// zero when there are none.
    pub mean_dist_highload: f64,
    pub highload_threshold: f64,
    pub n_highload: usize,
    /// Solver objective after each iteration (solver feature space).
    pub objective_trace: Vec<f64>,
}

impl PlacementReport {
    pub fn max_cluster_load(&self) -> f64 {
        self.per_cluster_load.values().copied().fold(0.0, f64::max)
    }
}

pub fn evaluate(s: &Scenario, p: &Placement, highload_threshold: f64) -> Result<PlacementReport> {
    let k = p.k();
    let mut per_cluster_load: BTreeMap<usize, f64> = (0..k).map(|i| (i, 0.0)).collect();
    let mut sq_terms = Vec::with_capacity(s.users.len());
    let mut dists = Vec::with_capacity(s.users.len());
    let mut weighted = Vec::with_capacity(s.users.len());
    let mut high = Vec::new();
    for u in &s.users {
        let c = p
            .cluster_of(&u.id)
            .ok_or_else(|| Error::UncoveredUser(u.id.clone()))?;
        let centroid = p.centroids.get(c).ok_or_else(|| Error::ClusterOutOfRange {
            user: u.id.clone(),
            index: c,
            k,
        })?;
        let dx = u.x - centroid.x;
        let dy = u.y - centroid.y;
        let sq = dx * dx + dy * dy;
        let d = sq.sqrt();
        sq_terms.push(u.load * sq);
        dists.push(d);
        weighted.push(u.load * d);
        if u.load > highload_threshold {
            high.push(d);
        }
        *per_cluster_load.get_mut(&c).unwrap() += u.load;
    }
    let n = s.users.len() as f64;
    let mean = |xs: &[f64], denom: f64| {
        if xs.is_empty() {
            0.0
        } else {
            pairwise_sum(xs) / denom
        }
    };
    let loads: Vec<f64> = s.users.iter().map(|u| u.load).collect();
    Ok(PlacementReport {
        objective: pairwise_sum(&sq_terms),
        per_cluster_load,
        mean_dist_all: mean(&dists, n),
        mean_dist_weighted: mean(&weighted, pairwise_sum(&loads)),
        mean_dist_highload: mean(&high, high.len() as f64),
        highload_threshold,
        n_highload: high.len(),
        objective_trace: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    A,
    B,
    Tie,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::A => "a",
            Winner::B => "b",
            Winner::Tie => "tie",
        })
    }
}

/// One metric evaluated on both placements. Lower is better for every metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDelta {
    pub metric: String,
    pub a: f64,
    pub b: f64,
    /// `b - a`
    pub delta: f64,
    pub winner: Winner,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonRecord {
    pub label_a: String,
    pub label_b: String,
    pub metrics: Vec<MetricDelta>,
}

impl ComparisonRecord {
    pub fn get(&self, metric: &str) -> Option<&MetricDelta> {
        self.metrics.iter().find(|m| m.metric == metric)
    }
}

pub const COMPARED_METRICS: [&str; 5] = [
    "objective",
    "mean_dist_all",
    "mean_dist_weighted",
    "mean_dist_highload",
    "max_cluster_load",
];

pub fn compare_reports(ra: &PlacementReport, rb: &PlacementReport) -> Vec<MetricDelta> {
    let pick = |r: &PlacementReport, m: &str| match m {
        "objective" => r.objective,
        "mean_dist_all" => r.mean_dist_all,
        "mean_dist_weighted" => r.mean_dist_weighted,
        "mean_dist_highload" => r.mean_dist_highload,
        "max_cluster_load" => r.max_cluster_load(),
        _ => unreachable!(),
    };
    COMPARED_METRICS
        .iter()
        .map(|&m| {
            let (a, b) = (pick(ra, m), pick(rb, m));
            let winner = if b < a {
                Winner::B
            } else if a < b {
                Winner::A
            } else {
                Winner::Tie
            };
            MetricDelta {
                metric: m.to_string(),
                a,
                b,
                delta: b - a,
                winner,
            }
        })
        .collect()
}

/// Metric-by-metric comparison of two placements of the same scenario.
pub fn compare(
    s: &Scenario,
    a: &Placement,
    b: &Placement,
    threshold: f64,
) -> Result<ComparisonRecord> {
    compare_labeled(s, ("a", a), ("b", b), threshold)
}

pub fn compare_labeled(
    s: &Scenario,
    (label_a, a): (&str, &Placement),
    (label_b, b): (&str, &Placement),
    threshold: f64,
) -> Result<ComparisonRecord> {
    let ra = evaluate(s, a, threshold)?;
    let rb = evaluate(s, b, threshold)?;
    Ok(ComparisonRecord {
        label_a: label_a.to_string(),
        label_b: label_b.to_string(),
        metrics: compare_reports(&ra, &rb),
    })
}
