//! Exhaustive optimum for tiny weighted clustering instances.
//!
//! Every partition of the users into exactly `k` non-empty labeled parts is
//! visited once, as a restricted growth string (labels appear in order of
//! first use). Each part's best centroid is its load-weighted mean. The
//! arithmetic here is independent of the solver's.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Centroid, Placement, Scenario, UserId};

pub const MAX_USERS: usize = 10;
pub const MAX_K: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub placement: Placement,
    pub objective: f64,
    /// Cluster label per user, scenario order.
    pub labels: Vec<usize>,
}

/// Weighted mean of `(x, y)` over `members` (indices into `s.users`).
fn weighted_mean(s: &Scenario, members: &[usize]) -> (f64, f64) {
    let (mut sx, mut sy, mut sw) = (0.0, 0.0, 0.0);
    for &i in members {
        let u = &s.users[i];
        sx += u.load * u.x;
        sy += u.load * u.y;
        sw += u.load;
    }
    (sx / sw, sy / sw)
}

fn partition_cost(s: &Scenario, labels: &[usize], k: usize) -> (f64, Vec<(f64, f64)>) {
    let mut parts = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        parts[l].push(i);
    }
    let centers: Vec<(f64, f64)> = parts.iter().map(|m| weighted_mean(s, m)).collect();
    let cost = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let u = &s.users[i];
            let (cx, cy) = centers[l];
            u.load * ((u.x - cx).powi(2) + (u.y - cy).powi(2))
        })
        .sum();
    (cost, centers)
}

/// Calls `visit` with every restricted growth string of length `n` that uses
/// exactly `k` labels, in lexicographic order.
pub fn for_each_partition(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(
        labels: &mut Vec<usize>,
        used: usize,
        n: usize,
        k: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let i = labels.len();
        if i == n {
            if used == k {
                visit(labels);
            }
            return;
        }
        // Not enough positions left to open the remaining labels.
        if k - used > n - i {
            return;
        }
        let top = if used < k { used + 1 } else { k };
        for l in 0..top {
            labels.push(l);
            rec(labels, used.max(l + 1), n, k, visit);
            labels.pop();
        }
    }
    if k == 0 || k > n {
        return;
    }
    rec(&mut Vec::with_capacity(n), 0, n, k, &mut visit);
}

/// Cost, labels and cluster centres of one partition.
type Candidate = (f64, Vec<usize>, Vec<(f64, f64)>);

pub fn optimal_partition(s: &Scenario) -> Result<OracleResult> {
    let n = s.users.len();
    let k = s.k;
    if n > MAX_USERS || k > MAX_K {
        return Err(Error::InstanceTooLarge { users: n, k });
    }
    s.check()?;
    let mut best: Option<Candidate> = None;
    for_each_partition(n, k, |labels| {
        let (cost, centers) = partition_cost(s, labels, k);
        if best.as_ref().is_none_or(|(b, _, _)| cost < *b) {
            best = Some((cost, labels.to_vec(), centers));
        }
    });
    let (objective, labels, centers) = best.expect("k <= n guarantees a partition");
    let assignment: BTreeMap<UserId, usize> = s
        .users
        .iter()
        .zip(&labels)
        .map(|(u, &l)| (u.id.clone(), l))
        .collect();
    Ok(OracleResult {
        placement: Placement {
            centroids: centers.iter().map(|&(x, y)| Centroid::at(x, y)).collect(),
            assignment,
            iterations: 0,
            converged: true,
        },
        objective,
        labels,
    })
}
