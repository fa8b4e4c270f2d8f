//! Seeded scenario generation.
//!
//! All randomness comes from [`SplitMix64`] so the same seed yields the same
//! scenario on every platform. Draw order for [`generate`]: for each user in
//! id order, `x`, then `y`, then the high/low load draw.

use crate::error::{Error, Result};
use crate::model::{Area, Scenario, User};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateParams {
    pub seed: u64,
    pub n_users: usize,
    pub area: Area,
    pub low_load: f64,
    pub high_load: f64,
    /// Probability that a user carries `high_load`.
    pub high_fraction: f64,
    pub k: usize,
}

impl Default for GenerateParams {
    fn default() -> Self {
        GenerateParams {
            seed: 0,
            n_users: 60,
            area: Area::square(100.0),
            low_load: 1.0,
            high_load: 8.0,
            high_fraction: 0.15,
            k: 3,
        }
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParams(msg.into()))
}

fn check_common(n_users: usize, k: usize, area: &Area, low: f64, high: f64) -> Result<()> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if n_users < k {
        return invalid(format!("k = {k} exceeds the number of users ({n_users})"));
    }
    if !area.is_well_formed() {
        return invalid("area must satisfy xmin < xmax and ymin < ymax");
    }
    if !(low > 0.0 && low.is_finite()) {
        return invalid("low load must be positive");
    }
    if !(high >= low && high.is_finite()) {
        return invalid("high load must be at least the low load");
    }
    Ok(())
}

/// Zero-padded ids so that lexicographic order equals generation order.
fn user_id(i: usize, n: usize) -> String {
    let width = n.saturating_sub(1).to_string().len();
    format!("u{i:0width$}")
}

pub fn generate(p: &GenerateParams) -> Result<Scenario> {
    check_common(p.n_users, p.k, &p.area, p.low_load, p.high_load)?;
    if !(0.0..=1.0).contains(&p.high_fraction) {
        return invalid("high fraction must lie in [0, 1]");
    }
    let mut rng = SplitMix64::new(p.seed);
    let users = (0..p.n_users)
        .map(|i| {
            let x = rng.uniform(p.area.xmin, p.area.xmax);
            let y = rng.uniform(p.area.ymin, p.area.ymax);
            let load = if rng.next_f64() < p.high_fraction {
                p.high_load
            } else {
                p.low_load
            };
            User::new(user_id(i, p.n_users), x, y, load)
        })
        .collect();
    Ok(Scenario::new(p.area, p.k, users))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BorderStressParams {
    pub seed: u64,
    pub n_users: usize,
    pub area: Area,
    pub k: usize,
    pub n_border_highload: usize,
    pub low_load: f64,
    pub high_load: f64,
}

impl Default for BorderStressParams {
    fn default() -> Self {
        BorderStressParams {
            seed: 0,
            n_users: 60,
            area: Area::square(100.0),
            k: 2,
            n_border_highload: 3,
            low_load: 1.0,
            high_load: 8.0,
        }
    }
}

/// Layout of the grouped scenario: `k` square groups side by side along the
/// horizontal centre line, each occupying the middle half of its slot.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupLayout {
    pub centers: Vec<(f64, f64)>,
    pub half_width: f64,
    pub half_height: f64,
}

impl GroupLayout {
    pub fn new(area: &Area, k: usize) -> Self {
        let slot = area.width() / k as f64;
        let cy = area.ymin + 0.5 * area.height();
        GroupLayout {
            centers: (0..k)
                .map(|i| (area.xmin + (i as f64 + 0.5) * slot, cy))
                .collect(),
            half_width: 0.25 * slot,
            half_height: (0.25 * slot).min(0.25 * area.height()),
        }
    }

    /// Midline position and centre spacing for adjacent groups `i`, `i + 1`.
    pub fn midline(&self, i: usize) -> (f64, f64) {
        let (a, b) = (self.centers[i].0, self.centers[i + 1].0);
        (0.5 * (a + b), b - a)
    }

    /// Whether `x` lies within 10% of the centre spacing of some midline.
    pub fn in_border_band(&self, x: f64) -> bool {
        (0..self.centers.len().saturating_sub(1)).any(|i| {
            let (m, d) = self.midline(i);
            (x - m).abs() <= 0.1 * d
        })
    }
}

/// Well-separated low-load groups plus high-load users on the borders
/// between neighbouring groups. Regular users come first (round-robin over
/// groups), then the border users (round-robin over adjacent group pairs).
pub fn generate_border_stress(p: &BorderStressParams) -> Result<Scenario> {
    check_common(p.n_users, p.k, &p.area, p.low_load, p.high_load)?;
    if p.n_border_highload > p.n_users {
        return invalid("more border users than users");
    }
    let regular = p.n_users - p.n_border_highload;
    if regular < p.k {
        return invalid(format!(
            "need at least k = {} regular users, have {regular}",
            p.k
        ));
    }
    if p.n_border_highload > 0 && p.k < 2 {
        return invalid("border users need at least two groups");
    }
    let layout = GroupLayout::new(&p.area, p.k);
    let mut rng = SplitMix64::new(p.seed);
    let mut users = Vec::with_capacity(p.n_users);
    for i in 0..regular {
        let (cx, cy) = layout.centers[i % p.k];
        let x = rng.uniform(cx - layout.half_width, cx + layout.half_width);
        let y = rng.uniform(cy - layout.half_height, cy + layout.half_height);
        users.push(User::new(user_id(users.len(), p.n_users), x, y, p.low_load));
    }
    for j in 0..p.n_border_highload {
        let (m, d) = layout.midline(j % (p.k - 1));
        let cy = layout.centers[0].1;
        let x = rng.uniform(m - 0.05 * d, m + 0.05 * d);
        let y = rng.uniform(cy - layout.half_height, cy + layout.half_height);
        users.push(User::new(
            user_id(users.len(), p.n_users),
            x,
            y,
            p.high_load,
        ));
    }
    Ok(Scenario::new(p.area, p.k, users))
}
