//! Domain types shared by every other module.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque user identifier, unique within a scenario.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UserId(pub String);

impl UserId {
    pub fn new(id: impl Into<String>) -> Self {
        UserId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for UserId {
    fn from(s: &str) -> Self {
        UserId(s.to_string())
    }
}

/// A ground terminal: position in meters plus a positive traffic demand.
///
/// `load` is dimensionless, a multiple of whatever minimum traffic unit the
/// experiment uses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct User {
    pub id: UserId,
    pub x: f64,
    pub y: f64,
    pub load: f64,
}

impl User {
    pub fn new(id: impl Into<String>, x: f64, y: f64, load: f64) -> Self {
        User {
            id: UserId::new(id),
            x,
            y,
            load,
        }
    }

    pub fn position(&self) -> [f64; 2] {
        [self.x, self.y]
    }
}

/// Axis-aligned bounding rectangle, inclusive on all sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Area {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Area {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Area {
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }

    pub fn square(side: f64) -> Self {
        Area::new(0.0, side, 0.0, side)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.xmin && x <= self.xmax && y >= self.ymin && y <= self.ymax
    }

    pub fn is_well_formed(&self) -> bool {
        [self.xmin, self.xmax, self.ymin, self.ymax]
            .iter()
            .all(|v| v.is_finite())
            && self.xmin < self.xmax
            && self.ymin < self.ymax
    }
}

impl Default for Area {
    fn default() -> Self {
        Area::square(100.0)
    }
}

/// A bounded area, its users, and the number of UAVs to place.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub area: Area,
    pub k: usize,
    pub users: Vec<User>,
}

impl Scenario {
    pub fn new(area: Area, k: usize, users: Vec<User>) -> Self {
        Scenario { area, k, users }
    }

    /// Every invariant violation; empty when the scenario is valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.area.is_well_formed() {
            out.push(Violation::MalformedArea);
        }
        if self.k == 0 || self.k > self.users.len() {
            out.push(Violation::KOutOfRange {
                k: self.k,
                users: self.users.len(),
            });
        }
        if self.k >= 1 && self.k <= self.users.len() {
            let distinct = self
                .users
                .iter()
                .map(|u| ((u.x + 0.0).to_bits(), (u.y + 0.0).to_bits()))
                .collect::<HashSet<_>>()
                .len();
            if distinct < self.k {
                out.push(Violation::TooFewDistinctPositions {
                    k: self.k,
                    distinct,
                });
            }
        }
        let mut seen = HashSet::new();
        for u in &self.users {
            if !seen.insert(&u.id) {
                out.push(Violation::DuplicateId(u.id.clone()));
            }
            if !(u.x.is_finite() && u.y.is_finite()) {
                out.push(Violation::NonFinitePosition(u.id.clone()));
            } else if self.area.is_well_formed() && !self.area.contains(u.x, u.y) {
                out.push(Violation::OutsideArea(u.id.clone()));
            }
            if !(u.load > 0.0 && u.load.is_finite()) {
                out.push(Violation::NonPositiveLoad(u.id.clone()));
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidScenario(v))
        }
    }

    pub fn total_load(&self) -> f64 {
        self.users.iter().map(|u| u.load).sum()
    }

    /// Median of user loads (mean of the two middle values for even counts).
    pub fn median_load(&self) -> f64 {
        let mut loads: Vec<f64> = self.users.iter().map(|u| u.load).collect();
        if loads.is_empty() {
            return 0.0;
        }
        loads.sort_by(f64::total_cmp);
        let n = loads.len();
        if n % 2 == 1 {
            loads[n / 2]
        } else {
            0.5 * (loads[n / 2 - 1] + loads[n / 2])
        }
    }
}

/// Checks every scenario invariant. Violations are returned as data.
pub fn validate_scenario(s: &Scenario) -> Vec<Violation> {
    s.violations()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    MalformedArea,
    KOutOfRange { k: usize, users: usize },
    TooFewDistinctPositions { k: usize, distinct: usize },
    DuplicateId(UserId),
    NonFinitePosition(UserId),
    OutsideArea(UserId),
    NonPositiveLoad(UserId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MalformedArea => write!(f, "malformed area"),
            Violation::KOutOfRange { k, users } => {
                write!(f, "k out of range: k = {k} with {users} users")
            }
            Violation::TooFewDistinctPositions { k, distinct } => {
                write!(f, "k = {k} exceeds the {distinct} distinct user positions")
            }
            Violation::DuplicateId(id) => write!(f, "duplicate id: {id}"),
            Violation::NonFinitePosition(id) => write!(f, "non-finite position: {id}"),
            Violation::OutsideArea(id) => write!(f, "user outside area: {id}"),
            Violation::NonPositiveLoad(id) => write!(f, "non-positive load: {id}"),
        }
    }
}

/// A UAV hover position. `load_coord` is only set by three-feature solves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Centroid {
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub load_coord: Option<f64>,
}

impl Centroid {
    pub fn at(x: f64, y: f64) -> Self {
        Centroid {
            x,
            y,
            load_coord: None,
        }
    }

    pub fn position(&self) -> [f64; 2] {
        [self.x, self.y]
    }
}

/// Centroids plus the user → cluster map. Cluster identity is the index.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub centroids: Vec<Centroid>,
    pub assignment: BTreeMap<UserId, usize>,
    pub iterations: usize,
    pub converged: bool,
}

impl Placement {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    pub fn cluster_of(&self, id: &UserId) -> Option<usize> {
        self.assignment.get(id).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Positions only; every user counts the same.
    #[serde(rename = "two-feature")]
    TwoFeature,
    /// Positions plus `load_scale * load` as a third coordinate.
    #[serde(rename = "three-feature")]
    ThreeFeature,
    /// Positions with load-weighted centroids; equivalent to splitting each
    /// user into unit-load replicas.
    #[serde(rename = "weighted")]
    WeightedReplication,
}

impl Mode {
    pub const ALL: [Mode; 3] = [
        Mode::TwoFeature,
        Mode::ThreeFeature,
        Mode::WeightedReplication,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::TwoFeature => "two-feature",
            Mode::ThreeFeature => "three-feature",
            Mode::WeightedReplication => "weighted",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-feature" | "two" | "2" => Ok(Mode::TwoFeature),
            "three-feature" | "three" | "3" => Ok(Mode::ThreeFeature),
            "weighted" | "weighted-replication" => Ok(Mode::WeightedReplication),
            other => Err(Error::InvalidParams(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InitMethod {
    #[serde(rename = "uniform")]
    UniformRandom,
    #[serde(rename = "plus-plus")]
    PlusPlus,
}

impl InitMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            InitMethod::UniformRandom => "uniform",
            InitMethod::PlusPlus => "plus-plus",
        }
    }
}

impl fmt::Display for InitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" | "uniform-random" | "random" => Ok(InitMethod::UniformRandom),
            "plus-plus" | "plusplus" | "kmeans++" => Ok(InitMethod::PlusPlus),
            other => Err(Error::InvalidParams(format!(
                "unknown init method {other:?}"
            ))),
        }
    }
}

/// Solver settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub mode: Mode,
    /// Multiplier applied to the load coordinate in three-feature mode.
    pub load_scale: f64,
    pub init: InitMethod,
    pub seed: u64,
    pub max_iters: usize,
    /// Stop once no centroid moves farther than this (feature-space units).
    pub shift_tol: f64,
    /// Independent runs; run `r` uses seed `seed + r`.
    pub restarts: usize,
    /// Weighted mode only: when set, users are physically split into
    /// co-located replicas of this load unit and clustered unweighted.
    pub replication_unit: Option<f64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: Mode::WeightedReplication,
            load_scale: 1.0,
            init: InitMethod::PlusPlus,
            seed: 0,
            max_iters: 300,
            shift_tol: 1e-9,
            restarts: 10,
            replication_unit: None,
        }
    }
}

impl SolveConfig {
    pub fn with_mode(mode: Mode) -> Self {
        SolveConfig {
            mode,
            ..Default::default()
        }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
        if !(self.load_scale >= 0.0 && self.load_scale.is_finite()) {
            return bad("load_scale must be a finite non-negative number");
        }
        if self.shift_tol.is_nan() || self.shift_tol < 0.0 {
            return bad("shift_tol must be non-negative");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be at least 1");
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1");
        }
        if let Some(unit) = self.replication_unit {
            if self.mode != Mode::WeightedReplication {
                return bad("replication_unit is only meaningful in weighted mode");
            }
            if !(unit > 0.0 && unit.is_finite()) {
                return bad("replication_unit must be positive");
            }
        }
        Ok(())
    }
}
