//! Load-aware K-means placement of UAV-mounted mobile base stations.
//!
//! Ground users carry a position and a traffic demand. Clustering them with
//! the demand taken into account (either as per-user weight, or as a third
//! feature next to `x` and `y`) pulls UAV hover positions toward the users
//! that need the most capacity. The crate provides the solver, a brute-force
//! optimum for tiny instances, scenario generation, quality metrics and the
//! file formats used by the `uavkm` command-line tool.

pub mod acceptance;
pub mod error;
pub mod io;
pub mod kmeans;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod preprocess;
pub mod rng;
pub mod scenario;

pub use error::{Error, Result};
pub use kmeans::{solve, Solution};
pub use metrics::{compare, evaluate, ComparisonRecord, PlacementReport};
pub use model::{
    Area, Centroid, InitMethod, Mode, Placement, Scenario, SolveConfig, User, UserId, Violation,
};
