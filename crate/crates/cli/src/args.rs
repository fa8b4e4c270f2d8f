use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use uavkm::{Area, InitMethod, Mode};

use crate::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "uavkm",
    version,
    about = "Load-aware UAV base station placement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random scenario file.
    Generate(GenerateArgs),
    /// Solve a placement for a scenario.
    Place(PlaceArgs),
    /// Solve two modes with identical seeds and compare them.
    Compare(CompareArgs),
    /// Render a scenario and placement as SVG.
    Plot(PlotArgs),
    /// Run the acceptance criteria.
    Acceptance(AcceptanceArgs),
}

/// Fills every unset field of `self` from `file`. Flags win.
macro_rules! overlay {
    ($ty:ident { $($field:ident),* $(,)? }) => {
        impl $ty {
            pub fn overlay(self, file: $ty) -> $ty {
                $ty {
                    config: self.config,
                    $($field: self.$field.or(file.$field),)*
                }
            }
        }
    };
}

/// Parses a config document (a JSON object keyed by long flag names),
/// rejecting keys outside `known`.
pub fn parse_config<T: DeserializeOwned>(text: &str, known: &[&str]) -> Result<T, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let obj = value.as_object().ok_or("config must be a JSON object")?;
    if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(format!("unknown config key {k:?}"));
    }
    serde_json::from_value(value).map_err(|e| e.to_string())
}

/// Loads `--config` underneath the flags.
pub fn with_config<T: DeserializeOwned>(
    config: Option<&Path>,
    known: &[&str],
    flags: T,
    overlay: impl FnOnce(T, T) -> T,
) -> CliResult<T> {
    let Some(path) = config else { return Ok(flags) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let file: T = parse_config(&text, known)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(overlay(flags, file))
}

pub const GENERATE_KEYS: &[&str] = &[
    "seed", "n", "k", "area", "loads", "fraction", "border", "out",
];
pub const PLACE_KEYS: &[&str] = &[
    "scenario",
    "mode",
    "out",
    "report",
    "alpha",
    "seed",
    "restarts",
    "init",
    "max-iters",
    "shift-tol",
    "unit",
];
pub const COMPARE_KEYS: &[&str] = &[
    "scenario",
    "modes",
    "out",
    "plot-dir",
    "alpha",
    "seed",
    "restarts",
    "init",
    "max-iters",
    "shift-tol",
    "unit",
];
pub const PLOT_KEYS: &[&str] = &["scenario", "placement", "title", "out"];

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct GenerateArgs {
    /// JSON file with defaults for any of these flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Random seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of users [default: 60]
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of UAVs [default: 3]
    #[arg(long)]
    pub k: Option<usize>,
    /// Area as `side` or `xmin,xmax,ymin,ymax` [default: 100]
    #[arg(long)]
    pub area: Option<String>,
    /// Traffic levels as `low,high` [default: 1,8]
    #[arg(long)]
    pub loads: Option<String>,
    /// Probability of a high-load user [default: 0.15]
    #[arg(long)]
    pub fraction: Option<f64>,
    /// Instead of uniform users, build k separated groups with this many
    /// high-load users on the borders between them.
    #[arg(long)]
    pub border: Option<usize>,
    /// Output scenario file [default: scenario.json]
    #[arg(long)]
    pub out: Option<PathBuf>,
}
overlay!(GenerateArgs {
    seed,
    n,
    k,
    area,
    loads,
    fraction,
    border,
    out
});

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SolveFlags {
    /// Load feature scale for three-feature mode [default: 1]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Base seed; restart r uses seed + r [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Independent restarts [default: 10]
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Initialisation: plus-plus or uniform [default: plus-plus]
    #[arg(long)]
    pub init: Option<String>,
    /// Iteration cap [default: 300]
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Centroid shift stopping tolerance [default: 1e-9]
    #[arg(long)]
    pub shift_tol: Option<f64>,
    /// Weighted mode: split users into replicas of this load unit
    #[arg(long)]
    pub unit: Option<f64>,
}

impl SolveFlags {
    pub fn overlay(self, file: SolveFlags) -> SolveFlags {
        SolveFlags {
            alpha: self.alpha.or(file.alpha),
            seed: self.seed.or(file.seed),
            restarts: self.restarts.or(file.restarts),
            init: self.init.or(file.init),
            max_iters: self.max_iters.or(file.max_iters),
            shift_tol: self.shift_tol.or(file.shift_tol),
            unit: self.unit.or(file.unit),
        }
    }

    pub fn config(&self, mode: Mode) -> CliResult<uavkm::SolveConfig> {
        let d = uavkm::SolveConfig::default();
        let init = match &self.init {
            Some(s) => s.parse::<InitMethod>()?,
            None => d.init,
        };
        let cfg = uavkm::SolveConfig {
            mode,
            load_scale: self.alpha.unwrap_or(d.load_scale),
            init,
            seed: self.seed.unwrap_or(d.seed),
            max_iters: self.max_iters.unwrap_or(d.max_iters),
            shift_tol: self.shift_tol.unwrap_or(d.shift_tol),
            restarts: self.restarts.unwrap_or(d.restarts),
            replication_unit: if mode == Mode::WeightedReplication {
                self.unit
            } else {
                None
            },
        };
        cfg.check()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PlaceArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Scenario file
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// two-feature, three-feature or weighted [default: weighted]
    #[arg(long)]
    pub mode: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub solve: SolveFlags,
    /// Output placement file [default: placement.json]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output report table; the JSON document is written next to it
    /// [default: report.csv]
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl PlaceArgs {
    pub fn overlay(self, file: PlaceArgs) -> PlaceArgs {
        PlaceArgs {
            config: self.config,
            scenario: self.scenario.or(file.scenario),
            mode: self.mode.or(file.mode),
            solve: self.solve.overlay(file.solve),
            out: self.out.or(file.out),
            report: self.report.or(file.report),
        }
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CompareArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Scenario file
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Two modes as `a,b` [default: two-feature,weighted]
    #[arg(long)]
    pub modes: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub solve: SolveFlags,
    /// Output comparison table; JSON document written next to it
    /// [default: comparison.csv]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for one SVG per mode
    #[arg(long)]
    pub plot_dir: Option<PathBuf>,
}

impl CompareArgs {
    pub fn overlay(self, file: CompareArgs) -> CompareArgs {
        CompareArgs {
            config: self.config,
            scenario: self.scenario.or(file.scenario),
            modes: self.modes.or(file.modes),
            solve: self.solve.overlay(file.solve),
            out: self.out.or(file.out),
            plot_dir: self.plot_dir.or(file.plot_dir),
        }
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PlotArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Scenario file
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Placement file
    #[arg(long)]
    pub placement: Option<PathBuf>,
    /// Plot title [default: placement]
    #[arg(long)]
    pub title: Option<String>,
    /// Output SVG [default: placement.svg]
    #[arg(long)]
    pub out: Option<PathBuf>,
}
overlay!(PlotArgs {
    scenario,
    placement,
    title,
    out
});

#[derive(Debug, Clone, Default, Args)]
pub struct AcceptanceArgs {
    /// Run only these criteria, e.g. `--only A2 --only A5`
    #[arg(long)]
    pub only: Vec<String>,
}

pub fn parse_area(s: &str) -> CliResult<Area> {
    let v = parse_list(s, "area")?;
    match v[..] {
        [side] => Ok(Area::square(side)),
        [xmin, xmax, ymin, ymax] => Ok(Area::new(xmin, xmax, ymin, ymax)),
        _ => Err(CliError::Usage(format!(
            "area must be `side` or `xmin,xmax,ymin,ymax`, got {s:?}"
        ))),
    }
}

pub fn parse_loads(s: &str) -> CliResult<(f64, f64)> {
    match parse_list(s, "loads")?[..] {
        [low, high] => Ok((low, high)),
        _ => Err(CliError::Usage(format!(
            "loads must be `low,high`, got {s:?}"
        ))),
    }
}

pub fn parse_modes(s: &str) -> CliResult<(Mode, Mode)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [a, b] => {
            let (a, b) = (a.parse::<Mode>()?, b.parse::<Mode>()?);
            if a == b {
                return Err(CliError::Usage("modes must differ".into()));
            }
            Ok((a, b))
        }
        _ => Err(CliError::Usage(format!("modes must be `a,b`, got {s:?}"))),
    }
}

fn parse_list(s: &str, what: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number {p:?} in --{what}")))
        })
        .collect()
}
