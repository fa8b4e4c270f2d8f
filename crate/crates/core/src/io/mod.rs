//! File formats: scenario, placement and report documents (JSON, each with
//! a `schema_version`), the flat report table, and SVG plots.

mod format;
mod svg;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{ComparisonRecord, PlacementReport};
use crate::model::{Area, Centroid, Placement, Scenario, User, UserId};

pub use format::format_sig12;
pub use svg::{radius_for_load, render_svg, render_svg_titled, write_svg};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Deserialize)]
struct VersionProbe {
    schema_version: u64,
}

fn check_version(text: &str) -> Result<()> {
    let probe: VersionProbe = serde_json::from_str(text)?;
    if probe.schema_version != SCHEMA_VERSION {
        return Err(Error::SchemaVersionMismatch {
            found: probe.schema_version,
            expected: SCHEMA_VERSION,
        });
    }
    Ok(())
}

fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

#[derive(Serialize)]
struct ScenarioDocOut<'a> {
    schema_version: u64,
    area: &'a Area,
    k: usize,
    users: &'a [User],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDocIn {
    #[allow(dead_code)]
    schema_version: u64,
    area: Area,
    k: usize,
    users: Vec<User>,
}

pub fn scenario_to_string(s: &Scenario) -> String {
    to_pretty(&ScenarioDocOut {
        schema_version: SCHEMA_VERSION,
        area: &s.area,
        k: s.k,
        users: &s.users,
    })
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    check_version(text)?;
    let doc: ScenarioDocIn = serde_json::from_str(text)?;
    Ok(Scenario::new(doc.area, doc.k, doc.users))
}

pub fn write_scenario(path: impl AsRef<Path>, s: &Scenario) -> Result<()> {
    write_text(path.as_ref(), &scenario_to_string(s))
}

pub fn read_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    parse_scenario(&read_text(path.as_ref())?)
}

#[derive(Serialize)]
struct PlacementDocOut<'a> {
    schema_version: u64,
    centroids: &'a [Centroid],
    assignment: &'a BTreeMap<UserId, usize>,
    iterations: usize,
    converged: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlacementDocIn {
    #[allow(dead_code)]
    schema_version: u64,
    centroids: Vec<Centroid>,
    assignment: BTreeMap<UserId, usize>,
    iterations: usize,
    converged: bool,
}

pub fn placement_to_string(p: &Placement) -> String {
    to_pretty(&PlacementDocOut {
        schema_version: SCHEMA_VERSION,
        centroids: &p.centroids,
        assignment: &p.assignment,
        iterations: p.iterations,
        converged: p.converged,
    })
}

pub fn parse_placement(text: &str) -> Result<Placement> {
    check_version(text)?;
    let doc: PlacementDocIn = serde_json::from_str(text)?;
    Ok(Placement {
        centroids: doc.centroids,
        assignment: doc.assignment,
        iterations: doc.iterations,
        converged: doc.converged,
    })
}

pub fn write_placement(path: impl AsRef<Path>, p: &Placement) -> Result<()> {
    write_text(path.as_ref(), &placement_to_string(p))
}

pub fn read_placement(path: impl AsRef<Path>) -> Result<Placement> {
    parse_placement(&read_text(path.as_ref())?)
}

#[derive(Serialize)]
struct ReportDocOut<'a> {
    schema_version: u64,
    report: &'a PlacementReport,
    comparison: Option<&'a ComparisonRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportDocIn {
    #[allow(dead_code)]
    schema_version: u64,
    report: PlacementReport,
    comparison: Option<ComparisonRecord>,
}

pub fn report_to_json_string(r: &PlacementReport, c: Option<&ComparisonRecord>) -> String {
    to_pretty(&ReportDocOut {
        schema_version: SCHEMA_VERSION,
        report: r,
        comparison: c,
    })
}

pub fn parse_report(text: &str) -> Result<(PlacementReport, Option<ComparisonRecord>)> {
    check_version(text)?;
    let doc: ReportDocIn = serde_json::from_str(text)?;
    Ok((doc.report, doc.comparison))
}

/// One `name,value` row per metric, reals with 12 significant digits.
pub fn report_to_table(r: &PlacementReport, c: Option<&ComparisonRecord>) -> String {
    let mut rows: Vec<(String, String)> = vec![
        ("objective".into(), format_sig12(r.objective)),
        ("mean_dist_all".into(), format_sig12(r.mean_dist_all)),
        (
            "mean_dist_weighted".into(),
            format_sig12(r.mean_dist_weighted),
        ),
        (
            "mean_dist_highload".into(),
            format_sig12(r.mean_dist_highload),
        ),
        (
            "highload_threshold".into(),
            format_sig12(r.highload_threshold),
        ),
        ("n_highload".into(), r.n_highload.to_string()),
    ];
    for (i, load) in &r.per_cluster_load {
        rows.push((format!("cluster_load.{i}"), format_sig12(*load)));
    }
    for (t, v) in r.objective_trace.iter().enumerate() {
        rows.push((format!("trace.{}", t + 1), format_sig12(*v)));
    }
    if let Some(c) = c {
        for m in &c.metrics {
            rows.push((format!("{}.{}", m.metric, c.label_a), format_sig12(m.a)));
            rows.push((format!("{}.{}", m.metric, c.label_b), format_sig12(m.b)));
            rows.push((format!("{}.delta", m.metric), format_sig12(m.delta)));
            rows.push((format!("{}.winner", m.metric), m.winner.to_string()));
        }
    }
    let mut out = String::from("metric,value\n");
    for (name, value) in rows {
        out.push_str(&name);
        out.push(',');
        out.push_str(&value);
        out.push('\n');
    }
    out
}

/// Where [`write_report`] puts the structured document for a table path.
pub fn report_json_path(table_path: &Path) -> PathBuf {
    let p = table_path.with_extension("json");
    if p == table_path {
        let mut s = table_path.as_os_str().to_owned();
        s.push(".json");
        PathBuf::from(s)
    } else {
        p
    }
}

/// Writes the table to `path` and the structured document next to it
/// (see [`report_json_path`]).
pub fn write_report(
    path: impl AsRef<Path>,
    r: &PlacementReport,
    c: Option<&ComparisonRecord>,
) -> Result<PathBuf> {
    let path = path.as_ref();
    write_text(path, &report_to_table(r, c))?;
    let json = report_json_path(path);
    write_text(&json, &report_to_json_string(r, c))?;
    Ok(json)
}

pub fn read_report(
    json_path: impl AsRef<Path>,
) -> Result<(PlacementReport, Option<ComparisonRecord>)> {
    parse_report(&read_text(json_path.as_ref())?)
}
