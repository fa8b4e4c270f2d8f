//! A6 (command determinism) plus the library criteria, in one runner.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Duration;

use clap::Parser;
use uavkm::acceptance::{self as lib, timed, CriterionOutcome};

use crate::{run, Cli};

pub const A6_BUDGET: Duration = Duration::from_secs(5);

/// Every command the tool offers (except `acceptance`), with fixed flags,
/// writing into `dir`.
pub fn command_script(dir: &Path) -> Vec<Vec<String>> {
    let p = |name: &str| dir.join(name).display().to_string();
    let cmd = |parts: &[&str]| parts.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        cmd(&[
            "generate",
            "--seed",
            "7",
            "--n",
            "60",
            "--k",
            "3",
            "--out",
            &p("scenario.json"),
        ]),
        cmd(&[
            "generate",
            "--seed",
            "7",
            "--k",
            "2",
            "--border",
            "3",
            "--out",
            &p("border.json"),
        ]),
        cmd(&[
            "place",
            "--scenario",
            &p("scenario.json"),
            "--mode",
            "two-feature",
            "--seed",
            "3",
            "--out",
            &p("two.placement.json"),
            "--report",
            &p("two.report.csv"),
        ]),
        cmd(&[
            "place",
            "--scenario",
            &p("scenario.json"),
            "--mode",
            "three-feature",
            "--alpha",
            "0.5",
            "--seed",
            "3",
            "--out",
            &p("three.placement.json"),
            "--report",
            &p("three.report.csv"),
        ]),
        cmd(&[
            "place",
            "--scenario",
            &p("scenario.json"),
            "--mode",
            "weighted",
            "--unit",
            "1",
            "--seed",
            "3",
            "--out",
            &p("weighted.placement.json"),
            "--report",
            &p("weighted.report.csv"),
        ]),
        cmd(&[
            "compare",
            "--scenario",
            &p("border.json"),
            "--seed",
            "3",
            "--out",
            &p("compare.csv"),
            "--plot-dir",
            &p("plots"),
        ]),
        cmd(&[
            "plot",
            "--scenario",
            &p("scenario.json"),
            "--placement",
            &p("weighted.placement.json"),
            "--out",
            &p("weighted.svg"),
        ]),
    ]
}

/// Runs the script in `dir` and returns every produced file, relative path → bytes.
pub fn run_script(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    for cmd in command_script(dir) {
        let cli = Cli::try_parse_from(std::iter::once("uavkm".to_string()).chain(cmd.clone()))
            .map_err(|e| e.to_string())?;
        run(cli, &mut std::io::sink()).map_err(|e| format!("{}: {e}", cmd.join(" ")))?;
    }
    let mut files = BTreeMap::new();
    collect(dir, dir, &mut files).map_err(|e| e.to_string())?;
    Ok(files)
}

fn collect(root: &Path, dir: &Path, files: &mut BTreeMap<String, Vec<u8>>) -> std::io::Result<()> {
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            collect(root, &path, files)?;
        } else {
            let rel = path.strip_prefix(root).unwrap().display().to_string();
            files.insert(rel, std::fs::read(&path)?);
        }
    }
    Ok(())
}

pub fn a6_cli_determinism() -> CriterionOutcome {
    timed("A6", "command determinism", A6_BUDGET, || {
        let io_err = |e: std::io::Error| uavkm::Error::InvalidParams(format!("temp dir: {e}"));
        let first = tempfile::tempdir().map_err(io_err)?;
        let second = tempfile::tempdir().map_err(io_err)?;
        let (a, b) = match (run_script(first.path()), run_script(second.path())) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return Ok((false, e)),
        };
        let differing: Vec<&String> = a
            .iter()
            .filter(|(name, bytes)| b.get(*name) != Some(bytes))
            .map(|(name, _)| name)
            .collect();
        let same_names = a.keys().eq(b.keys());
        Ok((
            differing.is_empty() && same_names && !a.is_empty(),
            if differing.is_empty() && same_names {
                format!("{} files byte-identical across two runs", a.len())
            } else {
                format!("differing files: {differing:?}")
            },
        ))
    })
}

type Criterion = fn() -> CriterionOutcome;

/// Criteria A1–A6 whose id passes `filter`, in order.
pub fn run_all(filter: &dyn Fn(&str) -> bool) -> Vec<CriterionOutcome> {
    let criteria: [(&str, Criterion); 6] = [
        ("A1", lib::a1_monotone_descent),
        ("A2", lib::a2_border_reproduction),
        ("A3", lib::a3_replication_equivalence),
        ("A4", lib::a4_oracle_gap),
        ("A5", lib::a5_closed_forms),
        ("A6", a6_cli_determinism),
    ];
    criteria
        .iter()
        .filter(|(id, _)| filter(id))
        .map(|(_, f)| f())
        .collect()
}
