use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use uavkm::io::{self as fio, format_sig12};
use uavkm::metrics::compare_labeled;
use uavkm::scenario::{self, BorderStressParams, GenerateParams};
use uavkm::{solve, Mode, Scenario};

use crate::args::{
    parse_area, parse_loads, parse_modes, with_config, AcceptanceArgs, CompareArgs, GenerateArgs,
    PlaceArgs, PlotArgs, COMPARE_KEYS, GENERATE_KEYS, PLACE_KEYS, PLOT_KEYS,
};
use crate::{CliError, CliResult};

fn required(p: Option<PathBuf>, flag: &str) -> CliResult<PathBuf> {
    p.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

fn load_scenario(path: &Path) -> CliResult<Scenario> {
    let s = fio::read_scenario(path)?;
    s.check()?;
    Ok(s)
}

pub fn generate(args: GenerateArgs, out: &mut dyn Write) -> CliResult {
    let a = with_config(
        args.config.clone().as_deref(),
        GENERATE_KEYS,
        args,
        GenerateArgs::overlay,
    )?;
    let d = GenerateParams::default();
    let area = match &a.area {
        Some(s) => parse_area(s)?,
        None => d.area,
    };
    let (low_load, high_load) = match &a.loads {
        Some(s) => parse_loads(s)?,
        None => (d.low_load, d.high_load),
    };
    let seed = a.seed.unwrap_or(d.seed);
    let n_users = a.n.unwrap_or(d.n_users);
    let k = a.k.unwrap_or(d.k);
    let s = match a.border {
        None => scenario::generate(&GenerateParams {
            seed,
            n_users,
            area,
            low_load,
            high_load,
            high_fraction: a.fraction.unwrap_or(d.high_fraction),
            k,
        })?,
        Some(n_border_highload) => scenario::generate_border_stress(&BorderStressParams {
            seed,
            n_users,
            area,
            k,
            n_border_highload,
            low_load,
            high_load,
        })?,
    };
    let path = a.out.unwrap_or_else(|| PathBuf::from("scenario.json"));
    fio::write_scenario(&path, &s)?;

    let mut histogram: BTreeMap<u64, (f64, usize)> = BTreeMap::new();
    for u in &s.users {
        histogram.entry(u.load.to_bits()).or_insert((u.load, 0)).1 += 1;
    }
    let mut levels: Vec<_> = histogram.into_values().collect();
    levels.sort_by(|a, b| a.0.total_cmp(&b.0));
    writeln!(
        out,
        "wrote {}: n={} k={}",
        path.display(),
        s.users.len(),
        s.k
    )?;
    writeln!(out, "load histogram:")?;
    for (load, count) in levels {
        writeln!(out, "  {load}: {count}")?;
    }
    Ok(())
}

pub fn place(args: PlaceArgs, out: &mut dyn Write) -> CliResult {
    let a = with_config(
        args.config.clone().as_deref(),
        PLACE_KEYS,
        args,
        PlaceArgs::overlay,
    )?;
    let scenario_path = required(a.scenario, "scenario")?;
    let mode = match &a.mode {
        Some(m) => m.parse::<Mode>()?,
        None => Mode::WeightedReplication,
    };
    let cfg = a.solve.config(mode)?;
    let s = load_scenario(&scenario_path)?;
    let sol = solve(&s, &cfg)?;

    let placement_path = a.out.unwrap_or_else(|| PathBuf::from("placement.json"));
    let report_path = a.report.unwrap_or_else(|| PathBuf::from("report.csv"));
    let report_json = fio::report_json_path(&report_path);
    if report_json == placement_path || report_path == placement_path {
        return Err(CliError::Usage(format!(
            "report would overwrite the placement file {}",
            placement_path.display()
        )));
    }
    fio::write_placement(&placement_path, &sol.placement)?;
    fio::write_report(&report_path, &sol.report, None)?;

    writeln!(out, "mode {mode}")?;
    writeln!(out, "objective {}", format_sig12(sol.report.objective))?;
    writeln!(
        out,
        "iterations {} (converged: {})",
        sol.placement.iterations, sol.placement.converged
    )?;
    writeln!(
        out,
        "wrote {} and {}",
        placement_path.display(),
        report_path.display()
    )?;
    Ok(())
}

pub fn compare(args: CompareArgs, out: &mut dyn Write) -> CliResult {
    let a = with_config(
        args.config.clone().as_deref(),
        COMPARE_KEYS,
        args,
        CompareArgs::overlay,
    )?;
    let scenario_path = required(a.scenario, "scenario")?;
    let (mode_a, mode_b) = parse_modes(a.modes.as_deref().unwrap_or("two-feature,weighted"))?;
    let cfg_a = a.solve.config(mode_a)?;
    let cfg_b = a.solve.config(mode_b)?;
    let s = load_scenario(&scenario_path)?;
    let sol_a = solve(&s, &cfg_a)?;
    let sol_b = solve(&s, &cfg_b)?;
    let record = compare_labeled(
        &s,
        (mode_a.as_str(), &sol_a.placement),
        (mode_b.as_str(), &sol_b.placement),
        s.median_load(),
    )?;

    let table_path = a.out.unwrap_or_else(|| PathBuf::from("comparison.csv"));
    fio::write_report(&table_path, &sol_b.report, Some(&record))?;

    writeln!(
        out,
        "{:<20} {:>20} {:>20} {:>8}",
        "metric", mode_a, mode_b, "winner"
    )?;
    for m in &record.metrics {
        let winner = match m.winner {
            uavkm::metrics::Winner::A => mode_a.as_str(),
            uavkm::metrics::Winner::B => mode_b.as_str(),
            uavkm::metrics::Winner::Tie => "tie",
        };
        writeln!(
            out,
            "{:<20} {:>20} {:>20} {:>8}",
            m.metric,
            format_sig12(m.a),
            format_sig12(m.b),
            winner
        )?;
    }
    writeln!(out, "wrote {}", table_path.display())?;

    if let Some(dir) = a.plot_dir {
        std::fs::create_dir_all(&dir).map_err(|e| {
            CliError::Data(uavkm::Error::Io {
                path: dir.clone(),
                source: e,
            })
        })?;
        for (mode, sol) in [(mode_a, &sol_a), (mode_b, &sol_b)] {
            let path = dir.join(format!("{mode}.svg"));
            fio::write_svg(&path, &s, &sol.placement, mode.as_str())?;
            writeln!(out, "wrote {}", path.display())?;
        }
    }
    Ok(())
}

pub fn plot(args: PlotArgs, out: &mut dyn Write) -> CliResult {
    let a = with_config(
        args.config.clone().as_deref(),
        PLOT_KEYS,
        args,
        PlotArgs::overlay,
    )?;
    let s = load_scenario(&required(a.scenario, "scenario")?)?;
    let p = fio::read_placement(required(a.placement, "placement")?)?;
    let path = a.out.unwrap_or_else(|| PathBuf::from("placement.svg"));
    fio::write_svg(&path, &s, &p, a.title.as_deref().unwrap_or("placement"))?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(())
}

pub fn acceptance(args: AcceptanceArgs, out: &mut dyn Write) -> CliResult {
    let wanted =
        |id: &str| args.only.is_empty() || args.only.iter().any(|o| o.eq_ignore_ascii_case(id));
    let outcomes = crate::acceptance::run_all(&wanted);
    if outcomes.is_empty() {
        return Err(CliError::Usage("no criteria selected".into()));
    }
    for o in &outcomes {
        writeln!(out, "{o}")?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(
        out,
        "{}/{} criteria passed",
        outcomes.len() - failed,
        outcomes.len()
    )?;
    if failed > 0 {
        return Err(CliError::CriteriaFailed {
            failed,
            total: outcomes.len(),
        });
    }
    Ok(())
}
