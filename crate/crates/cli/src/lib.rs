//! Library side of the `qscissors` command: argument handling, single-point
//! evaluation, sweeps, figure presets and the oracle self-test.

pub mod args;
pub mod error;
pub mod figures;
pub mod format;
pub mod plot;
pub mod point;
pub mod report;
pub mod selftest;
pub mod sweep;

use std::io::Write;
use std::path::Path;

use args::{Cli, Command, FigureArgs, SelftestArgs, StateArgs, SweepArgs};
use error::{usage, CliError, Result};
use format::csv_number;

/// Runs one parsed command, writing its primary output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::State(a) => run_state(a, out),
        Command::Sweep(a) => run_sweep(a, out),
        Command::Figure(a) => run_figure(a, out),
        Command::Selftest(a) => run_selftest(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn run_state(a: &StateArgs, out: &mut dyn Write) -> Result<()> {
    let req = a.resolve()?;
    let result = point::evaluate(&req.point)?;
    let oracle = if req.oracle {
        Some(point::evaluate_oracle(&req.point, &result.input)?)
    } else {
        None
    };
    emit(out, &report::render_state(&req.point, &result, oracle.as_ref()))
}

fn run_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let req = a.resolve()?;
    let header = req.spec.header();
    let rows = req.spec.run()?;
    let csv = sweep::render_csv(&header, &rows);
    match &req.output {
        Some(path) => write_file(path, &csv)?,
        None => emit(out, &csv)?,
    }
    if let Some(path) = &req.plot {
        let title = format!("{} vs {}", header[1..].join(", "), req.spec.variable.name());
        write_file(path, &plot::line_chart(&title, &header, &rows))?;
    }
    Ok(())
}

fn run_figure(a: &FigureArgs, out: &mut dyn Write) -> Result<()> {
    let figs: Vec<&figures::Figure> = if a.id == "all" {
        figures::FIGURES.iter().collect()
    } else {
        vec![figures::lookup(&a.id)?]
    };
    if a.plot && a.out_dir.is_none() {
        return Err(usage("--plot needs --out-dir"));
    }
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    for fig in figs {
        let spec = fig.sweep();
        let header = spec.header();
        let rows = spec.run()?;
        let csv = sweep::render_csv(&header, &rows);
        match &a.out_dir {
            Some(dir) => {
                let stem = fig.file_stem();
                let path = dir.join(format!("{stem}.csv"));
                write_file(&path, &csv)?;
                if a.plot {
                    write_file(
                        &dir.join(format!("{stem}.svg")),
                        &plot::line_chart(&fig.title(), &header, &rows),
                    )?;
                }
                emit(out, &format!("{}\n", path.display()))?;
            }
            None => emit(out, &format!("# {}\n{csv}", fig.title()))?,
        }
    }
    Ok(())
}

fn run_selftest(a: &SelftestArgs, out: &mut dyn Write) -> Result<()> {
    if a.cutoff < 10 {
        return Err(usage("--cutoff must be at least 10"));
    }
    let devs = selftest::run(a.cutoff)?;
    let worst_dist = devs.iter().map(|d| d.dist).fold(0.0, f64::max);
    let worst_p = devs.iter().map(|d| d.probability).fold(0.0, f64::max);
    let failures: Vec<_> = devs
        .iter()
        .filter(|d| d.dist > selftest::TOLERANCE || d.probability > selftest::TOLERANCE)
        .collect();
    let mut text = format!(
        "selftest: {} points, cutoff {}\nmax |d p_n|         {}\nmax |d probability| {}\n",
        devs.len(),
        a.cutoff,
        csv_number(worst_dist),
        csv_number(worst_p)
    );
    for d in &failures {
        let p = &d.point;
        text += &format!(
            "  FAIL {} nbar={} s={} theta={} N={} {:?}: dist {} prob {}\n",
            p.input.name(),
            p.nbar,
            p.s,
            p.theta,
            p.n,
            p.placement,
            csv_number(d.dist),
            csv_number(d.probability)
        );
    }
    text += if failures.is_empty() {
        "result: PASS\n"
    } else {
        "result: FAIL\n"
    };
    emit(out, &text)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(qscissors_core::Error::Domain(format!(
            "{} grid points deviate by more than {:e}",
            failures.len(),
            selftest::TOLERANCE
        ))))
    }
}
