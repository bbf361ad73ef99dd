//! Command-line flags and the optional JSON config file that mirrors them.
//! Flags given on the command line win over config values.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::error::{usage, CliError, Result};
use crate::figures::{NBAR_RANGE, S_RANGE};
use crate::point::{InputKind, PlacementArg, PointParams};
use crate::sweep::{Metric, SweepSpec, Variable};

#[derive(Debug, Parser)]
#[command(
    name = "qscissors",
    version,
    about = "Heralded truncation of mixed light states: states, sweeps and figures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Heralded state, probability, Mandel Q and Hellinger H at one setting.
    State(StateArgs),
    /// Sweep one parameter and write CSV.
    Sweep(SweepArgs),
    /// Reproduce a figure (fig2 .. fig11, or `all`) as CSV.
    Figure(FigureArgs),
    /// Check the closed forms against the brute-force oracle on a grid.
    Selftest(SelftestArgs),
}

#[derive(Debug, Default, Args)]
pub struct DeviceArgs {
    /// JSON file with default values for any of these flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Input state to truncate.
    #[arg(long, value_enum)]
    pub input: Option<InputKind>,
    /// Mean photon number of the input state.
    #[arg(long, allow_negative_numbers = true)]
    pub nbar: Option<f64>,
    /// Amplifier strength s >= 0.
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,
    /// Pump phase in radians.
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Beam-splitter angle in radians (T = cos theta); 50:50 is pi/4 = 0.7853981634.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Photons detected at the heralding port (at most 20).
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// `a`: detect at b_out and c_out, output in mode a; `b`: detect at a_out and c_out.
    #[arg(long, value_enum)]
    pub placement: Option<PlacementArg>,
    /// Input photon-number cutoff (default: tail below 1e-12).
    #[arg(long)]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub device: DeviceArgs,
    /// Also run the brute-force oracle and report the deviation.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub device: DeviceArgs,
    /// Swept variable.
    #[arg(long, value_enum)]
    pub var: Option<Variable>,
    #[arg(long, allow_negative_numbers = true)]
    pub start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    /// Number of grid points, including both ends.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Herald counts to tabulate, e.g. `1,2,3` (default: --N).
    #[arg(long, value_delimiter = ',')]
    pub n_values: Option<Vec<usize>>,
    /// Columns to compute per herald count.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub metrics: Option<Vec<Metric>>,
    /// Append the input state's Hellinger H as a column.
    #[arg(long)]
    pub input_h: bool,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also render an SVG line chart to this path.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure id (fig2 .. fig11) or `all`.
    pub id: String,
    /// Directory for `<id>_<metric>_<input>_vs_<var>.csv`; stdout if absent.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Also write an SVG chart next to each CSV (needs --out-dir).
    #[arg(long)]
    pub plot: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Per-mode photon cutoff for the oracle and the inputs.
    #[arg(long, default_value_t = qscissors_core::oracle::DEFAULT_CUTOFF)]
    pub cutoff: usize,
}

/// Contents of a `--config` file. Keys mirror the long flag names.
#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<InputKind>,
    pub nbar: Option<f64>,
    pub s: Option<f64>,
    pub phi: Option<f64>,
    pub theta: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub placement: Option<PlacementArg>,
    pub cutoff: Option<usize>,
    pub oracle: Option<bool>,
    pub var: Option<Variable>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub steps: Option<usize>,
    pub n_values: Option<Vec<usize>>,
    pub metrics: Option<Vec<Metric>>,
    pub input_h: Option<bool>,
    pub output: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Config {
            path: path.into(),
            source,
        })
    }

    fn for_device(device: &DeviceArgs) -> Result<Self> {
        device.config.as_deref().map_or_else(|| Ok(Self::default()), Self::load)
    }
}

impl DeviceArgs {
    fn resolve(&self, file: &FileConfig) -> PointParams {
        PointParams {
            input: self.input.or(file.input).unwrap_or(InputKind::Thermal),
            nbar: self.nbar.or(file.nbar).unwrap_or(1.0),
            s: self.s.or(file.s).unwrap_or(0.5),
            phi: self.phi.or(file.phi).unwrap_or(0.0),
            theta: self.theta.or(file.theta).unwrap_or(FRAC_PI_4),
            n: self.n.or(file.n).unwrap_or(1),
            placement: self.placement.or(file.placement).unwrap_or(PlacementArg::A),
            cutoff: self.cutoff.or(file.cutoff),
        }
    }
}

/// Resolved `state` settings.
pub struct StateRequest {
    pub point: PointParams,
    pub oracle: bool,
}

impl StateArgs {
    pub fn resolve(&self) -> Result<StateRequest> {
        let file = FileConfig::for_device(&self.device)?;
        let point = self.device.resolve(&file);
        point.validate()?;
        Ok(StateRequest {
            point,
            oracle: self.oracle || file.oracle.unwrap_or(false),
        })
    }
}

/// Resolved `sweep` settings.
pub struct SweepRequest {
    pub spec: SweepSpec,
    pub output: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

impl SweepArgs {
    pub fn resolve(&self) -> Result<SweepRequest> {
        let file = FileConfig::for_device(&self.device)?;
        let fixed = self.device.resolve(&file);
        let variable = self
            .var
            .or(file.var)
            .ok_or_else(|| usage("sweep needs --var (s, theta, nbar or N)"))?;
        let (start, stop, steps) = match variable {
            Variable::S => S_RANGE,
            Variable::Nbar => NBAR_RANGE,
            Variable::Theta => (0.0, FRAC_PI_2, 91),
            Variable::N => (0.0, 5.0, 6),
        };
        let spec = SweepSpec {
            variable,
            start: self.start.or(file.start).unwrap_or(start),
            stop: self.stop.or(file.stop).unwrap_or(stop),
            steps: self.steps.or(file.steps).unwrap_or(steps),
            fixed,
            n_values: self.n_values.clone().or(file.n_values).unwrap_or_else(|| vec![fixed.n]),
            metrics: self
                .metrics
                .clone()
                .or(file.metrics)
                .unwrap_or_else(|| vec![Metric::Probability, Metric::MandelQ, Metric::HellingerH]),
            input_h: self.input_h || file.input_h.unwrap_or(false),
        };
        spec.validate()?;
        Ok(SweepRequest {
            spec,
            output: self.output.clone().or(file.output),
            plot: self.plot.clone().or(file.plot),
        })
    }
}
