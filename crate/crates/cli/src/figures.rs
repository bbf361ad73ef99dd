//! Canned sweeps for figures 2 to 11.
//!
//! Each figure fixes the input state, its mean photon number (1.0 unless
//! swept), a 50:50 splitter and `s = 0.5` when the mean is swept. `s` runs
//! over `[0, 2]` and the mean over `[0, 5]`, both in steps of 0.02 / 0.05.

use std::f64::consts::FRAC_PI_4;

use crate::error::{usage, Result};
use crate::point::{InputKind, PlacementArg, PointParams};
use crate::sweep::{Metric, SweepSpec, Variable};

pub const S_RANGE: (f64, f64, usize) = (0.0, 2.0, 101);
pub const NBAR_RANGE: (f64, f64, usize) = (0.0, 5.0, 101);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure {
    pub id: &'static str,
    pub metric: Metric,
    pub input: InputKind,
    pub variable: Variable,
    pub n_values: &'static [usize],
    /// Mean photon number when it is not the swept variable.
    pub nbar: f64,
    /// Amplifier strength when it is not the swept variable.
    pub s: f64,
    pub theta: f64,
    /// Adds the input state's H as a reference curve.
    pub input_h: bool,
}

const N123: &[usize] = &[1, 2, 3];
const N1: &[usize] = &[1];

const fn fig(
    id: &'static str,
    metric: Metric,
    input: InputKind,
    variable: Variable,
    n_values: &'static [usize],
    input_h: bool,
) -> Figure {
    Figure {
        id,
        metric,
        input,
        variable,
        n_values,
        nbar: 1.0,
        s: 0.5,
        theta: FRAC_PI_4,
        input_h,
    }
}

use InputKind::{PhaseDiffused as Pd, Thermal};
use Metric::{HellingerH as H, MandelQ as Q, Probability as P};
use Variable::{Nbar, S};

pub const FIGURES: &[Figure] = &[
    fig("fig2", P, Thermal, S, N123, false),
    fig("fig3", Q, Thermal, S, N1, false),
    fig("fig4", Q, Thermal, Nbar, N1, false),
    fig("fig5", H, Thermal, S, N123, false),
    fig("fig6", H, Thermal, Nbar, N123, false),
    fig("fig7", P, Pd, S, N123, false),
    fig("fig8", Q, Pd, S, N123, false),
    fig("fig9", Q, Pd, Nbar, N1, false),
    fig("fig10", H, Pd, S, N123, true),
    fig("fig11", H, Pd, Nbar, N123, true),
];

pub fn lookup(id: &str) -> Result<&'static Figure> {
    FIGURES.iter().find(|f| f.id == id).ok_or_else(|| {
        let known: Vec<&str> = FIGURES.iter().map(|f| f.id).collect();
        usage(format!("unknown figure '{id}', expected one of {}", known.join(", ")))
    })
}

impl Figure {
    pub fn sweep(&self) -> SweepSpec {
        let (start, stop, steps) = match self.variable {
            Variable::Nbar => NBAR_RANGE,
            _ => S_RANGE,
        };
        SweepSpec {
            variable: self.variable,
            start,
            stop,
            steps,
            fixed: PointParams {
                input: self.input,
                nbar: self.nbar,
                s: self.s,
                phi: 0.0,
                theta: self.theta,
                n: self.n_values[0],
                placement: PlacementArg::A,
                cutoff: None,
            },
            n_values: self.n_values.to_vec(),
            metrics: vec![self.metric],
            input_h: self.input_h,
        }
    }

    /// e.g. `fig2_probability_thermal_vs_s.csv`.
    pub fn file_stem(&self) -> String {
        format!(
            "{}_{}_{}_vs_{}",
            self.id,
            self.metric.name(),
            self.input.name(),
            self.variable.name()
        )
    }

    pub fn title(&self) -> String {
        let ns: Vec<String> = self.n_values.iter().map(|n| n.to_string()).collect();
        format!(
            "{}: {} vs {} ({} input, N = {})",
            self.id,
            self.metric.name(),
            self.variable.name(),
            self.input.name(),
            ns.join(",")
        )
    }
}
