//! One-dimensional parameter sweeps rendered as CSV.

use rayon::prelude::*;
use serde::Deserialize;

use qscissors_core::hellinger_nongaussianity;

use crate::error::{usage, Result};
use crate::format::csv_number;
use crate::point::{evaluate, PointParams, PointResult, MAX_DETECTED_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
pub enum Variable {
    #[value(name = "s")]
    #[serde(rename = "s")]
    S,
    #[value(name = "theta")]
    #[serde(rename = "theta")]
    Theta,
    #[value(name = "nbar")]
    #[serde(rename = "nbar")]
    Nbar,
    #[value(name = "N")]
    #[serde(rename = "N")]
    N,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::S => "s",
            Variable::Theta => "theta",
            Variable::Nbar => "nbar",
            Variable::N => "N",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Probability,
    #[value(name = "mandel_q")]
    MandelQ,
    #[value(name = "hellinger_h")]
    HellingerH,
    Mean,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Probability => "probability",
            Metric::MandelQ => "mandel_q",
            Metric::HellingerH => "hellinger_h",
            Metric::Mean => "mean",
        }
    }

    /// `None` when the heralded state does not exist.
    fn extract(self, r: &PointResult) -> Option<f64> {
        match self {
            Metric::Probability => Some(r.probability),
            Metric::MandelQ => r.state.as_ref().map(|(_, m)| m.mandel_q),
            Metric::HellingerH => r.state.as_ref().map(|(_, m)| m.hellinger_h),
            Metric::Mean => r.state.as_ref().map(|(_, m)| m.mean),
        }
    }
}

/// A sweep of one variable over an evenly spaced grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: Variable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    /// Values of the non-swept parameters. `fixed.n` is ignored unless `N`
    /// is swept; `n_values` lists the herald counts instead.
    pub fixed: PointParams,
    pub n_values: Vec<usize>,
    pub metrics: Vec<Metric>,
    /// Append the Hellinger H of the input state as a final column.
    pub input_h: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(usage(format!("--steps must be at least 2, got {}", self.steps)));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start >= self.stop {
            return Err(usage(format!("need start < stop, got {} .. {}", self.start, self.stop)));
        }
        if self.metrics.is_empty() {
            return Err(usage("at least one metric is required"));
        }
        match self.variable {
            Variable::S | Variable::Nbar if self.start < 0.0 => {
                return Err(usage(format!(
                    "{} must be >= 0, sweep starts at {}",
                    self.variable.name(),
                    self.start
                )));
            }
            Variable::N => {
                for x in self.grid() {
                    if (x - x.round()).abs() > 1e-9 || x < 0.0 || x > MAX_DETECTED_N as f64 {
                        return Err(usage(format!(
                            "sweeping N needs integer grid points in 0..={MAX_DETECTED_N}, got {x}"
                        )));
                    }
                }
            }
            _ => {}
        }
        if self.variable != Variable::N {
            if self.n_values.is_empty() {
                return Err(usage("at least one herald count (--n-values) is required"));
            }
            if let Some(n) = self.n_values.iter().find(|n| **n > MAX_DETECTED_N) {
                return Err(usage(format!("herald count {n} exceeds {MAX_DETECTED_N}")));
            }
        }
        self.fixed.validate()
    }

    /// `start + (stop - start) i / (steps - 1)` for `i = 0..steps`.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.start + span * i as f64 / last).collect()
    }

    fn point_at(&self, x: f64, n: usize) -> PointParams {
        let mut p = PointParams { n, ..self.fixed };
        match self.variable {
            Variable::S => p.s = x,
            Variable::Theta => p.theta = x,
            Variable::Nbar => p.nbar = x,
            Variable::N => p.n = x.round() as usize,
        }
        p
    }

    pub fn header(&self) -> Vec<String> {
        let mut cols = vec![self.variable.name().to_string()];
        if self.variable == Variable::N {
            cols.extend(self.metrics.iter().map(|m| m.name().to_string()));
        } else {
            for n in &self.n_values {
                cols.extend(self.metrics.iter().map(|m| format!("{}_N{n}", m.name())));
            }
        }
        if self.input_h {
            cols.push("h_input".into());
        }
        cols
    }

    fn row(&self, x: f64) -> Result<Vec<Option<f64>>> {
        let herald_counts = if self.variable == Variable::N {
            vec![x.round() as usize]
        } else {
            self.n_values.clone()
        };
        let mut row = vec![Some(x)];
        let mut input = None;
        for n in herald_counts {
            let r = evaluate(&self.point_at(x, n))?;
            row.extend(self.metrics.iter().map(|m| m.extract(&r)));
            input.get_or_insert(r.input);
        }
        if self.input_h {
            row.push(input.as_ref().map(hellinger_nongaussianity));
        }
        Ok(row)
    }

    /// Evaluates every grid point. Rows come back in grid order whatever
    /// order the worker threads finish in.
    pub fn run(&self) -> Result<Vec<Vec<Option<f64>>>> {
        self.validate()?;
        self.grid().into_par_iter().map(|x| self.row(x)).collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let rows = self.run()?;
        Ok(render_csv(&self.header(), &rows))
    }
}

/// Header plus rows; missing values are written as `NA`.
pub fn render_csv(header: &[String], rows: &[Vec<Option<f64>>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|v| v.map_or_else(|| "NA".to_string(), csv_number))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
