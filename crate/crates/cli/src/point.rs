//! Evaluation of a single device setting.

use serde::Deserialize;

use qscissors_core::fock::{phase_diffused_auto, thermal_auto};
use qscissors_core::oracle::{postselect, DEFAULT_CUTOFF};
use qscissors_core::{
    metrics_report, phase_diffused_distribution, thermal_distribution, truncate, BeamSplitterParams, DetectionOutcome,
    Error, MetricsReport, OracleOutcome, PhotonNumberDistribution, Placement, ScissorsConfig, SqueezerParams,
    TruncatedState,
};

use crate::error::{usage, Result};

/// Largest heralded photon number accepted on the command line.
pub const MAX_DETECTED_N: usize = 20;

/// Input tail left out by the automatic cutoff.
pub const INPUT_TAIL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    /// Thermal (geometric) photon statistics.
    Thermal,
    /// Phase-diffused coherent state (Poisson statistics).
    #[value(name = "pd", alias = "phase-diffused")]
    #[serde(rename = "pd", alias = "phase_diffused")]
    PhaseDiffused,
}

impl InputKind {
    pub fn name(self) -> &'static str {
        match self {
            InputKind::Thermal => "thermal",
            InputKind::PhaseDiffused => "pd",
        }
    }
}

/// Detector placement as spelled on the command line: `a` heralds at
/// `b_out`/`c_out` and leaves mode a, `b` heralds at `a_out`/`c_out`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PlacementArg {
    A,
    B,
}

impl From<PlacementArg> for Placement {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::A => Placement::BOutCOut,
            PlacementArg::B => Placement::AOutCOut,
        }
    }
}

/// Everything that fixes one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointParams {
    pub input: InputKind,
    pub nbar: f64,
    pub s: f64,
    pub phi: f64,
    pub theta: f64,
    pub n: usize,
    pub placement: PlacementArg,
    /// Input cutoff; chosen from [`INPUT_TAIL_TOLERANCE`] when `None`.
    pub cutoff: Option<usize>,
}

impl PointParams {
    /// Rejects settings outside the physical domain with a usage error.
    pub fn validate(&self) -> Result<()> {
        if !self.nbar.is_finite() || self.nbar < 0.0 {
            return Err(usage(format!("--nbar must be a finite number >= 0, got {}", self.nbar)));
        }
        if !self.s.is_finite() || self.s < 0.0 {
            return Err(usage(format!("--s must be a finite number >= 0, got {}", self.s)));
        }
        if !self.theta.is_finite() {
            return Err(usage(format!("--theta must be finite, got {}", self.theta)));
        }
        if !self.phi.is_finite() {
            return Err(usage(format!("--phi must be finite, got {}", self.phi)));
        }
        if self.n > MAX_DETECTED_N {
            return Err(usage(format!("--N must be at most {MAX_DETECTED_N}, got {}", self.n)));
        }
        Ok(())
    }

    pub fn config(&self) -> Result<ScissorsConfig> {
        Ok(ScissorsConfig::new(
            SqueezerParams::new(self.s, self.phi)?,
            BeamSplitterParams::new(self.theta)?,
            self.n,
            self.placement.into(),
        ))
    }

    pub fn input_distribution(&self) -> Result<PhotonNumberDistribution> {
        let dist = match (self.input, self.cutoff) {
            (InputKind::Thermal, Some(c)) => thermal_distribution(self.nbar, c)?,
            (InputKind::PhaseDiffused, Some(c)) => phase_diffused_distribution(self.nbar, c)?,
            (InputKind::Thermal, None) => thermal_auto(self.nbar, INPUT_TAIL_TOLERANCE)?,
            (InputKind::PhaseDiffused, None) => phase_diffused_auto(self.nbar, INPUT_TAIL_TOLERANCE)?,
        };
        // The max-Fock herald reads rho_0..rho_N, so never stop short of N.
        if self.cutoff.is_none() && dist.cutoff() < self.n {
            return Ok(match self.input {
                InputKind::Thermal => thermal_distribution(self.nbar, self.n)?,
                InputKind::PhaseDiffused => phase_diffused_distribution(self.nbar, self.n)?,
            });
        }
        Ok(dist)
    }
}

/// Heralded state (if the outcome is possible) and its metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub input: PhotonNumberDistribution,
    pub probability: f64,
    pub state: Option<(TruncatedState, MetricsReport)>,
}

/// Output cutoff used for min-Fock states: every retained input term fits.
pub fn output_cutoff(input: &PhotonNumberDistribution, n: usize) -> usize {
    input.cutoff() + n
}

pub fn evaluate(params: &PointParams) -> Result<PointResult> {
    params.validate()?;
    let cfg = params.config()?;
    let input = params.input_distribution()?;
    match truncate(&input, &cfg, output_cutoff(&input, params.n)) {
        Ok(state) => {
            let report = metrics_report(&state.dist);
            Ok(PointResult {
                input,
                probability: state.probability,
                state: Some((state, report)),
            })
        }
        Err(Error::UndefinedState { probability }) => Ok(PointResult {
            input,
            probability,
            state: None,
        }),
        Err(e) => Err(e.into()),
    }
}

/// Brute-force counterpart of [`evaluate`].
pub fn evaluate_oracle(params: &PointParams, input: &PhotonNumberDistribution) -> Result<OracleOutcome> {
    let cfg = params.config()?;
    let outcome = DetectionOutcome::new(cfg.placement, cfg.detected_n);
    Ok(postselect(
        input,
        &cfg.sq,
        &cfg.bs,
        &outcome,
        input.cutoff().max(DEFAULT_CUTOFF),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn base() -> PointParams {
        PointParams {
            input: InputKind::Thermal,
            nbar: 1.0,
            s: 0.5,
            phi: 0.0,
            theta: FRAC_PI_4,
            n: 1,
            placement: PlacementArg::A,
            cutoff: None,
        }
    }

    #[test]
    fn reference_point() {
        let r = evaluate(&base()).unwrap();
        assert!((r.probability - 0.140293).abs() < 1e-6);
        let (_, m) = r.state.unwrap();
        assert!((m.mandel_q + 0.299280).abs() < 1e-6);
        assert!((m.hellinger_h - 0.1878).abs() < 1e-4);
    }

    #[test]
    fn undefined_outcome_has_no_state() {
        let p = PointParams {
            nbar: 0.0,
            s: 0.0,
            ..base()
        };
        let r = evaluate(&p).unwrap();
        assert_eq!(r.probability, 0.0);
        assert!(r.state.is_none());
    }

    #[test]
    fn validation() {
        assert!(PointParams { s: -1.0, ..base() }.validate().is_err());
        assert!(PointParams { nbar: -1.0, ..base() }.validate().is_err());
        assert!(PointParams { n: 21, ..base() }.validate().is_err());
        assert!(PointParams { n: 20, ..base() }.validate().is_ok());
    }

    #[test]
    fn cutoff_never_below_n() {
        let p = PointParams {
            nbar: 0.0,
            n: 5,
            ..base()
        };
        assert_eq!(p.input_distribution().unwrap().cutoff(), 5);
        let p = PointParams {
            cutoff: Some(7),
            ..base()
        };
        assert_eq!(p.input_distribution().unwrap().cutoff(), 7);
    }

    #[test]
    fn oracle_agrees() {
        for placement in [PlacementArg::A, PlacementArg::B] {
            let p = PointParams {
                placement,
                n: 2,
                ..base()
            };
            let r = evaluate(&p).unwrap();
            let o = evaluate_oracle(&p, &r.input).unwrap();
            assert!((o.probability - r.probability).abs() < 1e-12);
        }
    }
}
