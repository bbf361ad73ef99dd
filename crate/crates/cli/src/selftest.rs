//! Closed form versus oracle over a fixed parameter grid.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use rayon::prelude::*;

use qscissors_core::oracle::{postselect, DEFAULT_CUTOFF};
use qscissors_core::{
    phase_diffused_distribution, thermal_distribution, truncate, BeamSplitterParams, DetectionOutcome, Placement,
    ScissorsConfig, SqueezerParams,
};

use crate::error::Result;
use crate::point::InputKind;

pub const NBARS: [f64; 3] = [0.5, 1.0, 2.0];
pub const STRENGTHS: [f64; 3] = [0.3, 0.5, 1.0];
pub const ANGLES: [f64; 3] = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3];
pub const HERALDS: [usize; 4] = [0, 1, 2, 3];
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub input: InputKind,
    pub nbar: f64,
    pub s: f64,
    pub theta: f64,
    pub n: usize,
    pub placement: Placement,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub point: GridPoint,
    pub dist: f64,
    pub probability: f64,
}

pub fn grid() -> Vec<GridPoint> {
    let mut out = Vec::new();
    for input in [InputKind::Thermal, InputKind::PhaseDiffused] {
        for nbar in NBARS {
            for s in STRENGTHS {
                for theta in ANGLES {
                    for n in HERALDS {
                        for placement in [Placement::BOutCOut, Placement::AOutCOut] {
                            out.push(GridPoint {
                                input,
                                nbar,
                                s,
                                theta,
                                n,
                                placement,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn compare(point: &GridPoint, cutoff: usize) -> Result<Deviation> {
    let input = match point.input {
        InputKind::Thermal => thermal_distribution(point.nbar, cutoff)?,
        InputKind::PhaseDiffused => phase_diffused_distribution(point.nbar, cutoff)?,
    };
    let sq = SqueezerParams::new(point.s, 0.0)?;
    let bs = BeamSplitterParams::new(point.theta)?;
    let cfg = ScissorsConfig::new(sq, bs, point.n, point.placement);
    let closed = truncate(&input, &cfg, cutoff + point.n)?;
    let brute = postselect(
        &input,
        &sq,
        &bs,
        &DetectionOutcome::new(point.placement, point.n),
        cutoff,
    )?;
    let (a, b) = (closed.dist.probs(), brute.dist.probs());
    let dist = (0..a.len().max(b.len()))
        .map(|i| (a.get(i).unwrap_or(&0.0) - b.get(i).unwrap_or(&0.0)).abs())
        .fold(0.0, f64::max);
    Ok(Deviation {
        point: *point,
        dist,
        probability: (closed.probability - brute.probability).abs(),
    })
}

/// Runs the whole grid, in grid order.
pub fn run(cutoff: usize) -> Result<Vec<Deviation>> {
    grid().par_iter().map(|p| compare(p, cutoff)).collect()
}

pub fn run_default() -> Result<Vec<Deviation>> {
    run(DEFAULT_CUTOFF)
}
