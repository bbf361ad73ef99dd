//! Brute-force reference for the closed forms in [`crate::scissors`].
//!
//! Each Fock component `|0, 0, n>` of the input is evolved as a pure state:
//! the squeezer acts on `(a, b)` and then the beam splitter acts on `(b, c)`.
//! The two monitored modes are projected and the conditional states are
//! mixed with weights `rho_n`. This never touches the closed-form
//! expressions, so agreement between the two is a real check.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::PhotonNumberDistribution;
use crate::optics::{
    apply_two_mode_squeezer, beam_splitter_ket, BeamSplitterParams, SqueezerParams, TwoModePureState, AMPLITUDE_FLOOR,
};
use crate::scissors::Placement;

/// Per-mode cutoff used when none is given.
pub const DEFAULT_CUTOFF: usize = 30;

/// Strongest amplifier the default cutoff is trusted for; stronger settings
/// are flagged.
pub const MAX_TRUSTED_STRENGTH: f64 = 2.0;

/// Off-diagonal magnitude treated as zero by [`verify_offdiagonal_absence`].
pub const OFFDIAGONAL_TOLERANCE: f64 = 1e-12;

/// Sparse pure state of modes `(a, b, c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripartiteState {
    amps: BTreeMap<(usize, usize, usize), Complex64>,
    cutoff: usize,
    cutoff_warning: bool,
}

impl TripartiteState {
    pub fn amplitude(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.amps.get(&(a, b, c)).copied().unwrap_or_default()
    }

    pub fn amplitudes(&self) -> &BTreeMap<(usize, usize, usize), Complex64> {
        &self.amps
    }

    /// Largest photon number any mode can hold.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Set when squeezer truncation lost more than `1e-10` of the norm, or
    /// when the amplifier is stronger than [`MAX_TRUSTED_STRENGTH`].
    pub fn cutoff_warning(&self) -> bool {
        self.cutoff_warning
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }
}

/// A heralding pattern: `count` photons at the first monitored port and none
/// at `c_out`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectionOutcome {
    pub placement: Placement,
    pub count: usize,
}

impl DetectionOutcome {
    pub fn new(placement: Placement, count: usize) -> Self {
        Self { placement, count }
    }

    /// `(N, 0)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.count, 0)
    }
}

/// Evolves `|0, 0, n>` through the squeezer on `(a, b)` and then the beam
/// splitter on `(b, c)`, keeping up to `cutoff` photons per squeezed mode.
pub fn evolve_component(
    n: usize,
    sq: &SqueezerParams,
    bs: &BeamSplitterParams,
    cutoff: usize,
) -> Result<TripartiteState> {
    if n > cutoff {
        return Err(Error::InsufficientCutoff { needed: n, got: cutoff });
    }
    let squeezed = apply_two_mode_squeezer(&TwoModePureState::vacuum(), sq, cutoff);
    // Squeezed vacuum only holds |k, k>, and the beam splitter conserves
    // b + c, so every output key is distinct and produced in sorted order.
    let mut entries = Vec::new();
    for (&(a, b), &amp) in squeezed.amplitudes() {
        for (b_out, c_out, coeff) in beam_splitter_ket(b, n, bs) {
            let v = amp * coeff;
            if v.norm() >= AMPLITUDE_FLOOR {
                entries.push(((a, b_out, c_out), v));
            }
        }
    }
    let amps: BTreeMap<_, _> = entries.into_iter().collect();
    Ok(TripartiteState {
        amps,
        cutoff: cutoff + n,
        cutoff_warning: squeezed.cutoff_warning() || sq.strength() > MAX_TRUSTED_STRENGTH,
    })
}

/// Oracle's conditional state and heralding probability.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    pub dist: PhotonNumberDistribution,
    pub probability: f64,
    pub cutoff_warning: bool,
}

/// Unnormalized conditional density matrix of the unmonitored mode.
struct Conditional {
    matrix: BTreeMap<(usize, usize), Complex64>,
    cutoff_warning: bool,
}

impl Conditional {
    fn trace(&self) -> f64 {
        self.matrix.iter().filter(|((i, j), _)| i == j).map(|(_, v)| v.re).sum()
    }
}

fn check_input_cutoff(input: &PhotonNumberDistribution, cutoff: usize) -> Result<()> {
    if input.cutoff() > cutoff {
        return Err(Error::InsufficientCutoff {
            needed: input.cutoff(),
            got: cutoff,
        });
    }
    Ok(())
}

/// Splits a basis ket into `((first monitored, c_out), unmonitored)`.
fn split(placement: Placement, (a, b, c): (usize, usize, usize)) -> ((usize, usize), usize) {
    match placement {
        Placement::BOutCOut => ((b, c), a),
        Placement::AOutCOut => ((a, c), b),
    }
}

fn conditional(
    input: &PhotonNumberDistribution,
    sq: &SqueezerParams,
    bs: &BeamSplitterParams,
    outcome: &DetectionOutcome,
    cutoff: usize,
) -> Result<Conditional> {
    check_input_cutoff(input, cutoff)?;
    let mut matrix = BTreeMap::new();
    let mut cutoff_warning = false;
    for (n, &rho) in input.probs().iter().enumerate() {
        if rho == 0.0 {
            continue;
        }
        let state = evolve_component(n, sq, bs, cutoff)?;
        cutoff_warning |= state.cutoff_warning();
        // Projection onto the heralding pattern leaves a pure vector.
        let psi: Vec<(usize, Complex64)> = state
            .amplitudes()
            .iter()
            .filter_map(|(&ket, &amp)| {
                let (monitored, rest) = split(outcome.placement, ket);
                (monitored == outcome.counts()).then_some((rest, amp))
            })
            .collect();
        for &(i, ai) in &psi {
            for &(j, aj) in &psi {
                *matrix.entry((i, j)).or_insert_with(Complex64::default) += ai * aj.conj() * rho;
            }
        }
    }
    Ok(Conditional { matrix, cutoff_warning })
}

/// Conditional photon-number distribution and heralding probability for
/// `outcome`, computed by evolving each input component.
pub fn postselect(
    input: &PhotonNumberDistribution,
    sq: &SqueezerParams,
    bs: &BeamSplitterParams,
    outcome: &DetectionOutcome,
    cutoff: usize,
) -> Result<OracleOutcome> {
    let cond = conditional(input, sq, bs, outcome, cutoff)?;
    let probability = cond.trace();
    if probability.is_nan() || probability <= 0.0 {
        return Err(Error::UndefinedState { probability });
    }
    let len = cond
        .matrix
        .keys()
        .map(|&(i, _)| i + 1)
        .max()
        .unwrap_or(0)
        .max(outcome.count + 1);
    let mut probs = vec![0.0; len];
    for (&(i, j), v) in &cond.matrix {
        if i == j {
            probs[i] = v.re / probability;
        }
    }
    Ok(OracleOutcome {
        dist: PhotonNumberDistribution::from_parts(probs, 0.0),
        probability,
        cutoff_warning: cond.cutoff_warning,
    })
}

/// Whether every off-diagonal element of the normalized conditional state is
/// below `1e-12` in magnitude.
pub fn verify_offdiagonal_absence(
    input: &PhotonNumberDistribution,
    sq: &SqueezerParams,
    bs: &BeamSplitterParams,
    outcome: &DetectionOutcome,
    cutoff: usize,
) -> Result<bool> {
    let cond = conditional(input, sq, bs, outcome, cutoff)?;
    let probability = cond.trace();
    if probability.is_nan() || probability <= 0.0 {
        return Err(Error::UndefinedState { probability });
    }
    Ok(cond
        .matrix
        .iter()
        .filter(|((i, j), _)| i != j)
        .all(|(_, v)| v.norm() / probability < OFFDIAGONAL_TOLERANCE))
}

/// Probabilities of every joint count pattern at the two monitored ports of
/// `placement`, keyed as `(first monitored, c_out)`.
pub fn joint_detection_probabilities(
    input: &PhotonNumberDistribution,
    sq: &SqueezerParams,
    bs: &BeamSplitterParams,
    placement: Placement,
    cutoff: usize,
) -> Result<BTreeMap<(usize, usize), f64>> {
    check_input_cutoff(input, cutoff)?;
    let mut out = BTreeMap::new();
    for (n, &rho) in input.probs().iter().enumerate() {
        if rho == 0.0 {
            continue;
        }
        let state = evolve_component(n, sq, bs, cutoff)?;
        for (&ket, amp) in state.amplitudes() {
            let (monitored, _) = split(placement, ket);
            *out.entry(monitored).or_insert(0.0) += rho * amp.norm_sqr();
        }
    }
    Ok(out)
}
