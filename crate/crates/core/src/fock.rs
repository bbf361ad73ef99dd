//! Fock-diagonal single-mode states and their photon-number moments.
//!
//! A [`PhotonNumberDistribution`] stores `p_0 ..= p_cutoff` together with an
//! estimate of the probability mass above the cutoff. Moments are computed
//! from the stored entries only; the tail is not extrapolated. Ask for a
//! larger cutoff (or use the `*_auto` constructors) when moments are needed to
//! high precision.

use crate::error::{domain, Error, Result};

/// Normalization slack accepted by [`PhotonNumberDistribution::new`].
const NORM_TOLERANCE: f64 = 1e-9;

/// Largest Poisson mean whose vacuum weight `e^{-nbar}` stays a normal double.
pub const MAX_POISSON_MEAN: f64 = 700.0;

/// Photon-number distribution of a Fock-diagonal mixed state.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonNumberDistribution {
    probs: Vec<f64>,
    tail_mass: f64,
}

impl PhotonNumberDistribution {
    /// Builds a distribution from explicit probabilities and tail estimate.
    ///
    /// Entries must be finite and nonnegative, and `sum(probs) + tail_mass`
    /// must be 1 to within `1e-9`.
    pub fn new(probs: Vec<f64>, tail_mass: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(domain("distribution needs at least one entry"));
        }
        if let Some((n, p)) = probs.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
            return Err(domain(format!(
                "probability p_{n} = {p} is not a finite nonnegative number"
            )));
        }
        if !tail_mass.is_finite() || tail_mass < 0.0 {
            return Err(domain(format!("tail mass {tail_mass} must be finite and nonnegative")));
        }
        let total: f64 = probs.iter().sum::<f64>() + tail_mass;
        if (total - 1.0).abs() > NORM_TOLERANCE {
            return Err(domain(format!("distribution sums to {total}, expected 1")));
        }
        Ok(Self { probs, tail_mass })
    }

    /// Internal constructor for already-validated data.
    pub(crate) fn from_parts(probs: Vec<f64>, tail_mass: f64) -> Self {
        debug_assert!(!probs.is_empty());
        debug_assert!(probs.iter().all(|p| *p >= 0.0));
        Self { probs, tail_mass }
    }

    /// The pure Fock state `|n><n|`.
    pub fn fock(n: usize) -> Self {
        let mut probs = vec![0.0; n + 1];
        probs[n] = 1.0;
        Self { probs, tail_mass: 0.0 }
    }

    pub fn vacuum() -> Self {
        Self::fock(0)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Largest stored photon number.
    pub fn cutoff(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// `p_n`, or 0 above the cutoff.
    pub fn get(&self, n: usize) -> f64 {
        self.probs.get(n).copied().unwrap_or(0.0)
    }

    /// Sum of the stored entries, excluding the tail.
    pub fn stored_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// `<n> = sum_n n p_n` over the stored entries.
    pub fn mean_photon(&self) -> f64 {
        self.probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    /// `<n^2> - <n>^2` over the stored entries. Rounding residue below `1e-14`
    /// in magnitude is reported as exactly zero.
    pub fn photon_variance(&self) -> f64 {
        let mean = self.mean_photon();
        let second: f64 = self.probs.iter().enumerate().map(|(n, p)| (n * n) as f64 * p).sum();
        let var = second - mean * mean;
        if var.abs() < 1e-14 {
            0.0
        } else {
            var
        }
    }
}

fn check_mean(nbar: f64) -> Result<()> {
    if !nbar.is_finite() || nbar < 0.0 {
        return Err(domain(format!(
            "mean photon number must be finite and >= 0, got {nbar}"
        )));
    }
    Ok(())
}

/// Thermal (geometric) distribution `p_n = nbar^n / (nbar+1)^(n+1)` up to
/// `cutoff`, with the closed-form geometric tail.
pub fn thermal_distribution(nbar: f64, cutoff: usize) -> Result<PhotonNumberDistribution> {
    check_mean(nbar)?;
    let ratio = nbar / (nbar + 1.0);
    let mut probs = Vec::with_capacity(cutoff + 1);
    let mut p = 1.0 / (nbar + 1.0);
    for _ in 0..=cutoff {
        probs.push(p);
        p *= ratio;
    }
    let tail_mass = ratio.powi(cutoff as i32 + 1);
    Ok(PhotonNumberDistribution { probs, tail_mass })
}

/// Poisson distribution with mean `nbar`, which is the photon statistics of
/// a phase-diffused coherent state.
///
/// Uses `p_0 = e^{-nbar}`, `p_{n+1} = p_n nbar/(n+1)`. The tail is summed
/// forward with the same recurrence rather than taken as `1 - sum`, which
/// would lose all precision once the tail drops below machine epsilon.
pub fn phase_diffused_distribution(nbar: f64, cutoff: usize) -> Result<PhotonNumberDistribution> {
    check_mean(nbar)?;
    if nbar > MAX_POISSON_MEAN {
        return Err(domain(format!(
            "Poisson mean {nbar} exceeds {MAX_POISSON_MEAN}; e^(-nbar) underflows"
        )));
    }
    let mut probs = Vec::with_capacity(cutoff + 1);
    let mut p = (-nbar).exp();
    for n in 0..=cutoff {
        probs.push(p);
        p *= nbar / (n + 1) as f64;
    }
    Ok(PhotonNumberDistribution {
        probs,
        tail_mass: poisson_tail(nbar, cutoff, p),
    })
}

/// Sum of Poisson weights above `cutoff`, where `first` is `p_{cutoff+1}`.
fn poisson_tail(nbar: f64, cutoff: usize, first: f64) -> f64 {
    let mut tail = 0.0;
    let mut term = first;
    let mut n = cutoff + 1;
    // Past the mode the terms decay at least geometrically.
    while term > 0.0 && (n as f64 <= nbar || term > tail * 1e-18) {
        tail += term;
        term *= nbar / (n + 1) as f64;
        n += 1;
    }
    tail
}

/// Smallest cutoff for which the thermal tail falls below `tol`.
pub fn thermal_cutoff_for(nbar: f64, tol: f64) -> Result<usize> {
    check_mean(nbar)?;
    check_tol(tol)?;
    if nbar == 0.0 {
        return Ok(0);
    }
    let ratio = nbar / (nbar + 1.0);
    // ratio^(c+1) < tol
    let c = (tol.ln() / ratio.ln()).ceil() - 1.0;
    Ok(c.max(0.0) as usize)
}

/// Smallest cutoff for which the Poisson tail falls below `tol`.
pub fn poisson_cutoff_for(nbar: f64, tol: f64) -> Result<usize> {
    check_mean(nbar)?;
    check_tol(tol)?;
    if nbar > MAX_POISSON_MEAN {
        return Err(domain(format!("Poisson mean {nbar} exceeds {MAX_POISSON_MEAN}")));
    }
    let mut cutoff = 0usize;
    let mut p = (-nbar).exp();
    let mut first = p * nbar;
    while poisson_tail(nbar, cutoff, first) >= tol {
        cutoff += 1;
        p = first;
        first = p * nbar / (cutoff + 1) as f64;
    }
    Ok(cutoff)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain(format!("tail tolerance must lie in (0, 1), got {tol}")));
    }
    Ok(())
}

/// Thermal distribution with the cutoff chosen so the tail is below `tol`.
pub fn thermal_auto(nbar: f64, tol: f64) -> Result<PhotonNumberDistribution> {
    thermal_distribution(nbar, thermal_cutoff_for(nbar, tol)?)
}

/// Poisson distribution with the cutoff chosen so the tail is below `tol`.
pub fn phase_diffused_auto(nbar: f64, tol: f64) -> Result<PhotonNumberDistribution> {
    phase_diffused_distribution(nbar, poisson_cutoff_for(nbar, tol)?)
}
