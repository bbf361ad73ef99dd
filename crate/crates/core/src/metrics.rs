//! Nonclassicality quantifiers for Fock-diagonal states.

use crate::error::{domain, Result};
use crate::fock::PhotonNumberDistribution;
use crate::optics::{BeamSplitterParams, SqueezerParams};

/// Photon-number moments and nonclassicality figures of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub mean: f64,
    pub variance: f64,
    pub mandel_q: f64,
    pub hellinger_h: f64,
}

/// Mandel's `Q = Var(n)/<n> - 1`.
///
/// The vacuum (`<n> = 0`) gets `Q = 0`, the value for the coherent states
/// it is the limit of.
pub fn mandel_q(dist: &PhotonNumberDistribution) -> f64 {
    let mean = dist.mean_photon();
    if mean == 0.0 {
        return 0.0;
    }
    dist.photon_variance() / mean - 1.0
}

/// Mandel Q of the `b_out`-heralded state for thermal input, in closed form:
///
/// `Q = -tanh^2 s |T|^2 / (nbar/(1+nbar) |R|^2 + tanh^2 s |T|^2)`
///
/// which is the same for every heralded photon number `N >= 1`.
pub fn mandel_q_thermal_closed_form(nbar_th: f64, sq: &SqueezerParams, bs: &BeamSplitterParams) -> Result<f64> {
    if !nbar_th.is_finite() || nbar_th < 0.0 {
        return Err(domain(format!("thermal mean must be finite and >= 0, got {nbar_th}")));
    }
    let gain = sq.strength().tanh().powi(2) * bs.transmissivity();
    let denom = nbar_th / (1.0 + nbar_th) * bs.reflectivity() + gain;
    if denom.is_nan() || denom <= 0.0 {
        return Err(domain("closed-form Q undefined: denominator vanishes"));
    }
    Ok(-gain / denom)
}

/// Hellinger non-Gaussianity of a Fock-diagonal state,
/// `H = sqrt(1 - sum_n sqrt(p_n q_n))` with `q_n` the thermal distribution of
/// the same mean. That thermal state is the Gaussian reference of any
/// phase-insensitive diagonal state.
///
/// The sum stops at `dist.cutoff()`; [`hellinger_tail_bound`] bounds the
/// omitted part. The result is clipped to `[0, 1]`.
pub fn hellinger_nongaussianity(dist: &PhotonNumberDistribution) -> f64 {
    let nbar = dist.mean_photon();
    let ratio = nbar / (nbar + 1.0);
    let mut reference = 1.0 / (nbar + 1.0);
    let mut fidelity = 0.0;
    for &p in dist.probs() {
        fidelity += (p * reference).sqrt();
        reference *= ratio;
    }
    (1.0 - fidelity).clamp(0.0, 1.0).sqrt()
}

/// Bound on the Bhattacharyya terms omitted above the cutoff:
/// by Cauchy-Schwarz `sum_{n>c} sqrt(p_n q_n) <= sqrt(tail_mass * ratio^{c+1})`.
pub fn hellinger_tail_bound(dist: &PhotonNumberDistribution) -> f64 {
    let nbar = dist.mean_photon();
    let ratio = nbar / (nbar + 1.0);
    (dist.tail_mass() * ratio.powi(dist.cutoff() as i32 + 1)).sqrt()
}

pub fn metrics_report(dist: &PhotonNumberDistribution) -> MetricsReport {
    MetricsReport {
        mean: dist.mean_photon(),
        variance: dist.photon_variance(),
        mandel_q: mandel_q(dist),
        hellinger_h: hellinger_nongaussianity(dist),
    }
}
