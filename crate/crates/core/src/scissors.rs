//! Closed-form conditional states of the amplifier/beam-splitter scissors.
//!
//! The input mode `c` carries a Fock-diagonal state `rho_n`. Modes `a` and
//! `b` start in vacuum, pass through the two-mode squeezer, and `b` is then
//! mixed with `c` on the beam splitter. Two detector placements are
//! supported:
//!
//! - [`Placement::BOutCOut`]: `N` photons at `b_out`, none at `c_out`. Mode
//!   `a` is left in a state with support `{0..=N}`.
//! - [`Placement::AOutCOut`]: `N` photons at `a_out`, none at `c_out`. Mode
//!   `b` is left in a state with support `{N, N+1, ...}`.
//!
//! Neither result depends on the pump phase.

use crate::error::{Error, Result};
use crate::fock::PhotonNumberDistribution;
use crate::optics::{binomial_row, BeamSplitterParams, SqueezerParams};

/// Which pair of output ports carries the detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    /// `N` photons at `b_out`, vacuum at `c_out`; the state exits `a_out`.
    BOutCOut,
    /// `N` photons at `a_out`, vacuum at `c_out`; the state exits `b_out`.
    AOutCOut,
}

/// Device settings plus the heralding pattern `(N, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScissorsConfig {
    pub sq: SqueezerParams,
    pub bs: BeamSplitterParams,
    pub detected_n: usize,
    pub placement: Placement,
}

impl ScissorsConfig {
    pub fn new(sq: SqueezerParams, bs: BeamSplitterParams, detected_n: usize, placement: Placement) -> Self {
        Self {
            sq,
            bs,
            detected_n,
            placement,
        }
    }
}

/// Support of a truncated state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// `p_n = 0` for `n > N`.
    MaxFock(usize),
    /// `p_n = 0` for `n < N`.
    MinFock(usize),
}

/// Conditional output state together with its heralding probability.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedState {
    pub dist: PhotonNumberDistribution,
    pub probability: f64,
    pub support: Support,
}

/// Unnormalized weights `sech^2 s C(N,k) rho_{N-k} tanh^{2k}s |T|^{2k} |R|^{2(N-k)}`
/// for `k = 0..=N`.
fn weights_a(input: &PhotonNumberDistribution, cfg: &ScissorsConfig) -> Result<Vec<f64>> {
    let n_det = cfg.detected_n;
    if input.cutoff() < n_det {
        return Err(Error::InsufficientCutoff {
            needed: n_det,
            got: input.cutoff(),
        });
    }
    let s = cfg.sq.strength();
    let sech2 = 1.0 / s.cosh().powi(2);
    let gain = s.tanh().powi(2) * cfg.bs.transmissivity();
    let refl = cfg.bs.reflectivity();
    let binom = binomial_row(n_det);
    Ok((0..=n_det)
        .map(|k| sech2 * binom[k] * input.get(n_det - k) * gain.powi(k as i32) * refl.powi((n_det - k) as i32))
        .collect())
}

/// Heralding probability for `N` photons at `b_out` and none at `c_out`.
pub fn probability_a(input: &PhotonNumberDistribution, cfg: &ScissorsConfig) -> Result<f64> {
    Ok(weights_a(input, cfg)?.iter().sum())
}

/// Conditional state of mode `a` after `N` photons at `b_out` and none at
/// `c_out`. It has support on `0..=N`.
pub fn truncated_state_a(input: &PhotonNumberDistribution, cfg: &ScissorsConfig) -> Result<TruncatedState> {
    let weights = weights_a(input, cfg)?;
    let probability: f64 = weights.iter().sum();
    if probability.is_nan() || probability <= 0.0 {
        return Err(Error::UndefinedState { probability });
    }
    let probs = weights.iter().map(|w| w / probability).collect();
    Ok(TruncatedState {
        dist: PhotonNumberDistribution::from_parts(probs, 0.0),
        probability,
        support: Support::MaxFock(cfg.detected_n),
    })
}

/// Result of the truncated series for the `a_out`/`c_out` placement.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesB {
    /// Unnormalized weights for output photon numbers `N, N+1, ...`.
    pub weights: Vec<f64>,
    /// Upper bound on the omitted part of the series.
    pub tail_bound: f64,
}

/// Sums `sech^2 s tanh^{2N}s |T|^{2N} C(n+N, N) rho_n |R|^{2n}` for input
/// photon numbers `n` up to `min(input.cutoff, cutoff - N)`.
///
/// Every omitted `rho_n` is at most the omitted input mass `m`, so the
/// omitted part of the series is at most
/// `prefactor * m * max_{n > last} C(n+N,N) |R|^{2n}`.
pub fn series_b(input: &PhotonNumberDistribution, cfg: &ScissorsConfig, cutoff: usize) -> Result<SeriesB> {
    let n_det = cfg.detected_n;
    if cutoff < n_det {
        return Err(Error::InsufficientCutoff {
            needed: n_det,
            got: cutoff,
        });
    }
    let s = cfg.sq.strength();
    let prefactor = s.tanh().powi(2 * n_det as i32) * cfg.bs.transmissivity().powi(n_det as i32) / s.cosh().powi(2);
    let refl = cfg.bs.reflectivity();
    let last = input.cutoff().min(cutoff - n_det);

    // c_n = C(n+N, N) |R|^{2n}, built by recurrence to avoid factorials.
    let mut coeff = 1.0f64;
    let mut weights = Vec::with_capacity(last + 1);
    for n in 0..=last {
        weights.push(prefactor * coeff * input.get(n));
        coeff *= (n + n_det + 1) as f64 / (n + 1) as f64 * refl;
    }

    let omitted: f64 = input.probs()[last + 1..].iter().sum::<f64>() + input.tail_mass();
    let tail_bound = if omitted > 0.0 && prefactor > 0.0 {
        prefactor * omitted * max_coefficient_from(last + 1, coeff, n_det, refl)
    } else {
        0.0
    };
    Ok(SeriesB { weights, tail_bound })
}

/// `max_{n >= start} C(n+N,N) r^n` given `c_start = C(start+N,N) r^start`.
fn max_coefficient_from(start: usize, c_start: f64, n_det: usize, refl: f64) -> f64 {
    if refl >= 1.0 {
        // Only reachable with |T| = 0, where the prefactor vanishes for N > 0.
        return if n_det == 0 { 1.0 } else { f64::INFINITY };
    }
    let mut best = c_start;
    let mut c = c_start;
    let mut n = start;
    // Ratio c_{n+1}/c_n = (n+N+1) r/(n+1) falls monotonically towards r < 1.
    while (n + n_det + 1) as f64 * refl > (n + 1) as f64 {
        c *= (n + n_det + 1) as f64 / (n + 1) as f64 * refl;
        best = best.max(c);
        n += 1;
    }
    best
}

/// Heralding probability for `N` photons at `a_out` and none at `c_out`,
/// summed up to `cutoff` output photons. See [`probability_b_bounded`] for
/// the truncation bound.
pub fn probability_b(input: &PhotonNumberDistribution, cfg: &ScissorsConfig, cutoff: usize) -> Result<f64> {
    Ok(probability_b_bounded(input, cfg, cutoff)?.0)
}

/// Partial sum and an upper bound on the omitted remainder.
pub fn probability_b_bounded(
    input: &PhotonNumberDistribution,
    cfg: &ScissorsConfig,
    cutoff: usize,
) -> Result<(f64, f64)> {
    let series = series_b(input, cfg, cutoff)?;
    Ok((series.weights.iter().sum(), series.tail_bound))
}

/// Conditional state of mode `b` after `N` photons at `a_out` and none at
/// `c_out`. Support starts at `N`; photon numbers above `cutoff` are
/// dropped. The distribution's `tail_mass` holds the truncation bound
/// relative to the retained probability.
pub fn truncated_state_b(
    input: &PhotonNumberDistribution,
    cfg: &ScissorsConfig,
    cutoff: usize,
) -> Result<TruncatedState> {
    let n_det = cfg.detected_n;
    let series = series_b(input, cfg, cutoff)?;
    let probability: f64 = series.weights.iter().sum();
    if probability.is_nan() || probability <= 0.0 {
        return Err(Error::UndefinedState { probability });
    }
    let mut probs = vec![0.0; n_det];
    probs.extend(series.weights.iter().map(|w| w / probability));
    Ok(TruncatedState {
        dist: PhotonNumberDistribution::from_parts(probs, series.tail_bound / probability),
        probability,
        support: Support::MinFock(n_det),
    })
}

/// Dispatches on `cfg.placement`. `cutoff` only matters for
/// [`Placement::AOutCOut`].
pub fn truncate(input: &PhotonNumberDistribution, cfg: &ScissorsConfig, cutoff: usize) -> Result<TruncatedState> {
    match cfg.placement {
        Placement::BOutCOut => truncated_state_a(input, cfg),
        Placement::AOutCOut => truncated_state_b(input, cfg, cutoff),
    }
}

/// Heralding probability for `cfg.placement`.
pub fn probability(input: &PhotonNumberDistribution, cfg: &ScissorsConfig, cutoff: usize) -> Result<f64> {
    match cfg.placement {
        Placement::BOutCOut => probability_a(input, cfg),
        Placement::AOutCOut => probability_b(input, cfg, cutoff),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{phase_diffused_distribution, thermal_distribution};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn cfg(s: f64, theta: f64, n: usize, placement: Placement) -> ScissorsConfig {
        ScissorsConfig::new(
            SqueezerParams::new(s, 0.0).unwrap(),
            BeamSplitterParams::new(theta).unwrap(),
            n,
            placement,
        )
    }

    #[test]
    fn single_photon_herald_thermal() {
        let input = thermal_distribution(1.0, 40).unwrap();
        let c = cfg(0.5, FRAC_PI_4, 1, Placement::BOutCOut);
        // Hand evaluation: rho_1 |R|^2 = 0.125, rho_0 |T|^2 tanh^2 s = 0.25 tanh^2(0.5).
        let t2 = 0.5f64.tanh().powi(2);
        let sech2 = 1.0 / 0.5f64.cosh().powi(2);
        let p = sech2 * (0.125 + 0.25 * t2);
        let st = truncated_state_a(&input, &c).unwrap();
        assert_relative_eq!(st.probability, p, max_relative = 1e-14);
        assert_relative_eq!(st.probability, 0.140293, epsilon = 1e-6);
        assert_relative_eq!(st.dist.probs()[0], 0.125 / (0.125 + 0.25 * t2), max_relative = 1e-14);
        assert_relative_eq!(st.dist.probs()[0], 0.700720, epsilon = 1e-6);
        assert_relative_eq!(st.dist.probs()[1], 0.299280, epsilon = 1e-6);
        assert_eq!(st.support, Support::MaxFock(1));
    }

    #[test]
    fn extreme_splitter_angles() {
        for input in [
            thermal_distribution(1.0, 10).unwrap(),
            phase_diffused_distribution(2.0, 10).unwrap(),
        ] {
            let st = truncated_state_a(&input, &cfg(0.5, 0.0, 1, Placement::BOutCOut)).unwrap();
            assert_eq!(st.dist.probs(), &[0.0, 1.0]);
            let st = truncated_state_a(&input, &cfg(0.5, FRAC_PI_2, 1, Placement::BOutCOut)).unwrap();
            assert!((st.dist.probs()[0] - 1.0).abs() <= 1e-15);
            assert!(st.dist.probs()[1] <= 1e-15);
        }
    }

    #[test]
    fn probability_a_special_cases() {
        let input = thermal_distribution(1.0, 10).unwrap();
        let p = probability_a(&input, &cfg(0.0, FRAC_PI_4, 1, Placement::BOutCOut)).unwrap();
        assert_relative_eq!(p, input.get(1) / 2.0, max_relative = 1e-15);
        let s: f64 = 0.7;
        let p = probability_a(&input, &cfg(s, 1.1, 0, Placement::BOutCOut)).unwrap();
        assert_relative_eq!(p, input.get(0) / s.cosh().powi(2), max_relative = 1e-15);
    }

    #[test]
    fn state_a_errors() {
        let short = thermal_distribution(1.0, 1).unwrap();
        assert_eq!(
            truncated_state_a(&short, &cfg(0.5, 0.5, 3, Placement::BOutCOut)),
            Err(Error::InsufficientCutoff { needed: 3, got: 1 })
        );
        // Vacuum input at s = 0 never yields a photon at b_out.
        let vac = PhotonNumberDistribution::vacuum();
        let padded = PhotonNumberDistribution::new(vec![1.0, 0.0], 0.0).unwrap();
        assert!(probability_a(&padded, &cfg(0.0, 0.5, 1, Placement::BOutCOut)).unwrap() == 0.0);
        assert!(matches!(
            truncated_state_a(&padded, &cfg(0.0, 0.5, 1, Placement::BOutCOut)),
            Err(Error::UndefinedState { .. })
        ));
        assert!(truncated_state_a(&vac, &cfg(0.3, 0.5, 0, Placement::BOutCOut)).is_ok());
    }

    #[test]
    fn min_fock_removes_vacuum() {
        let input = thermal_distribution(1.0, 60).unwrap();
        let st = truncated_state_b(&input, &cfg(0.5, FRAC_PI_4, 1, Placement::AOutCOut), 61).unwrap();
        assert_eq!(st.dist.probs()[0], 0.0);
        assert_eq!(st.support, Support::MinFock(1));
        // p_{n+1} proportional to (n+1) rho_n |R|^{2n} = (n+1)(1/2)(1/4)^n
        let norm: f64 = (0..=60).map(|n| (n + 1) as f64 * 0.5 * 0.25f64.powi(n)).sum();
        for n in 0..=20 {
            let want = (n + 1) as f64 * 0.5 * 0.25f64.powi(n as i32) / norm;
            assert_relative_eq!(st.dist.probs()[n + 1], want, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_herald_b_scales_input() {
        let input = thermal_distribution(1.0, 60).unwrap();
        let st = truncated_state_b(&input, &cfg(0.8, FRAC_PI_4, 0, Placement::AOutCOut), 60).unwrap();
        // rho_n (1/2)^n = (1/2)(1/4)^n renormalized
        let norm: f64 = (0..=60).map(|n| 0.5 * 0.25f64.powi(n)).sum();
        for n in 0..=20 {
            assert_relative_eq!(
                st.dist.probs()[n],
                0.5 * 0.25f64.powi(n as i32) / norm,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn probability_b_vanishing_cases() {
        let input = thermal_distribution(1.0, 30).unwrap();
        for n in 1..4 {
            assert_eq!(
                probability_b(&input, &cfg(0.0, FRAC_PI_4, n, Placement::AOutCOut), 40).unwrap(),
                0.0
            );
            let p = probability_b(&input, &cfg(0.5, FRAC_PI_2, n, Placement::AOutCOut), 40).unwrap();
            assert!(p < 1e-30);
            assert!(matches!(
                truncated_state_b(&input, &cfg(0.0, FRAC_PI_4, n, Placement::AOutCOut), 40),
                Err(Error::UndefinedState { .. })
            ));
        }
    }

    #[test]
    fn tail_bound_covers_truncation() {
        let full = thermal_distribution(2.0, 400).unwrap();
        let short = thermal_distribution(2.0, 15).unwrap();
        let c = cfg(0.6, 0.5, 2, Placement::AOutCOut);
        let exact = probability_b(&full, &c, 402).unwrap();
        let (partial, bound) = probability_b_bounded(&short, &c, 17).unwrap();
        assert!(partial <= exact);
        assert!(exact - partial <= bound, "{} > {}", exact - partial, bound);
        assert!(bound > 0.0);
        // Output cutoff tighter than the input cutoff.
        let (partial, bound) = probability_b_bounded(&full, &c, 12).unwrap();
        assert!(exact - partial <= bound);
        assert!(probability_b(&full, &c, 1).is_err());
    }

    #[test]
    fn series_sum_under_one() {
        let input = thermal_distribution(1.0, 60).unwrap();
        let total: f64 = (0..=20)
            .map(|n| probability_a(&input, &cfg(0.5, FRAC_PI_4, n, Placement::BOutCOut)).unwrap())
            .sum();
        assert!(total <= 1.0 && total > 0.0);
    }

    #[test]
    fn large_gain_limit() {
        let input = thermal_distribution(1.0, 10).unwrap();
        let st = truncated_state_a(&input, &cfg(20.0, FRAC_PI_4, 1, Placement::BOutCOut)).unwrap();
        let want = input.get(0) / (input.get(1) + input.get(0));
        assert_relative_eq!(st.dist.probs()[1], want, max_relative = 1e-12);
    }

    proptest! {
        #[test]
        fn pump_phase_never_matters(
            nbar in 0.0f64..4.0, s in 0.01f64..2.0, theta in 0.05f64..1.5,
            n in 0usize..6, phi in -6.0f64..6.0, thermal in any::<bool>(),
        ) {
            let input = if thermal { thermal_distribution(nbar, 30) } else { phase_diffused_distribution(nbar, 30) }.unwrap();
            for placement in [Placement::BOutCOut, Placement::AOutCOut] {
                let a = cfg(s, theta, n, placement);
                let b = ScissorsConfig { sq: SqueezerParams::new(s, phi).unwrap(), ..a };
                prop_assert_eq!(truncate(&input, &a, 36), truncate(&input, &b, 36));
            }
        }

        #[test]
        fn supports_and_normalization(
            nbar in 0.05f64..4.0, s in 0.05f64..2.0, theta in 0.05f64..1.5, n in 0usize..8,
        ) {
            let input = thermal_distribution(nbar, 40).unwrap();
            let a = truncated_state_a(&input, &cfg(s, theta, n, Placement::BOutCOut)).unwrap();
            prop_assert_eq!(a.dist.cutoff(), n);
            prop_assert!((a.dist.stored_mass() - 1.0).abs() <= 1e-12);
            prop_assert!(a.probability >= 0.0 && a.probability <= 1.0);
            // Weights reconstruct from probability * distribution.
            let w = weights_a(&input, &cfg(s, theta, n, Placement::BOutCOut)).unwrap();
            for (k, wk) in w.iter().enumerate() {
                prop_assert!((a.probability * a.dist.probs()[k] - wk).abs() <= 1e-14);
            }

            let b = truncated_state_b(&input, &cfg(s, theta, n, Placement::AOutCOut), 40 + n).unwrap();
            prop_assert!(b.dist.probs()[..n].iter().all(|p| *p == 0.0));
            prop_assert!((b.dist.stored_mass() - 1.0).abs() <= 1e-12);
            prop_assert!(b.probability >= 0.0 && b.probability <= 1.0);
        }
    }
}
