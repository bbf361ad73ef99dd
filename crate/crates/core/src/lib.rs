//! Simulation of a quantum-scissors device built from a nondegenerate
//! parametric amplifier, a beam splitter and two photodetectors, acting on
//! Fock-diagonal (mixed) input light.
//!
//! - [`fock`]: photon-number distributions, thermal and phase-diffused inputs.
//! - [`optics`]: Fock-basis squeezer and beam-splitter actions.
//! - [`scissors`]: closed-form heralded states and probabilities.
//! - [`metrics`]: Mandel Q and Hellinger non-Gaussianity.
//! - [`oracle`]: brute-force evolution and post-selection used to validate
//!   [`scissors`].

pub mod error;
pub mod fock;
pub mod metrics;
pub mod optics;
pub mod oracle;
pub mod scissors;

pub use error::{Error, Result};
pub use fock::{phase_diffused_distribution, thermal_distribution, PhotonNumberDistribution};
pub use metrics::{hellinger_nongaussianity, mandel_q, mandel_q_thermal_closed_form, metrics_report, MetricsReport};
pub use optics::{BeamSplitterParams, SqueezerParams, TwoModePureState};
pub use oracle::{postselect, DetectionOutcome, OracleOutcome, TripartiteState};
pub use scissors::{
    probability_a, probability_b, truncate, truncated_state_a, truncated_state_b, Placement, ScissorsConfig, Support,
    TruncatedState,
};
