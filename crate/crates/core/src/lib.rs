//! Firing-map analysis for the perfect integrate-and-fire model.
//!
//! The model is the scalar equation `ẋ = f(t)` with threshold `1` and reset to
//! `0`. Starting from a reset at time `t`, the next spike happens at
//!
//! ```text
//! Φ(t) = inf { s > t : ∫_t^s f(u) du = 1 }
//! ```
//!
//! and the `n`-th spike at the first time the integral reaches `n`. This crate
//! computes `Φ`, its iterates, spike trains, the displacement `Ψ(t) = Φ(t) − t`,
//! firing rates and the right-discontinuities of `Φ`, for stimuli given in
//! symbolic form ([`stimulus`]). On top of that, [`almostperiod`] scans for
//! ε-almost periods of stimuli and displacement maps, and checks the
//! quantitative link between Stepanov almost periods of `f` and uniform almost
//! periods of `Ψ`. [`oracle`] holds deliberately naive reference
//! implementations used to cross-check the analytic engine.
//!
//! ```
//! use firingmap::{FiringEngine, Stimulus};
//!
//! let f = Stimulus::trig(1.0, &[(0.0, 0.5, std::f64::consts::TAU)]).unwrap();
//! let engine = FiringEngine::new(f).unwrap();
//! assert!((engine.phi(0.0).unwrap() - 1.0).abs() < 1e-9);
//! ```
//!
//! The runnable programs under `examples/` walk through each analysis.

pub mod almostperiod;
pub mod cli;
pub mod firing;
pub mod oracle;
pub mod report;
pub mod stimulus;

pub use almostperiod::{
    AlmostPeriodScan, ApError, ApVerificationReport, ApproximationReport, ScanOptions, TauRange,
    VerificationStatus,
};
pub use firing::{
    check_well_defined, rate_sequence, DiscontinuityReport, DisplacementProfile, EngineOptions,
    FiringEngine, FiringError, RateEstimate, SpikeTrain, Verdict,
};
pub use oracle::{OracleConfig, OracleError};
pub use stimulus::{Stimulus, StimulusError, Window};
