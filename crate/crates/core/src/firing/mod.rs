//! The firing map `Φ`, its iterates, spike trains, displacement and rates.
//!
//! All crossing searches look for the first `s` with `F(s) − F(t) ≥ n`, where
//! `F` is the closed-form antiderivative of the stimulus. Two search routes:
//!
//! * piecewise-constant stimuli (constant trigonometric parts allowed) are
//!   walked segment by segment and each linear piece is solved exactly;
//! * everything else is marched with the Lipschitz step `gap / B`, where
//!   `B ≥ sup |f|`. Since `F(s + h) − F(s) ≤ B·h`, no step can jump over a
//!   crossing, so the first crossing is never skipped, tangential ones included.

mod discontinuity;

pub use discontinuity::{Discontinuity, DiscontinuityReport};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::stimulus::{Stimulus, Window};

/// Searches give up after this many steps.
const MAX_STEPS: usize = 50_000_000;
/// Non-trigonometric means within this (relative) distance of zero are not
/// trusted to decide well-definedness.
const MEAN_RESOLUTION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// `limsup F = ∞` is guaranteed: every `Φⁿ(t)` exists.
    Defined,
    /// `F` is bounded above: the firing map does not exist.
    Undefined,
    /// The representation does not settle the question.
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Defined => "defined",
            Verdict::Undefined => "undefined",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FiringError {
    #[error("no firing within the search horizon: level {level} not reached from t = {start} by t = {limit}")]
    NoFiringWithinHorizon { start: f64, level: f64, limit: f64 },
    #[error("crossing search stalled after {steps} steps from t = {start} (level {level})")]
    Stalled { start: f64, level: f64, steps: usize },
    #[error("the firing map is {0} for this stimulus")]
    NotWellDefined(Verdict),
    #[error("unsupported stimulus: {0}")]
    UnsupportedStimulus(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Decides whether `limsup_{t→∞} ∫₀ᵗ f = ∞`.
///
/// * positive mean: defined;
/// * negative mean: undefined (`F → −∞`);
/// * pure trigonometric sums: defined iff the constant term is positive;
/// * nonnegative stimuli with zero mean vanish almost everywhere: undefined;
/// * anything else: unknown.
pub fn check_well_defined(f: &Stimulus) -> Verdict {
    if f.leaves().iter().all(|leaf| matches!(leaf, Stimulus::Trig(_))) {
        let c0: f64 = f.trig_parts().map(|p| p.constant_term()).sum();
        return if c0 > 0.0 {
            Verdict::Defined
        } else {
            Verdict::Undefined
        };
    }
    let mean = f.mean();
    let resolution = MEAN_RESOLUTION * f.sup_bound().max(1.0);
    if mean > resolution {
        Verdict::Defined
    } else if mean < -resolution {
        Verdict::Undefined
    } else if f.certified_lower_bound() >= 0.0 {
        Verdict::Undefined
    } else {
        Verdict::Unknown
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EngineOptions {
    /// Time tolerance for located crossings.
    #[serde(serialize_with = "crate::report::real")]
    pub root_tolerance: f64,
    /// Longest span `s − t` a single search may cover.
    #[serde(serialize_with = "crate::report::real")]
    pub search_horizon: f64,
    /// Build an engine even when the verdict is [`Verdict::Unknown`].
    pub allow_unknown: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            root_tolerance: 1e-10,
            search_horizon: 1e6,
            allow_unknown: false,
        }
    }
}

/// A stimulus prepared for firing-time queries. Immutable and `Sync`.
#[derive(Debug, Clone)]
pub struct FiringEngine {
    stimulus: Stimulus,
    options: EngineOptions,
    bound: f64,
    verdict: Verdict,
    exact: bool,
    period_skip: Option<PeriodSkip>,
}

// Whole periods that can be stepped over in the exact walk.
#[derive(Debug, Clone, Copy)]
struct PeriodSkip {
    period: f64,
    // ∫ over one period
    gain: f64,
    // ∫ over one period of the positive part: the largest rise within a period
    rise: f64,
}

impl FiringEngine {
    pub fn new(stimulus: Stimulus) -> Result<Self, FiringError> {
        Self::with_options(stimulus, EngineOptions::default())
    }

    pub fn with_options(stimulus: Stimulus, options: EngineOptions) -> Result<Self, FiringError> {
        if !(options.root_tolerance.is_finite() && options.root_tolerance > 0.0) {
            return Err(FiringError::InvalidParameter(format!(
                "root tolerance must be positive, got {}",
                options.root_tolerance
            )));
        }
        if !(options.search_horizon > 0.0) {
            return Err(FiringError::InvalidParameter(format!(
                "search horizon must be positive, got {}",
                options.search_horizon
            )));
        }
        let verdict = check_well_defined(&stimulus);
        match verdict {
            Verdict::Defined => {}
            Verdict::Unknown if options.allow_unknown => {}
            other => return Err(FiringError::NotWellDefined(other)),
        }
        let bound = stimulus.sup_bound();
        let exact = stimulus.is_piecewise_constant();
        let period_skip = if exact { period_skip(&stimulus) } else { None };
        Ok(FiringEngine {
            stimulus,
            options,
            bound,
            verdict,
            exact,
            period_skip,
        })
    }

    pub fn stimulus(&self) -> &Stimulus {
        &self.stimulus
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    /// The marching bound `B ≥ sup |f|`.
    pub fn crossing_march_bound(&self) -> f64 {
        self.bound
    }

    /// Guaranteed bound on `|F(s) − F(t) − n|` for every returned firing time.
    pub fn residual_tolerance(&self) -> f64 {
        self.options.root_tolerance * (1.0 + self.bound)
    }

    /// `|F(s) − F(t) − level|`.
    pub fn residual(&self, t: f64, s: f64, level: f64) -> f64 {
        (self.stimulus.antiderivative(s) - self.stimulus.antiderivative(t) - level).abs()
    }

    /// `Φ(t)`: the first time after `t` at which `∫_t^s f = 1`.
    pub fn phi(&self, t: f64) -> Result<f64, FiringError> {
        self.phi_n(t, 1)
    }

    /// `Φⁿ(t)`, found directly as the first crossing of level `n`.
    pub fn phi_n(&self, t: f64, n: u64) -> Result<f64, FiringError> {
        if n == 0 {
            return Err(FiringError::InvalidParameter("iterate count must be ≥ 1".into()));
        }
        if !t.is_finite() {
            return Err(FiringError::InvalidParameter(format!("start time {t} is not finite")));
        }
        self.first_crossing(t, t, n as f64)
    }

    /// `Φ¹(t₀) … Φⁿ(t₀)`. Stops early, marking the train truncated, if a
    /// search runs past the horizon.
    pub fn spike_train(&self, t0: f64, n: u64) -> Result<SpikeTrain, FiringError> {
        if n == 0 {
            return Err(FiringError::InvalidParameter("spike count must be ≥ 1".into()));
        }
        if !t0.is_finite() {
            return Err(FiringError::InvalidParameter(format!("start time {t0} is not finite")));
        }
        let mut times = Vec::with_capacity(n as usize);
        let mut residuals = Vec::with_capacity(n as usize);
        let mut truncation = None;
        let mut from = t0;
        for k in 1..=n {
            // Φᵏ⁻¹(t₀) is the first time the integral reaches k − 1 < k, so the
            // level-k search may start there.
            match self.first_crossing(t0, from, k as f64) {
                Ok(s) => {
                    times.push(s);
                    residuals.push(self.residual(t0, s, k as f64));
                    from = s;
                }
                Err(e) => {
                    truncation = Some(e.to_string());
                    break;
                }
            }
        }
        Ok(SpikeTrain {
            start: t0,
            times,
            residuals,
            truncated: truncation.is_some(),
            truncation,
        })
    }

    /// `Ψ(t) = Φ(t) − t` on the window grid.
    pub fn displacement(&self, w: &Window) -> Result<DisplacementProfile, FiringError> {
        let grid = w.grid();
        let values = self.displacement_at(&grid)?;
        Ok(DisplacementProfile {
            window: *w,
            grid,
            values,
        })
    }

    /// `Ψ` at arbitrary points, in order.
    pub fn displacement_at(&self, points: &[f64]) -> Result<Vec<f64>, FiringError> {
        points
            .par_iter()
            .map(|&t| self.phi(t).map(|s| s - t))
            .collect()
    }

    /// `n / Φⁿ(t₀)` against the exact mean.
    pub fn firing_rate(&self, t0: f64, n: u64) -> Result<RateEstimate, FiringError> {
        let phi_n = self.phi_n(t0, n)?;
        if phi_n <= 0.0 {
            return Err(FiringError::InvalidParameter(format!(
                "Φⁿ(t₀) = {phi_n} is not positive; increase n or start later"
            )));
        }
        let empirical_rate = n as f64 / phi_n;
        let mean_rate = self.stimulus.mean();
        Ok(RateEstimate {
            n,
            t0,
            phi_n,
            empirical_rate,
            mean_rate,
            deviation: (empirical_rate - mean_rate).abs(),
        })
    }

    /// First `s ≥ from` with `F(s) − F(anchor) ≥ level`, assuming none before `from`.
    pub(crate) fn first_crossing(&self, anchor: f64, from: f64, level: f64) -> Result<f64, FiringError> {
        if self.exact {
            self.walk_segments(anchor, from, level)
        } else {
            self.march(anchor, from, level)
        }
    }

    fn noise_floor(&self, fs: f64, fa: f64, level: f64) -> f64 {
        16.0 * f64::EPSILON * (1.0 + fs.abs() + fa.abs() + level.abs())
    }

    fn horizon_error(&self, anchor: f64, level: f64) -> FiringError {
        FiringError::NoFiringWithinHorizon {
            start: anchor,
            level,
            limit: anchor + self.options.search_horizon,
        }
    }

    fn march(&self, anchor: f64, from: f64, level: f64) -> Result<f64, FiringError> {
        let f = &self.stimulus;
        let fa = f.antiderivative(anchor);
        let limit = anchor + self.options.search_horizon;
        // Stopping at gap ≤ tol/100 puts s within tol/(100·f) of the crossing.
        let target = 0.01 * self.options.root_tolerance;
        let mut s = from;
        for _ in 0..MAX_STEPS {
            let fs = f.antiderivative(s);
            let gap = level - (fs - fa);
            if gap <= target.max(self.noise_floor(fs, fa, level)) {
                return Ok(s);
            }
            let next = s + gap / self.bound;
            if next > limit {
                return Err(self.horizon_error(anchor, level));
            }
            if next == s {
                return Ok(s);
            }
            s = next;
        }
        Err(FiringError::Stalled {
            start: anchor,
            level,
            steps: MAX_STEPS,
        })
    }

    fn walk_segments(&self, anchor: f64, from: f64, level: f64) -> Result<f64, FiringError> {
        let f = &self.stimulus;
        let fa = f.antiderivative(anchor);
        let limit = anchor + self.options.search_horizon;
        let mut s = from;
        let mut acc = f.antiderivative(s) - fa;

        if let Some(skip) = self.period_skip {
            // within any stretch of whole periods the running integral rises
            // at most `rise` above its value at a period boundary
            let periods = ((level - acc - skip.rise) / skip.gain).floor();
            if periods >= 2.0 {
                s += periods * skip.period;
                if s > limit {
                    return Err(self.horizon_error(anchor, level));
                }
                acc = f.antiderivative(s) - fa;
            }
        }

        for _ in 0..MAX_STEPS {
            let slack = self.noise_floor(acc + fa, fa, level);
            if level - acc <= slack {
                return Ok(s);
            }
            let next = f.next_breakpoint(s);
            let v = segment_value(f, s, next);
            if v > 0.0 {
                let x = s + (level - acc) / v;
                if next.map_or(true, |b| x <= b) {
                    if x > limit {
                        return Err(self.horizon_error(anchor, level));
                    }
                    return Ok(x);
                }
            }
            match next {
                Some(b) if b <= limit => {
                    s = b;
                    acc = f.antiderivative(b) - fa;
                }
                _ => return Err(self.horizon_error(anchor, level)),
            }
        }
        Err(FiringError::Stalled {
            start: anchor,
            level,
            steps: MAX_STEPS,
        })
    }
}

/// Value of a piecewise-constant stimulus on `(s, next)`. Read at the midpoint:
/// a breakpoint reached through periodic reduction may sit an ulp inside the
/// neighbouring segment.
pub(crate) fn segment_value(f: &Stimulus, s: f64, next: Option<f64>) -> f64 {
    match next {
        Some(b) => f.evaluate(0.5 * (s + b)),
        None => f.evaluate(s + 1.0),
    }
}

fn period_skip(f: &Stimulus) -> Option<PeriodSkip> {
    let mut pieces = f.piecewise_parts();
    let pc = pieces.next()?;
    if pieces.next().is_some() {
        return None;
    }
    let period = pc.period()?;
    let offset: f64 = f.trig_parts().map(|p| p.constant_term()).sum();
    let gain = pc.core_integral() + offset * period;
    let rise: f64 = pc
        .values()
        .iter()
        .zip(pc.breakpoints().windows(2))
        .map(|(v, w)| (v + offset).max(0.0) * (w[1] - w[0]))
        .sum();
    (gain > 0.0).then_some(PeriodSkip { period, gain, rise })
}

/// Builds one engine per stimulus and estimates each firing rate at the same
/// `(t₀, n)`, exhibiting `rₖ → r` along a convergent family.
pub fn rate_sequence(
    stimuli: &[Stimulus],
    t0: f64,
    n: u64,
    options: EngineOptions,
) -> Result<Vec<RateEstimate>, FiringError> {
    stimuli
        .par_iter()
        .map(|f| FiringEngine::with_options(f.clone(), options)?.firing_rate(t0, n))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpikeTrain {
    #[serde(serialize_with = "crate::report::real")]
    pub start: f64,
    /// `Φ¹(t₀) < Φ²(t₀) < …`
    #[serde(serialize_with = "crate::report::real_vec")]
    pub times: Vec<f64>,
    /// `|F(Φᵏ(t₀)) − F(t₀) − k|` per spike.
    #[serde(serialize_with = "crate::report::real_vec")]
    pub residuals: Vec<f64>,
    pub truncated: bool,
    pub truncation: Option<String>,
}

impl SpikeTrain {
    /// Interspike intervals `ηₖ = Φᵏ(t₀) − Φᵏ⁻¹(t₀)`, with `Φ⁰(t₀) = t₀`.
    pub fn intervals(&self) -> Vec<f64> {
        std::iter::once(self.start)
            .chain(self.times.iter().copied())
            .collect::<Vec<_>>()
            .windows(2)
            .map(|w| w[1] - w[0])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisplacementProfile {
    pub window: Window,
    #[serde(serialize_with = "crate::report::real_vec")]
    pub grid: Vec<f64>,
    /// `Ψ(t) = Φ(t) − t` per grid point.
    #[serde(serialize_with = "crate::report::real_vec")]
    pub values: Vec<f64>,
}

impl DisplacementProfile {
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEstimate {
    pub n: u64,
    #[serde(serialize_with = "crate::report::real")]
    pub t0: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub phi_n: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub empirical_rate: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub mean_rate: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub deviation: f64,
}
