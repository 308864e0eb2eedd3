//! ε-almost-period scans for stimuli and displacement maps.
//!
//! A scan evaluates a shift metric on the grid `τ = lo + i·step`, then polishes
//! every strict local minimum of the sampled metric with a golden-section
//! search so that narrow dips between grid points are not missed. The sampled
//! metrics do not depend on `ε`, so accepted sets grow monotonically with `ε`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::firing::{FiringEngine, FiringError};
use crate::stimulus::{stepanov_shift_distance, sup_distance, Stimulus, Window};

/// Golden-section iterations per local minimum: shrinks a `2·step` bracket by `0.618³⁰`.
const POLISH_ITERATIONS: usize = 30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot certify a positive lower bound for the stimulus (bound {delta})")]
    CannotCertifyPositivity { delta: f64 },
    #[error(transparent)]
    Firing(#[from] FiringError),
}

/// The shifts `lo, lo + step, …, hi` to test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauRange {
    #[serde(serialize_with = "crate::report::real")]
    pub lo: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub hi: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub step: f64,
}

impl TauRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self, ApError> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(ApError::InvalidParameter(format!(
                "τ range needs finite lo ≤ hi, got [{lo}, {hi}]"
            )));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(ApError::InvalidParameter(format!(
                "τ step must be positive, got {step}"
            )));
        }
        if (hi - lo) / step > 1e8 {
            return Err(ApError::InvalidParameter("τ grid has more than 10^8 points".into()));
        }
        Ok(TauRange { lo, hi, step })
    }

    pub fn grid(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step * (1.0 + 1e-12)).floor() as usize + 1;
        (0..count)
            .map(|i| (self.lo + i as f64 * self.step).min(self.hi))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanOptions {
    /// Polish local minima of the sampled metric between grid points.
    pub refine: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { refine: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanTarget {
    /// `sup_t |f(t + τ) − f(t)|`
    StimulusSup,
    /// `sup_t ∫_t^{t+1} |f(u + τ) − f(u)| du`
    StimulusStepanov,
    /// `sup_t |Ψ(t + τ) − Ψ(t)|`
    Displacement,
}

impl std::fmt::Display for ScanTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScanTarget::StimulusSup => "stimulus-sup",
            ScanTarget::StimulusStepanov => "stimulus-stepanov",
            ScanTarget::Displacement => "displacement",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanSample {
    #[serde(serialize_with = "crate::report::real")]
    pub tau: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub metric: f64,
    pub accepted: bool,
    /// Added by local refinement rather than taken from the grid.
    pub refined: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlmostPeriodScan {
    pub target: ScanTarget,
    #[serde(serialize_with = "crate::report::real")]
    pub epsilon: f64,
    pub tau_range: TauRange,
    #[serde(serialize_with = "crate::report::real")]
    pub tau_step: f64,
    pub window: Window,
    /// Accepted shifts, sorted.
    #[serde(serialize_with = "crate::report::real_vec")]
    pub accepted: Vec<f64>,
    /// Largest gap between consecutive accepted shifts, range ends included.
    #[serde(serialize_with = "crate::report::real")]
    pub max_gap: f64,
    /// Every evaluated shift, sorted by `tau`.
    pub samples: Vec<ScanSample>,
}

/// The empirical inclusion length `l_ε` of a scan.
pub fn relative_density_gap(scan: &AlmostPeriodScan) -> f64 {
    scan.max_gap
}

fn check_epsilon(epsilon: f64) -> Result<(), ApError> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(ApError::InvalidParameter(format!("ε must be positive, got {epsilon}")))
    }
}

fn scan_with<M>(
    target: ScanTarget,
    metric: M,
    epsilon: f64,
    range: &TauRange,
    window: &Window,
    options: ScanOptions,
) -> Result<AlmostPeriodScan, ApError>
where
    M: Fn(f64) -> Result<f64, FiringError> + Sync,
{
    check_epsilon(epsilon)?;
    let taus = range.grid();
    let values: Vec<f64> = taus
        .par_iter()
        .map(|&tau| metric(tau))
        .collect::<Result<_, _>>()?;
    let mut samples: Vec<ScanSample> = taus
        .iter()
        .zip(&values)
        .map(|(&tau, &metric)| ScanSample {
            tau,
            metric,
            accepted: metric < epsilon,
            refined: false,
        })
        .collect();

    if options.refine && taus.len() >= 3 {
        let minima: Vec<usize> = (1..taus.len() - 1)
            .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
            .collect();
        let polished: Vec<Option<(f64, f64)>> = minima
            .par_iter()
            .map(|&i| polish(&metric, taus[i - 1], taus[i + 1], values[i]))
            .collect::<Result<_, _>>()?;
        samples.extend(polished.into_iter().flatten().map(|(tau, metric)| ScanSample {
            tau,
            metric,
            accepted: metric < epsilon,
            refined: true,
        }));
        samples.sort_by(|a, b| a.tau.total_cmp(&b.tau));
        samples.dedup_by(|b, a| a.tau == b.tau);
    }

    let accepted: Vec<f64> = samples.iter().filter(|s| s.accepted).map(|s| s.tau).collect();
    let max_gap = if accepted.is_empty() {
        range.hi - range.lo
    } else {
        std::iter::once(range.lo)
            .chain(accepted.iter().copied())
            .chain(std::iter::once(range.hi))
            .collect::<Vec<_>>()
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    };
    Ok(AlmostPeriodScan {
        target,
        epsilon,
        tau_range: *range,
        tau_step: range.step,
        window: *window,
        accepted,
        max_gap,
        samples,
    })
}

// Golden-section search for a smaller metric inside [a, b]; returns the best
// point found if it improves on the grid value.
fn polish<M>(metric: &M, mut a: f64, mut b: f64, grid_best: f64) -> Result<Option<(f64, f64)>, FiringError>
where
    M: Fn(f64) -> Result<f64, FiringError>,
{
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = metric(c)?;
    let mut fd = metric(d)?;
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for _ in 0..POLISH_ITERATIONS {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = metric(c)?;
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = metric(d)?;
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    Ok((best.1 < grid_best).then_some(best))
}

/// Shift metric `sup |f(t + τ) − f(t)|` over the window grid, the breakpoints of
/// `f` in the window and the breakpoints pulled back by `τ`.
pub fn sup_shift_metric(f: &Stimulus, tau: f64, w: &Window) -> f64 {
    let mut points = w.grid();
    points.extend(f.breakpoints_in(w.lo, w.hi));
    points.extend(
        f.breakpoints_in(w.lo + tau, w.hi + tau)
            .into_iter()
            .map(|b| b - tau),
    );
    points
        .iter()
        .map(|&t| (f.evaluate(t + tau) - f.evaluate(t)).abs())
        .fold(0.0, f64::max)
}

/// Bohr-type scan: `τ` accepted iff [`sup_shift_metric`] `< ε`.
pub fn scan_sup_almost_periods(
    f: &Stimulus,
    epsilon: f64,
    range: &TauRange,
    w: &Window,
    options: ScanOptions,
) -> Result<AlmostPeriodScan, ApError> {
    scan_with(
        ScanTarget::StimulusSup,
        |tau| Ok(sup_shift_metric(f, tau, w)),
        epsilon,
        range,
        w,
        options,
    )
}

/// Stepanov scan: `τ` accepted iff the windowed Stepanov shift distance `< ε`.
pub fn scan_stepanov_almost_periods(
    f: &Stimulus,
    epsilon: f64,
    range: &TauRange,
    w: &Window,
    options: ScanOptions,
) -> Result<AlmostPeriodScan, ApError> {
    scan_with(
        ScanTarget::StimulusStepanov,
        |tau| Ok(stepanov_shift_distance(f, tau, w)),
        epsilon,
        range,
        w,
        options,
    )
}

/// `sup_{t ∈ grid} |Ψ(t + τ) − Ψ(t)|` with `Ψ` on the grid computed once.
pub struct DisplacementShift<'a> {
    engine: &'a FiringEngine,
    grid: Vec<f64>,
    base: Vec<f64>,
}

impl<'a> DisplacementShift<'a> {
    pub fn new(engine: &'a FiringEngine, w: &Window) -> Result<Self, FiringError> {
        let grid = w.grid();
        let base = engine.displacement_at(&grid)?;
        Ok(DisplacementShift { engine, grid, base })
    }

    pub fn metric(&self, tau: f64) -> Result<f64, FiringError> {
        let mut worst: f64 = 0.0;
        for (&t, &psi) in self.grid.iter().zip(&self.base) {
            let shifted = self.engine.phi(t + tau)? - (t + tau);
            worst = worst.max((shifted - psi).abs());
        }
        Ok(worst)
    }
}

/// Uniform almost periods of the displacement `Ψ` on the window grid.
pub fn scan_displacement_almost_periods(
    engine: &FiringEngine,
    epsilon: f64,
    range: &TauRange,
    w: &Window,
    options: ScanOptions,
) -> Result<AlmostPeriodScan, ApError> {
    check_epsilon(epsilon)?;
    let shift = DisplacementShift::new(engine, w)?;
    scan_with(
        ScanTarget::Displacement,
        |tau| shift.metric(tau),
        epsilon,
        range,
        w,
        options,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerificationStatus {
    /// Candidates exist and none violates the displacement bound.
    Pass,
    /// Some candidate shifts `Ψ` by `ε` or more somewhere on the window.
    Fail,
    /// No candidate was found, so nothing was tested.
    Inconclusive,
}

impl std::fmt::Display for VerificationStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerificationStatus::Pass => "pass",
            VerificationStatus::Fail => "fail",
            VerificationStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CandidateCheck {
    #[serde(serialize_with = "crate::report::real")]
    pub tau: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub stepanov_distance: f64,
    /// `sup_{t ∈ grid} |Ψ(t + τ) − Ψ(t)|`
    #[serde(serialize_with = "crate::report::real")]
    pub max_displacement_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApVerificationReport {
    /// Certified lower bound of the stimulus.
    #[serde(serialize_with = "crate::report::real")]
    pub delta: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub epsilon: f64,
    /// `δ²ε/2` with `δ` capped at 1.
    #[serde(serialize_with = "crate::report::real")]
    pub stepanov_threshold: f64,
    pub tau_range: TauRange,
    pub window: Window,
    pub candidates: Vec<CandidateCheck>,
    #[serde(serialize_with = "crate::report::real_vec")]
    pub violations: Vec<f64>,
    pub status: VerificationStatus,
}

fn certified_delta(f: &Stimulus) -> Result<f64, ApError> {
    let delta = f.certified_lower_bound();
    if delta > 0.0 {
        Ok(delta)
    } else {
        Err(ApError::CannotCertifyPositivity { delta })
    }
}

/// Checks that every Stepanov `δ²ε/2`-almost period of the stimulus found in
/// the range moves `Ψ` by less than `ε` on the window grid.
pub fn verify_displacement_theorem(
    engine: &FiringEngine,
    epsilon: f64,
    range: &TauRange,
    w: &Window,
    options: ScanOptions,
) -> Result<ApVerificationReport, ApError> {
    check_epsilon(epsilon)?;
    let f = engine.stimulus();
    let delta = certified_delta(f)?;
    // a lower bound above 1 is still a lower bound of 1; the threshold uses
    // the same cap so it never loosens past the δ = 1 case
    let capped = delta.min(1.0);
    let stepanov_threshold = capped * capped * epsilon / 2.0;
    let scan = scan_stepanov_almost_periods(f, stepanov_threshold, range, w, options)?;
    let shift = DisplacementShift::new(engine, w)?;
    let candidates: Vec<CandidateCheck> = scan
        .samples
        .par_iter()
        .filter(|s| s.accepted)
        .map(|s| {
            Ok(CandidateCheck {
                tau: s.tau,
                stepanov_distance: s.metric,
                max_displacement_deviation: shift.metric(s.tau)?,
            })
        })
        .collect::<Result<_, FiringError>>()?;
    let violations: Vec<f64> = candidates
        .iter()
        .filter(|c| !(c.max_displacement_deviation < epsilon))
        .map(|c| c.tau)
        .collect();
    let status = if !violations.is_empty() {
        VerificationStatus::Fail
    } else if candidates.is_empty() {
        VerificationStatus::Inconclusive
    } else {
        VerificationStatus::Pass
    };
    Ok(ApVerificationReport {
        delta,
        epsilon,
        stepanov_threshold,
        tau_range: *range,
        window: *w,
        candidates,
        violations,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproximationReport {
    #[serde(serialize_with = "crate::report::real")]
    pub delta: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub epsilon: f64,
    pub window: Window,
    /// `‖f − f̃‖∞` on the window grid and breakpoints.
    #[serde(serialize_with = "crate::report::real")]
    pub sup_stimulus_distance: f64,
    /// `δ²ε/4` with `δ` capped at 1.
    #[serde(serialize_with = "crate::report::real")]
    pub required_bound: f64,
    /// `sup |Φ(t) − Φ̃(t)|` on the window grid.
    #[serde(serialize_with = "crate::report::real")]
    pub sup_phi_distance: f64,
    pub precondition_met: bool,
    /// `sup_stimulus_distance < required_bound ⇒ sup_phi_distance < ε`.
    pub passes: bool,
}

/// Compares the firing maps of `f` and an approximant `f̃` on the window.
pub fn compare_with_periodic_approximant(
    engine: &FiringEngine,
    approximant: &FiringEngine,
    epsilon: f64,
    w: &Window,
) -> Result<ApproximationReport, ApError> {
    check_epsilon(epsilon)?;
    let delta = certified_delta(engine.stimulus())?;
    let capped = delta.min(1.0);
    let required_bound = capped * capped * epsilon / 4.0;
    let sup_stimulus_distance = sup_distance(engine.stimulus(), approximant.stimulus(), w);
    let sup_phi_distance = w
        .grid()
        .par_iter()
        .map(|&t| Ok((engine.phi(t)? - approximant.phi(t)?).abs()))
        .collect::<Result<Vec<f64>, FiringError>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let precondition_met = sup_stimulus_distance < required_bound;
    Ok(ApproximationReport {
        delta,
        epsilon,
        window: *w,
        sup_stimulus_distance,
        required_bound,
        sup_phi_distance,
        precondition_met,
        passes: !precondition_met || sup_phi_distance < epsilon,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequenceSample {
    pub shift: usize,
    /// `max_n |η_{n+k} − η_n|` over the retained tail.
    #[serde(serialize_with = "crate::report::real")]
    pub metric: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceScan {
    #[serde(serialize_with = "crate::report::real")]
    pub epsilon: f64,
    /// Leading terms dropped before comparing.
    pub tail_offset: usize,
    pub samples: Vec<SequenceSample>,
}

impl SequenceScan {
    pub fn accepted(&self) -> Vec<usize> {
        self.samples.iter().filter(|s| s.accepted).map(|s| s.shift).collect()
    }
}

/// Integer shifts `k ∈ [k_lo, k_hi]` with `max_n |η_{n+k} − η_n| < ε` on
/// `η[tail_offset..]`.
pub fn sequence_shift_scan(
    eta: &[f64],
    epsilon: f64,
    k_lo: usize,
    k_hi: usize,
    tail_offset: usize,
) -> Result<SequenceScan, ApError> {
    check_epsilon(epsilon)?;
    if k_lo > k_hi {
        return Err(ApError::InvalidParameter(format!(
            "shift range [{k_lo}, {k_hi}] is empty"
        )));
    }
    let tail = eta.get(tail_offset..).unwrap_or(&[]);
    if tail.len() < 2 * k_hi.max(1) {
        return Err(ApError::InvalidParameter(format!(
            "need at least {} terms after the offset, have {}",
            2 * k_hi.max(1),
            tail.len()
        )));
    }
    if let Some(i) = tail.iter().position(|x| !x.is_finite()) {
        return Err(ApError::InvalidParameter(format!(
            "term {} is not finite",
            i + tail_offset
        )));
    }
    let samples = (k_lo..=k_hi)
        .map(|k| {
            let metric = tail
                .iter()
                .zip(&tail[k..])
                .map(|(a, b)| (b - a).abs())
                .fold(0.0, f64::max);
            SequenceSample {
                shift: k,
                metric,
                accepted: metric < epsilon,
            }
        })
        .collect();
    Ok(SequenceScan {
        epsilon,
        tail_offset,
        samples,
    })
}

/// The accepted shifts of [`sequence_shift_scan`].
pub fn sequence_almost_periods(
    eta: &[f64],
    epsilon: f64,
    k_lo: usize,
    k_hi: usize,
    tail_offset: usize,
) -> Result<Vec<usize>, ApError> {
    Ok(sequence_shift_scan(eta, epsilon, k_lo, k_hi, tail_offset)?.accepted())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stimulus::PiecewiseConstant;
    use std::f64::consts::TAU;

    fn sine_bump() -> Stimulus {
        Stimulus::trig(1.0, &[(0.0, 0.5, TAU)]).unwrap()
    }

    fn window() -> Window {
        Window::new(0.0, 5.0, 0.05).unwrap()
    }

    #[test]
    fn constant_accepts_everything() {
        let range = TauRange::new(0.0, 3.0, 0.5).unwrap();
        let f = Stimulus::constant(2.0);
        let scan = scan_sup_almost_periods(&f, 1e-9, &range, &window(), ScanOptions::default()).unwrap();
        assert_eq!(scan.accepted, range.grid());
        assert_eq!(relative_density_gap(&scan), 0.5);
        let scan =
            scan_stepanov_almost_periods(&f, 1e-9, &range, &window(), ScanOptions::default()).unwrap();
        assert_eq!(scan.accepted.len(), 7);
        let e = FiringEngine::new(f).unwrap();
        let scan =
            scan_displacement_almost_periods(&e, 1e-9, &range, &window(), ScanOptions::default())
                .unwrap();
        assert_eq!(scan.accepted.len(), 7);
    }

    #[test]
    fn periodic_stimulus_accepts_integers() {
        let range = TauRange::new(0.0, 4.0, 0.25).unwrap();
        let scan =
            scan_sup_almost_periods(&sine_bump(), 1e-6, &range, &window(), ScanOptions::default())
                .unwrap();
        for k in 0..=4 {
            assert!(scan.accepted.iter().any(|&t| (t - k as f64).abs() < 1e-12), "{k}");
        }
        assert!((relative_density_gap(&scan) - 1.0).abs() < 1e-9);
        let square: Stimulus = PiecewiseConstant::periodic(vec![0.0, 0.5, 1.0], vec![2.0, 0.0])
            .unwrap()
            .into();
        let e = FiringEngine::new(square).unwrap();
        let scan =
            scan_displacement_almost_periods(&e, 1e-9, &range, &window(), ScanOptions::default())
                .unwrap();
        for k in 0..=4 {
            assert!(scan.accepted.contains(&(k as f64)));
        }
    }

    #[test]
    fn half_period_shift_is_rejected_by_stepanov() {
        let range = TauRange::new(0.5, 0.5, 0.01).unwrap();
        let scan =
            scan_stepanov_almost_periods(&sine_bump(), 0.5, &range, &window(), ScanOptions::default())
                .unwrap();
        assert!(scan.accepted.is_empty());
        assert_eq!(scan.max_gap, 0.0);
        assert!((scan.samples[0].metric - 2.0 / std::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn empty_scan_gap_is_the_range() {
        let range = TauRange::new(0.2, 0.8, 0.1).unwrap();
        let scan =
            scan_sup_almost_periods(&sine_bump(), 1e-3, &range, &window(), ScanOptions::default())
                .unwrap();
        assert!(scan.accepted.is_empty());
        assert!((scan.max_gap - 0.6).abs() < 1e-15);
    }

    #[test]
    fn refinement_finds_off_grid_periods() {
        // period 0.7 is never on the 0.3-grid below 2.1
        let f = Stimulus::trig(1.0, &[(0.0, 0.5, TAU / 0.7)]).unwrap();
        let range = TauRange::new(0.0, 1.5, 0.3).unwrap();
        let plain = scan_sup_almost_periods(&f, 1e-4, &range, &window(), ScanOptions { refine: false })
            .unwrap();
        assert_eq!(plain.accepted, vec![0.0]);
        let refined =
            scan_sup_almost_periods(&f, 1e-4, &range, &window(), ScanOptions::default()).unwrap();
        assert!(refined.accepted.iter().any(|&t| (t - 0.7).abs() < 1e-4));
    }

    #[test]
    fn displacement_check_examples() {
        let range = TauRange::new(0.0, 2.0, 0.5).unwrap();
        let e = FiringEngine::new(Stimulus::constant(1.0)).unwrap();
        let report =
            verify_displacement_theorem(&e, 0.2, &range, &window(), ScanOptions::default()).unwrap();
        assert_eq!(report.candidates.len(), 5);
        assert_eq!(report.status, VerificationStatus::Pass);

        let e = FiringEngine::new(sine_bump()).unwrap();
        let range = TauRange::new(0.0, 3.0, 1.0).unwrap();
        let report =
            verify_displacement_theorem(&e, 0.2, &range, &window(), ScanOptions::default()).unwrap();
        let taus: Vec<f64> = report.candidates.iter().map(|c| c.tau).collect();
        assert_eq!(taus, vec![0.0, 1.0, 2.0, 3.0]);
        assert!(report.violations.is_empty());
        assert_eq!(report.stepanov_threshold, 0.25 * 0.2 / 2.0);

        let square: Stimulus = PiecewiseConstant::periodic(vec![0.0, 0.5, 1.0], vec![2.0, 0.0])
            .unwrap()
            .into();
        let e = FiringEngine::new(square).unwrap();
        assert!(matches!(
            verify_displacement_theorem(&e, 0.2, &range, &window(), ScanOptions::default()),
            Err(ApError::CannotCertifyPositivity { .. })
        ));
    }

    #[test]
    fn approximant_examples() {
        let w = Window::new(0.0, 10.0, 0.05).unwrap();
        let e = FiringEngine::new(sine_bump()).unwrap();
        let same = compare_with_periodic_approximant(&e, &e, 0.1, &w).unwrap();
        assert_eq!(same.sup_stimulus_distance, 0.0);
        assert_eq!(same.sup_phi_distance, 0.0);
        assert!(same.passes && same.precondition_met);

        let flat = FiringEngine::new(Stimulus::constant(1.0)).unwrap();
        let report = compare_with_periodic_approximant(&e, &flat, 0.1, &w).unwrap();
        assert!((report.sup_stimulus_distance - 0.5).abs() < 1e-3);
        assert!(!report.precondition_met);
        assert!(report.passes);
    }

    #[test]
    fn sequence_examples() {
        let flat = vec![0.5; 40];
        assert_eq!(sequence_almost_periods(&flat, 1e-9, 0, 10, 0).unwrap().len(), 11);
        let alternating: Vec<f64> = (0..40).map(|i| if i % 2 == 0 { 1.0 } else { 2.0 }).collect();
        assert_eq!(
            sequence_almost_periods(&alternating, 0.1, 1, 6, 0).unwrap(),
            vec![2, 4, 6]
        );
        assert!(sequence_almost_periods(&flat, 0.1, 0, 30, 0).is_err());
        // only the tail after the offset counts
        let mut settling = vec![3.0, 0.0];
        settling.extend(vec![1.0; 30]);
        assert_eq!(sequence_almost_periods(&settling, 1e-9, 1, 5, 2).unwrap().len(), 5);
    }
}
