//! Brute-force reference computations.
//!
//! Everything here integrates the stimulus with a dense midpoint rule and never
//! touches the closed-form antiderivative, so agreement with the engine is an
//! independent check.

use serde::Serialize;
use thiserror::Error;

use crate::stimulus::Stimulus;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    #[serde(serialize_with = "crate::report::real")]
    pub grid_step: f64,
    /// Longest span a crossing search may cover.
    #[serde(serialize_with = "crate::report::real")]
    pub max_span: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid_step: 1e-5,
            max_span: 1e3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("level {level} not reached within {span} of t = {start}")]
    NoCrossingWithinSpan { start: f64, level: f64, span: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn check_config(cfg: &OracleConfig) -> Result<(), OracleError> {
    if !(cfg.grid_step > 0.0 && cfg.grid_step.is_finite()) {
        return Err(OracleError::InvalidParameter(format!(
            "grid step must be positive, got {}",
            cfg.grid_step
        )));
    }
    if !(cfg.max_span > 0.0) {
        return Err(OracleError::InvalidParameter(format!(
            "max span must be positive, got {}",
            cfg.max_span
        )));
    }
    Ok(())
}

/// First time the midpoint-rule integral from `t` reaches `level`, linearly
/// interpolated inside the cell where it happens.
pub fn brute_first_crossing(
    f: &Stimulus,
    t: f64,
    level: f64,
    cfg: &OracleConfig,
) -> Result<f64, OracleError> {
    check_config(cfg)?;
    if !(level > 0.0) {
        return Err(OracleError::InvalidParameter(format!(
            "level must be positive, got {level}"
        )));
    }
    let h = cfg.grid_step;
    let cells = (cfg.max_span / h).ceil() as u64;
    let mut total = 0.0;
    for i in 0..cells {
        let x0 = t + i as f64 * h;
        let gain = f.evaluate(x0 + 0.5 * h) * h;
        if total + gain >= level {
            return Ok(x0 + h * (level - total) / gain);
        }
        total += gain;
    }
    Err(OracleError::NoCrossingWithinSpan {
        start: t,
        level,
        span: cfg.max_span,
    })
}

/// `(1/T) ∫₀ᵀ f` by the midpoint rule.
pub fn brute_mean(f: &Stimulus, horizon: f64, cfg: &OracleConfig) -> Result<f64, OracleError> {
    check_config(cfg)?;
    if !(horizon >= 1e3 * cfg.grid_step) {
        return Err(OracleError::InvalidParameter(format!(
            "horizon {horizon} must be at least 1000 grid steps"
        )));
    }
    let cells = (horizon / cfg.grid_step).round() as u64;
    let h = horizon / cells as f64;
    let total: f64 = (0..cells)
        .map(|i| f.evaluate((i as f64 + 0.5) * h))
        .sum();
    Ok(total * h / horizon)
}

/// `∫_a^b f` by the midpoint rule with cells no wider than the grid step.
/// Cells never straddle a breakpoint, so step functions integrate exactly.
pub fn brute_integral(f: &Stimulus, a: f64, b: f64, cfg: &OracleConfig) -> Result<f64, OracleError> {
    check_config(cfg)?;
    if b <= a {
        return Ok(0.0);
    }
    let mut cuts = vec![a];
    cuts.extend(f.breakpoints_in(a, b).into_iter().filter(|&x| x > a && x < b));
    cuts.push(b);
    let mut total = 0.0;
    for piece in cuts.windows(2) {
        let (lo, hi) = (piece[0], piece[1]);
        let cells = ((hi - lo) / cfg.grid_step).ceil().max(1.0) as u64;
        let h = (hi - lo) / cells as f64;
        let sum: f64 = (0..cells)
            .map(|i| f.evaluate(lo + (i as f64 + 0.5) * h))
            .sum();
        total += sum * h;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stimulus::PiecewiseConstant;
    use std::f64::consts::{SQRT_2, TAU};

    #[test]
    fn crossing_examples() {
        let cfg = OracleConfig::default();
        let s = brute_first_crossing(&Stimulus::constant(2.0), 0.0, 1.0, &cfg).unwrap();
        assert!((s - 0.5).abs() < 1e-5);
        let bump = Stimulus::trig(1.0, &[(0.0, 0.5, TAU)]).unwrap();
        assert!((brute_first_crossing(&bump, 0.0, 1.0, &cfg).unwrap() - 1.0).abs() < 1e-4);
        let square: Stimulus = PiecewiseConstant::periodic(vec![0.0, 0.5, 1.0], vec![2.0, 0.0])
            .unwrap()
            .into();
        assert!((brute_first_crossing(&square, 0.25, 1.0, &cfg).unwrap() - 1.25).abs() < 1e-4);
    }

    #[test]
    fn gives_up_past_the_span() {
        let cfg = OracleConfig {
            grid_step: 1e-3,
            max_span: 5.0,
        };
        assert!(matches!(
            brute_first_crossing(&Stimulus::constant(0.1), 0.0, 1.0, &cfg),
            Err(OracleError::NoCrossingWithinSpan { .. })
        ));
    }

    #[test]
    fn mean_examples() {
        let cfg = OracleConfig {
            grid_step: 1e-3,
            max_span: 1e3,
        };
        assert!((brute_mean(&Stimulus::constant(3.0), 10.0, &cfg).unwrap() - 3.0).abs() < 1e-12);
        let bump = Stimulus::trig(1.0, &[(0.0, 0.5, TAU)]).unwrap();
        assert!((brute_mean(&bump, 1e4, &cfg).unwrap() - 1.0).abs() < 1e-3);
        let zero_mean = Stimulus::trig(0.0, &[(0.0, 1.0, SQRT_2), (0.0, 1.0, 2.0)]).unwrap();
        assert!(brute_mean(&zero_mean, 1e4, &cfg).unwrap().abs() < 1e-3);
    }
}
