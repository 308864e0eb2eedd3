//! Right-discontinuities of `Φ` caused by zero plateaus of the stimulus.

use serde::Serialize;

use super::{segment_value, FiringEngine, FiringError};
use crate::stimulus::Window;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discontinuity {
    /// The last reset time that fires exactly at `a`: `sup Φ⁻¹(a)`.
    #[serde(serialize_with = "crate::report::real")]
    pub abar: f64,
    /// Start of the zero plateau, `Φ(ā) = a`.
    #[serde(serialize_with = "crate::report::real")]
    pub a: f64,
    /// `Φ(ā⁺) − Φ(ā)`.
    #[serde(serialize_with = "crate::report::real")]
    pub jump: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub plateau_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscontinuityReport {
    pub window: Window,
    pub entries: Vec<Discontinuity>,
}

impl FiringEngine {
    /// Every `ā ∈ [w.lo, w.hi]` at which `Φ` jumps over a zero plateau.
    ///
    /// Only piecewise-constant, nonnegative stimuli are supported: their
    /// plateaus are known exactly, so `ā` and the jump come out of exact
    /// segment walks.
    pub fn discontinuities(&self, w: &Window) -> Result<DiscontinuityReport, FiringError> {
        let f = &self.stimulus;
        if !self.exact {
            return Err(FiringError::UnsupportedStimulus(
                "discontinuity analysis needs a piecewise-constant stimulus".into(),
            ));
        }
        if f.certified_lower_bound() < 0.0 {
            return Err(FiringError::UnsupportedStimulus(
                "discontinuity analysis needs a nonnegative stimulus".into(),
            ));
        }
        // ā ≤ w.hi fires at a = Φ(ā) ≤ Φ(w.hi), and ā ≥ w.lo gives a > w.lo
        let reach = self.phi(w.hi)?;
        let mut entries = Vec::new();
        let mut s = w.lo;
        let mut previous_positive = value_before(f, s) > 0.0;
        while s <= reach {
            let next = f.next_breakpoint(s);
            let v = segment_value(f, s, next);
            if v == 0.0 && previous_positive {
                let a = s;
                let Some(end) = plateau_end(self, a) else {
                    // the stimulus vanishes from `a` on
                    break;
                };
                if let Some(abar) = self.last_reset_firing_at(a) {
                    if abar >= w.lo && abar <= w.hi {
                        entries.push(Discontinuity {
                            abar,
                            a,
                            jump: end - self.phi(abar)?,
                            plateau_length: end - a,
                        });
                    }
                }
                s = end;
                previous_positive = true;
                continue;
            }
            previous_positive = v > 0.0;
            match next {
                Some(b) => s = b,
                None => break,
            }
        }
        Ok(DiscontinuityReport { window: *w, entries })
    }

    /// `sup { t < a : F(a) − F(t) = 1 }`, walking segments backwards.
    fn last_reset_firing_at(&self, a: f64) -> Option<f64> {
        let f = &self.stimulus;
        let fa = f.antiderivative(a);
        let mut u = a;
        loop {
            let acc = fa - f.antiderivative(u);
            if 1.0 - acc <= self.noise_floor(fa, fa - acc, 1.0) {
                return Some(u);
            }
            let prev = f.prev_breakpoint(u);
            let v = value_before(f, u);
            if v > 0.0 {
                let x = u - (1.0 - acc) / v;
                if prev.map_or(true, |p| x >= p) {
                    return Some(x);
                }
            }
            match prev {
                Some(p) if a - p <= self.options.search_horizon => u = p,
                _ => return None,
            }
        }
    }
}

// The stimulus on the segment ending at `s`.
fn value_before(f: &crate::Stimulus, s: f64) -> f64 {
    match f.prev_breakpoint(s) {
        Some(p) => f.evaluate(0.5 * (p + s)),
        None => f.evaluate(s - 1.0),
    }
}

// First point after `a` where the stimulus turns positive, if any.
fn plateau_end(engine: &FiringEngine, a: f64) -> Option<f64> {
    let f = &engine.stimulus;
    let limit = a + engine.options.search_horizon;
    let mut s = a;
    loop {
        let next = f.next_breakpoint(s);
        if segment_value(f, s, next) > 0.0 {
            return Some(s);
        }
        s = next?;
        if s > limit {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stimulus::{PiecewiseConstant, Stimulus};

    fn square() -> Stimulus {
        PiecewiseConstant::periodic(vec![0.0, 0.5, 1.0], vec![2.0, 0.0])
            .unwrap()
            .into()
    }

    #[test]
    fn square_wave_jumps_at_integers() {
        let e = FiringEngine::new(square()).unwrap();
        let report = e.discontinuities(&Window::new(-0.5, 1.5, 0.1).unwrap()).unwrap();
        let abars: Vec<f64> = report.entries.iter().map(|d| d.abar).collect();
        assert_eq!(abars, vec![0.0, 1.0]);
        let first = report.entries[0];
        assert_eq!(first.a, 0.5);
        assert_eq!(first.jump, 0.5);
        assert_eq!(first.plateau_length, 0.5);
    }

    #[test]
    fn positive_stimuli_have_no_jumps() {
        let w = Window::new(0.0, 10.0, 0.1).unwrap();
        let f: Stimulus = PiecewiseConstant::periodic(vec![0.0, 0.5, 1.0], vec![2.0, 0.5])
            .unwrap()
            .into();
        assert!(FiringEngine::new(f).unwrap().discontinuities(&w).unwrap().entries.is_empty());
        let one: Stimulus = PiecewiseConstant::with_tails(vec![0.0, 1.0], vec![1.0], 1.0, 1.0)
            .unwrap()
            .into();
        assert!(FiringEngine::new(one).unwrap().discontinuities(&w).unwrap().entries.is_empty());
    }

    #[test]
    fn merges_adjacent_zero_segments() {
        // zero on [1, 1.5) and [1.5, 2) forms one plateau of length 1
        let f: Stimulus = PiecewiseConstant::periodic(
            vec![0.0, 1.0, 1.5, 2.0],
            vec![1.0, 0.0, 0.0],
        )
        .unwrap()
        .into();
        let e = FiringEngine::new(f).unwrap();
        let report = e.discontinuities(&Window::new(0.0, 1.0, 0.1).unwrap()).unwrap();
        assert_eq!(report.entries.len(), 1);
        let d = report.entries[0];
        assert_eq!((d.abar, d.a, d.plateau_length, d.jump), (0.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn rejects_smooth_parts() {
        let f = Stimulus::sum(vec![
            square(),
            Stimulus::trig(0.0, &[(0.1, 0.0, 1.0)]).unwrap(),
        ])
        .unwrap();
        let e = FiringEngine::new(f).unwrap();
        assert!(matches!(
            e.discontinuities(&Window::new(0.0, 1.0, 0.1).unwrap()),
            Err(FiringError::UnsupportedStimulus(_))
        ));
    }
}
