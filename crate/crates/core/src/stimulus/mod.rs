//! Symbolic stimulus functions with exact evaluation and exact antiderivatives.
//!
//! Three representations are supported: generalized trigonometric polynomials,
//! piecewise-constant functions (periodic or with constant tails) and finite
//! sums of those. Everything here is immutable after construction.

mod distance;
mod json;
mod piecewise;
mod trig;

pub use distance::{stepanov_shift_distance, sup_distance, ShiftDifference};
pub use json::StimulusSpec;
pub use piecewise::{Extension, PiecewiseConstant};
pub use trig::{TrigPolynomial, TrigTerm};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StimulusError {
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("window: {0}")]
    Window(String),
}

impl StimulusError {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        StimulusError::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Prefixes the field path, used while descending into nested parts.
    pub(crate) fn within(self, prefix: &str) -> Self {
        match self {
            StimulusError::Invalid { field, message } => StimulusError::Invalid {
                field: format!("{prefix}.{field}"),
                message,
            },
            other => other,
        }
    }
}

/// A stimulus `f` for the model `ẋ = f(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Stimulus {
    Trig(TrigPolynomial),
    Piecewise(PiecewiseConstant),
    Sum(StimulusSum),
}

/// A finite non-empty sum of trigonometric and piecewise-constant parts.
///
/// Nested sums are flattened on construction, so `parts()` never contains a
/// [`Stimulus::Sum`].
#[derive(Debug, Clone, PartialEq)]
pub struct StimulusSum {
    parts: Vec<Stimulus>,
}

impl StimulusSum {
    pub fn new(parts: Vec<Stimulus>) -> Result<Self, StimulusError> {
        if parts.is_empty() {
            return Err(StimulusError::invalid("parts", "a sum needs at least one part"));
        }
        let mut flat = Vec::with_capacity(parts.len());
        for part in parts {
            match part {
                Stimulus::Sum(inner) => flat.extend(inner.parts),
                leaf => flat.push(leaf),
            }
        }
        Ok(StimulusSum { parts: flat })
    }

    pub fn parts(&self) -> &[Stimulus] {
        &self.parts
    }
}

impl From<TrigPolynomial> for Stimulus {
    fn from(p: TrigPolynomial) -> Self {
        Stimulus::Trig(p)
    }
}

impl From<PiecewiseConstant> for Stimulus {
    fn from(p: PiecewiseConstant) -> Self {
        Stimulus::Piecewise(p)
    }
}

impl From<StimulusSum> for Stimulus {
    fn from(s: StimulusSum) -> Self {
        Stimulus::Sum(s)
    }
}

impl Stimulus {
    /// `f ≡ c`.
    pub fn constant(c: f64) -> Self {
        Stimulus::Trig(TrigPolynomial::constant(c))
    }

    /// `c0 + Σ (a, b, λ)` terms.
    pub fn trig(c0: f64, terms: &[(f64, f64, f64)]) -> Result<Self, StimulusError> {
        let terms = terms
            .iter()
            .map(|&(a, b, lambda)| TrigTerm::new(a, b, lambda))
            .collect();
        Ok(Stimulus::Trig(TrigPolynomial::new(c0, terms)?))
    }

    pub fn sum(parts: Vec<Stimulus>) -> Result<Self, StimulusError> {
        Ok(Stimulus::Sum(StimulusSum::new(parts)?))
    }

    /// The non-sum parts: `[self]` for a leaf, the parts for a sum.
    pub fn leaves(&self) -> &[Stimulus] {
        match self {
            Stimulus::Sum(s) => &s.parts,
            leaf => std::slice::from_ref(leaf),
        }
    }

    pub fn piecewise_parts(&self) -> impl Iterator<Item = &PiecewiseConstant> {
        self.leaves().iter().filter_map(|leaf| match leaf {
            Stimulus::Piecewise(p) => Some(p),
            _ => None,
        })
    }

    pub fn trig_parts(&self) -> impl Iterator<Item = &TrigPolynomial> {
        self.leaves().iter().filter_map(|leaf| match leaf {
            Stimulus::Trig(p) => Some(p),
            _ => None,
        })
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        match self {
            Stimulus::Trig(p) => p.evaluate(t),
            Stimulus::Piecewise(p) => p.evaluate(t),
            Stimulus::Sum(s) => s.parts.iter().map(|p| p.evaluate(t)).sum(),
        }
    }

    /// `F(t) = ∫₀ᵗ f(u) du` in closed form.
    pub fn antiderivative(&self, t: f64) -> f64 {
        match self {
            Stimulus::Trig(p) => p.antiderivative(t),
            Stimulus::Piecewise(p) => p.antiderivative(t),
            Stimulus::Sum(s) => s.parts.iter().map(|p| p.antiderivative(t)).sum(),
        }
    }

    /// The exact mean `lim F(T)/T`.
    pub fn mean(&self) -> f64 {
        match self {
            Stimulus::Trig(p) => p.mean(),
            Stimulus::Piecewise(p) => p.mean(),
            Stimulus::Sum(s) => s.parts.iter().map(Stimulus::mean).sum(),
        }
    }

    /// A value `δ` with `f ≥ δ` almost everywhere. May be conservative; a
    /// non-positive result means positivity could not be certified.
    pub fn certified_lower_bound(&self) -> f64 {
        match self {
            Stimulus::Trig(p) => p.lower_bound(),
            Stimulus::Piecewise(p) => p.lower_bound(),
            Stimulus::Sum(s) => s.parts.iter().map(Stimulus::certified_lower_bound).sum(),
        }
    }

    /// A bound `B ≥ sup |f|`.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Stimulus::Trig(p) => p.sup_bound(),
            Stimulus::Piecewise(p) => p.sup_bound(),
            Stimulus::Sum(s) => s.parts.iter().map(Stimulus::sup_bound).sum(),
        }
    }

    /// A bound `C ≥ sup |F(t) − mean·t|`, when one is available in closed form
    /// (trigonometric and periodic parts; constant tails have none).
    pub fn oscillation_bound(&self) -> Option<f64> {
        self.leaves()
            .iter()
            .map(|leaf| match leaf {
                Stimulus::Trig(p) => Some(p.oscillation_bound()),
                Stimulus::Piecewise(p) => p.periodic_oscillation_bound(),
                Stimulus::Sum(_) => None,
            })
            .sum()
    }

    /// True when `F` is piecewise linear: every trigonometric part is constant.
    pub fn is_piecewise_constant(&self) -> bool {
        self.trig_parts().all(TrigPolynomial::is_constant)
    }

    /// A common period of all parts, when one is evident from the representation:
    /// constants are periodic with any period; a single piecewise part
    /// fixes it; trigonometric terms are ignored unless they share the period.
    pub fn exact_period(&self) -> Option<f64> {
        let mut period: Option<f64> = None;
        for leaf in self.leaves() {
            let p = match leaf {
                Stimulus::Piecewise(pc) => pc.period()?,
                Stimulus::Trig(tp) if tp.is_constant() => continue,
                Stimulus::Trig(tp) => {
                    let base = std::f64::consts::TAU / tp.terms()[0].frequency;
                    // every frequency must be an integer multiple of the first
                    let harmonic = tp.terms().iter().all(|term| {
                        let ratio = term.frequency / tp.terms()[0].frequency;
                        (ratio - ratio.round()).abs() < 1e-12 * ratio.max(1.0)
                    });
                    if !harmonic {
                        return None;
                    }
                    base
                }
                Stimulus::Sum(_) => return None,
            };
            match period {
                None => period = Some(p),
                Some(q) if (p - q).abs() <= 1e-12 * q => {}
                Some(_) => return None,
            }
        }
        period
    }

    /// Sorted, deduplicated breakpoints of all piecewise parts in `[lo, hi]`.
    pub fn breakpoints_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .piecewise_parts()
            .flat_map(|p| p.breakpoints_in(lo, hi))
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Smallest breakpoint of any piecewise part strictly after `s`.
    pub fn next_breakpoint(&self, s: f64) -> Option<f64> {
        self.piecewise_parts()
            .filter_map(|p| p.next_breakpoint(s))
            .min_by(f64::total_cmp)
    }

    /// Largest breakpoint of any piecewise part strictly before `s`.
    pub fn prev_breakpoint(&self, s: f64) -> Option<f64> {
        self.piecewise_parts()
            .filter_map(|p| p.prev_breakpoint(s))
            .max_by(f64::total_cmp)
    }

    /// Parses the JSON stimulus description format.
    pub fn from_json(text: &str) -> Result<Self, StimulusError> {
        json::parse(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&StimulusSpec::from(self)).expect("stimulus serializes")
    }
}

/// A finite analysis window `[lo, hi]` sampled with a fixed grid step.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Window {
    #[serde(serialize_with = "crate::report::real")]
    pub lo: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub hi: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub grid_step: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64, grid_step: f64) -> Result<Self, StimulusError> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(StimulusError::Window(format!(
                "need finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        if !(grid_step.is_finite() && grid_step > 0.0) {
            return Err(StimulusError::Window(format!(
                "grid step must be positive, got {grid_step}"
            )));
        }
        if (hi - lo) / grid_step > 1e9 {
            return Err(StimulusError::Window("grid has more than 10^9 points".into()));
        }
        Ok(Window { lo, hi, grid_step })
    }

    /// A window whose grid has exactly `points` points, both ends included.
    pub fn with_points(lo: f64, hi: f64, points: usize) -> Result<Self, StimulusError> {
        if points < 2 {
            return Err(StimulusError::Window("need at least two grid points".into()));
        }
        Window::new(lo, hi, (hi - lo) / (points - 1) as f64)
    }

    pub fn len(&self) -> usize {
        ((self.hi - self.lo) / self.grid_step * (1.0 + 1e-12)).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid points `lo + i·step`, clipped to `hi`.
    pub fn grid(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| (self.lo + i as f64 * self.grid_step).min(self.hi))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2, TAU};

    fn sine_bump() -> Stimulus {
        Stimulus::trig(1.0, &[(0.0, 0.5, TAU)]).unwrap()
    }

    fn square() -> Stimulus {
        PiecewiseConstant::periodic(vec![0.0, 0.5, 1.0], vec![2.0, 0.0])
            .unwrap()
            .into()
    }

    fn incommensurate() -> Stimulus {
        Stimulus::trig(0.0, &[(0.0, 1.0, SQRT_2), (0.0, 1.0, 2.0)]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert!((sine_bump().evaluate(0.25) - 1.5).abs() < 1e-15);
        assert_eq!(square().evaluate(0.25), 2.0);
        assert_eq!(incommensurate().evaluate(0.0), 0.0);
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(Stimulus::constant(3.0).antiderivative(2.5), 7.5);
        assert!((sine_bump().antiderivative(1.0) - 1.0).abs() < 1e-15);
        assert_eq!(square().antiderivative(0.5), 1.0);
        assert_eq!(sine_bump().antiderivative(0.0), 0.0);
    }

    #[test]
    fn mean_examples() {
        assert_eq!(sine_bump().mean(), 1.0);
        assert_eq!(incommensurate().mean(), 0.0);
        assert_eq!(square().mean(), 1.0);
        let tails = PiecewiseConstant::with_tails(vec![0.0, 1.0], vec![5.0], -1.0, 0.25).unwrap();
        assert_eq!(Stimulus::from(tails).mean(), 0.25);
    }

    #[test]
    fn certified_lower_bound_examples() {
        assert_eq!(sine_bump().certified_lower_bound(), 0.5);
        assert_eq!(square().certified_lower_bound(), 0.0);
        let f = Stimulus::trig(1.0, &[(0.0, 0.2, 1.0), (0.0, 0.2, SQRT_2)]).unwrap();
        assert!((f.certified_lower_bound() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn sums_flatten_and_add() {
        let s = Stimulus::sum(vec![
            sine_bump(),
            Stimulus::sum(vec![square(), Stimulus::constant(-0.5)]).unwrap(),
        ])
        .unwrap();
        assert_eq!(s.leaves().len(), 3);
        assert_eq!(s.mean(), 1.5);
        assert_eq!(s.sup_bound(), 1.5 + 2.0 + 0.5);
        for t in [-3.2, 0.0, 0.4, 7.9] {
            let parts: f64 = s.leaves().iter().map(|p| p.antiderivative(t)).sum();
            assert_eq!(s.antiderivative(t), parts);
        }
        assert!(Stimulus::sum(vec![]).is_err());
    }

    #[test]
    fn trig_validation() {
        assert!(Stimulus::trig(1.0, &[(1.0, 0.0, 0.0)]).is_err());
        assert!(Stimulus::trig(1.0, &[(1.0, 0.0, -1.0)]).is_err());
        let err = Stimulus::trig(1.0, &[(1.0, 0.0, PI), (0.0, 1.0, PI)]).unwrap_err();
        assert!(err.to_string().contains("terms[1].lambda"), "{err}");
    }

    #[test]
    fn exact_periods() {
        assert_eq!(square().exact_period(), Some(1.0));
        assert!((sine_bump().exact_period().unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(incommensurate().exact_period(), None);
        assert_eq!(Stimulus::constant(1.0).exact_period(), None);
    }

    #[test]
    fn window_grid() {
        let w = Window::with_points(0.0, 10.0, 1000).unwrap();
        let g = w.grid();
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 0.0);
        assert!((g[999] - 10.0).abs() < 1e-12);
        assert_eq!(Window::new(0.0, 1.0, 0.25).unwrap().grid(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(Window::new(1.0, 1.0, 0.1).is_err());
        assert!(Window::new(0.0, 1.0, 0.0).is_err());
    }
}
