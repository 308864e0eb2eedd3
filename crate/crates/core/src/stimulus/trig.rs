//! Generalized trigonometric polynomials `c0 + Σ a cos(λt) + b sin(λt)`.

use super::StimulusError;

/// One `a cos(λt) + b sin(λt)` term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigTerm {
    pub cos_amplitude: f64,
    pub sin_amplitude: f64,
    /// Angular frequency in radians per unit time.
    pub frequency: f64,
}

impl TrigTerm {
    pub fn new(cos_amplitude: f64, sin_amplitude: f64, frequency: f64) -> Self {
        TrigTerm {
            cos_amplitude,
            sin_amplitude,
            frequency,
        }
    }

    /// `sqrt(a² + b²)`, the sup of the term over ℝ.
    pub fn amplitude(&self) -> f64 {
        self.cos_amplitude.hypot(self.sin_amplitude)
    }

    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        let (s, c) = (self.frequency * t).sin_cos();
        self.cos_amplitude * c + self.sin_amplitude * s
    }

    /// `∫₀ᵗ` of the term. Uses `1 - cos x = 2 sin²(x/2)` to keep small-t accuracy.
    #[inline]
    pub fn antiderivative(&self, t: f64) -> f64 {
        let x = self.frequency * t;
        let half = (0.5 * x).sin();
        (self.cos_amplitude * x.sin() + 2.0 * self.sin_amplitude * half * half) / self.frequency
    }

    /// Coefficients of `u ↦ term(u + τ) − term(u)`.
    pub fn shift_difference(&self, tau: f64) -> TrigTerm {
        let x = self.frequency * tau;
        let s = x.sin();
        let half = (0.5 * x).sin();
        // cos x − 1, without cancellation
        let cm1 = -2.0 * half * half;
        let (a, b) = (self.cos_amplitude, self.sin_amplitude);
        TrigTerm {
            cos_amplitude: a * cm1 + b * s,
            sin_amplitude: b * cm1 - a * s,
            frequency: self.frequency,
        }
    }
}

/// `f(t) = c0 + Σⱼ aⱼ cos(λⱼ t) + bⱼ sin(λⱼ t)` with distinct positive frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    constant_term: f64,
    terms: Vec<TrigTerm>,
}

impl TrigPolynomial {
    pub fn new(constant_term: f64, terms: Vec<TrigTerm>) -> Result<Self, StimulusError> {
        if !constant_term.is_finite() {
            return Err(StimulusError::invalid("c0", "constant term must be finite"));
        }
        for (i, term) in terms.iter().enumerate() {
            if !term.cos_amplitude.is_finite() {
                return Err(StimulusError::invalid(
                    format!("terms[{i}].a"),
                    "amplitude must be finite",
                ));
            }
            if !term.sin_amplitude.is_finite() {
                return Err(StimulusError::invalid(
                    format!("terms[{i}].b"),
                    "amplitude must be finite",
                ));
            }
            if !(term.frequency.is_finite() && term.frequency > 0.0) {
                return Err(StimulusError::invalid(
                    format!("terms[{i}].lambda"),
                    format!("frequency must be finite and positive, got {}", term.frequency),
                ));
            }
            if let Some(j) = terms[..i].iter().position(|o| o.frequency == term.frequency) {
                return Err(StimulusError::invalid(
                    format!("terms[{i}].lambda"),
                    format!("frequency {} duplicates terms[{j}]", term.frequency),
                ));
            }
        }
        Ok(TrigPolynomial {
            constant_term,
            terms,
        })
    }

    /// The constant function `c`.
    pub fn constant(c: f64) -> Self {
        TrigPolynomial {
            constant_term: c,
            terms: Vec::new(),
        }
    }

    pub fn constant_term(&self) -> f64 {
        self.constant_term
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        self.constant_term + self.terms.iter().map(|term| term.value(t)).sum::<f64>()
    }

    pub fn antiderivative(&self, t: f64) -> f64 {
        self.constant_term * t
            + self
                .terms
                .iter()
                .map(|term| term.antiderivative(t))
                .sum::<f64>()
    }

    pub fn mean(&self) -> f64 {
        self.constant_term
    }

    /// Σ amplitudes; the oscillating part never exceeds this in magnitude.
    pub fn amplitude_sum(&self) -> f64 {
        self.terms.iter().map(TrigTerm::amplitude).sum()
    }

    pub fn lower_bound(&self) -> f64 {
        self.constant_term - self.amplitude_sum()
    }

    pub fn sup_bound(&self) -> f64 {
        self.constant_term.abs() + self.amplitude_sum()
    }

    /// Bound on `|F(t) − c0·t|`: each term's antiderivative is `2·amp/λ` at most.
    pub fn oscillation_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|term| 2.0 * term.amplitude() / term.frequency)
            .sum()
    }
}
