//! Step functions with exact prefix-sum integration.
//!
//! A [`PiecewiseConstant`] takes value `vₖ` on `[t_{k−1}, t_k)` and is extended
//! to the whole line either periodically or by two constant tails. Evaluation is
//! right-continuous at every breakpoint.

use super::StimulusError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extension {
    /// Repeat with period `t_m − t_0`.
    Periodic,
    /// `left` on `(−∞, t_0)`, `right` on `[t_m, ∞)`.
    Tails { left: f64, right: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstant {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    extension: Extension,
    // prefix[k] = ∫ from t_0 to t_k
    prefix: Vec<f64>,
    // ∫ from t_0 to 0, so that F(0) = 0
    origin_offset: f64,
}

impl PiecewiseConstant {
    pub fn new(
        breakpoints: Vec<f64>,
        values: Vec<f64>,
        extension: Extension,
    ) -> Result<Self, StimulusError> {
        if values.is_empty() {
            return Err(StimulusError::invalid("values", "at least one segment is required"));
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(StimulusError::invalid(
                "breakpoints",
                format!(
                    "expected {} breakpoints for {} values, got {}",
                    values.len() + 1,
                    values.len(),
                    breakpoints.len()
                ),
            ));
        }
        for (i, b) in breakpoints.iter().enumerate() {
            if !b.is_finite() {
                return Err(StimulusError::invalid(
                    format!("breakpoints[{i}]"),
                    "breakpoint must be finite",
                ));
            }
            if i > 0 && *b <= breakpoints[i - 1] {
                return Err(StimulusError::invalid(
                    format!("breakpoints[{i}]"),
                    format!(
                        "breakpoints must be strictly increasing ({} follows {})",
                        b,
                        breakpoints[i - 1]
                    ),
                ));
            }
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(StimulusError::invalid(format!("values[{i}]"), "value must be finite"));
        }
        if let Extension::Tails { left, right } = extension {
            if !left.is_finite() {
                return Err(StimulusError::invalid("extension.left", "tail value must be finite"));
            }
            if !right.is_finite() {
                return Err(StimulusError::invalid("extension.right", "tail value must be finite"));
            }
        }

        let mut prefix = Vec::with_capacity(breakpoints.len());
        prefix.push(0.0);
        for (k, v) in values.iter().enumerate() {
            let last = prefix[k];
            prefix.push(last + v * (breakpoints[k + 1] - breakpoints[k]));
        }
        let mut pc = PiecewiseConstant {
            breakpoints,
            values,
            extension,
            prefix,
            origin_offset: 0.0,
        };
        pc.origin_offset = pc.integral_from_start(0.0);
        Ok(pc)
    }

    pub fn periodic(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self, StimulusError> {
        Self::new(breakpoints, values, Extension::Periodic)
    }

    pub fn with_tails(
        breakpoints: Vec<f64>,
        values: Vec<f64>,
        left: f64,
        right: f64,
    ) -> Result<Self, StimulusError> {
        Self::new(breakpoints, values, Extension::Tails { left, right })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    fn start(&self) -> f64 {
        self.breakpoints[0]
    }

    fn end(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    pub fn period(&self) -> Option<f64> {
        match self.extension {
            Extension::Periodic => Some(self.end() - self.start()),
            Extension::Tails { .. } => None,
        }
    }

    /// Integral over one period (periodic) or over `[t_0, t_m]` (tails).
    pub fn core_integral(&self) -> f64 {
        *self.prefix.last().unwrap()
    }

    /// Splits `t` into `(n, r)` with `t ≈ r + n·T` and `r ∈ [t_0, t_m)`.
    fn reduce(&self, t: f64) -> (f64, f64) {
        let t0 = self.start();
        let period = self.end() - t0;
        let mut n = ((t - t0) / period).floor();
        let mut r = t - n * period;
        if r < t0 {
            r += period;
            n -= 1.0;
        }
        if r >= self.end() {
            r -= period;
            n += 1.0;
        }
        (n, r.max(t0))
    }

    /// Index `k` of the segment `[t_k, t_{k+1})` containing `r ∈ [t_0, t_m)`.
    fn segment(&self, r: f64) -> usize {
        let idx = self.breakpoints.partition_point(|&b| b <= r);
        idx.saturating_sub(1).min(self.values.len() - 1)
    }

    fn partial(&self, r: f64) -> f64 {
        let k = self.segment(r);
        self.prefix[k] + self.values[k] * (r - self.breakpoints[k])
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        match self.extension {
            Extension::Periodic => {
                let (_, r) = self.reduce(t);
                self.values[self.segment(r)]
            }
            Extension::Tails { left, right } => {
                if t < self.start() {
                    left
                } else if t >= self.end() {
                    right
                } else {
                    self.values[self.segment(t)]
                }
            }
        }
    }

    // ∫ from t_0 to t, signed
    fn integral_from_start(&self, t: f64) -> f64 {
        match self.extension {
            Extension::Periodic => {
                let (n, r) = self.reduce(t);
                n * self.core_integral() + self.partial(r)
            }
            Extension::Tails { left, right } => {
                if t < self.start() {
                    left * (t - self.start())
                } else if t >= self.end() {
                    self.core_integral() + right * (t - self.end())
                } else {
                    self.partial(t)
                }
            }
        }
    }

    /// `F(t) = ∫₀ᵗ f`.
    pub fn antiderivative(&self, t: f64) -> f64 {
        self.integral_from_start(t) - self.origin_offset
    }

    /// Period average, or the right tail value (the Cesàro limit).
    pub fn mean(&self) -> f64 {
        match self.extension {
            Extension::Periodic => self.core_integral() / (self.end() - self.start()),
            Extension::Tails { right, .. } => right,
        }
    }

    pub fn lower_bound(&self) -> f64 {
        let core = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        match self.extension {
            Extension::Periodic => core,
            Extension::Tails { left, right } => core.min(left).min(right),
        }
    }

    pub fn sup_bound(&self) -> f64 {
        let core = self.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        match self.extension {
            Extension::Periodic => core,
            Extension::Tails { left, right } => core.max(left.abs()).max(right.abs()),
        }
    }

    /// Smallest breakpoint strictly greater than `s`.
    pub fn next_breakpoint(&self, s: f64) -> Option<f64> {
        match self.extension {
            Extension::Periodic => {
                let period = self.end() - self.start();
                let (n, r) = self.reduce(s);
                let mut idx = self.breakpoints.partition_point(|&b| b <= r);
                let mut shift = n;
                loop {
                    if idx >= self.breakpoints.len() {
                        idx = 1;
                        shift += 1.0;
                    }
                    let candidate = self.breakpoints[idx] + shift * period;
                    if candidate > s {
                        return Some(candidate);
                    }
                    idx += 1;
                }
            }
            Extension::Tails { .. } => {
                let idx = self.breakpoints.partition_point(|&b| b <= s);
                self.breakpoints.get(idx).copied()
            }
        }
    }

    /// Largest breakpoint strictly less than `s`.
    pub fn prev_breakpoint(&self, s: f64) -> Option<f64> {
        match self.extension {
            Extension::Periodic => {
                let period = self.end() - self.start();
                let (n, r) = self.reduce(s);
                let mut idx = self.breakpoints.partition_point(|&b| b < r) as isize - 1;
                let mut shift = n;
                loop {
                    if idx < 0 {
                        idx = self.breakpoints.len() as isize - 2;
                        shift -= 1.0;
                    }
                    let candidate = self.breakpoints[idx as usize] + shift * period;
                    if candidate < s {
                        return Some(candidate);
                    }
                    idx -= 1;
                }
            }
            Extension::Tails { .. } => {
                let idx = self.breakpoints.partition_point(|&b| b < s);
                idx.checked_sub(1).map(|i| self.breakpoints[i])
            }
        }
    }

    /// All breakpoints in `[lo, hi]`, ascending.
    pub fn breakpoints_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        if hi < lo {
            return out;
        }
        match self.extension {
            Extension::Periodic => {
                let period = self.end() - self.start();
                let (n_lo, _) = self.reduce(lo);
                let (n_hi, _) = self.reduce(hi);
                let mut n = n_lo;
                while n <= n_hi {
                    for b in &self.breakpoints[..self.breakpoints.len() - 1] {
                        let x = b + n * period;
                        if x >= lo && x <= hi {
                            out.push(x);
                        }
                    }
                    n += 1.0;
                }
            }
            Extension::Tails { .. } => {
                out.extend(self.breakpoints.iter().copied().filter(|&b| b >= lo && b <= hi));
            }
        }
        out
    }

    /// Bound on `|F(t) − mean·t|` over all t, for periodic extensions.
    pub(crate) fn periodic_oscillation_bound(&self) -> Option<f64> {
        self.period()?;
        let mean = self.mean();
        // the deviation F − mean·t is periodic; its range is bounded by the
        // total variation of the centred partial integral over one period
        let swing: f64 = self
            .values
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(v, w)| (v - mean).abs() * (w[1] - w[0]))
            .sum();
        Some(swing)
    }
}
