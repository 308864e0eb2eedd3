//! Windowed sup and Stepanov (r = 1, p = 1) distances.

use super::{Stimulus, TrigTerm, Window};

/// Target absolute error of the smooth-piece quadrature.
const QUADRATURE_TOLERANCE: f64 = 1e-6;
/// Root bracketing stops at this width; the induced error is `|g'|·width²`.
const ROOT_WIDTH: f64 = 1e-8;

/// Max of `|f − g|` over the window grid and all breakpoints of both inside the
/// window. A lower bound of the true sup; exact when both are piecewise constant.
pub fn sup_distance(f: &Stimulus, g: &Stimulus, w: &Window) -> f64 {
    let mut points = w.grid();
    points.extend(f.breakpoints_in(w.lo, w.hi));
    points.extend(g.breakpoints_in(w.lo, w.hi));
    points
        .iter()
        .map(|&t| (f.evaluate(t) - g.evaluate(t)).abs())
        .fold(0.0, f64::max)
}

/// `sup_{t ∈ grid} ∫_t^{t+1} |f(u + τ) − f(u)| du`.
pub fn stepanov_shift_distance(f: &Stimulus, tau: f64, w: &Window) -> f64 {
    ShiftDifference::new(f, tau).window_sup(w)
}

/// The difference `d(u) = f(u + τ) − f(u)`.
///
/// The trigonometric parts of `d` are again a trigonometric sum with the same
/// frequencies; the piecewise parts contribute a constant between consecutive
/// breakpoints of `f` and of the shifted `f`.
#[derive(Debug, Clone)]
pub struct ShiftDifference<'a> {
    stimulus: &'a Stimulus,
    tau: f64,
    terms: Vec<TrigTerm>,
    // sup |d''| and sup |d''''| of the smooth part
    second: f64,
    cell: f64,
}

impl<'a> ShiftDifference<'a> {
    pub fn new(stimulus: &'a Stimulus, tau: f64) -> Self {
        let terms: Vec<TrigTerm> = stimulus
            .trig_parts()
            .flat_map(|p| p.terms().iter().map(|term| term.shift_difference(tau)))
            .filter(|term| term.cos_amplitude != 0.0 || term.sin_amplitude != 0.0)
            .collect();
        let moment = |k: i32| -> f64 {
            terms
                .iter()
                .map(|term| term.amplitude() * term.frequency.powi(k))
                .sum()
        };
        let second = moment(2);
        let fourth = moment(4);
        // composite Simpson: error ≤ L·h⁴·sup|d''''|/180 with L ≤ 1
        let cell = if fourth > 0.0 {
            (180.0 * QUADRATURE_TOLERANCE / fourth).powf(0.25).min(0.25)
        } else {
            0.25
        };
        ShiftDifference {
            stimulus,
            tau,
            terms,
            second,
            cell,
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn smooth(&self, u: f64) -> f64 {
        self.terms.iter().map(|term| term.value(u)).sum()
    }

    fn smooth_slope(&self, u: f64) -> f64 {
        self.terms
            .iter()
            .map(|term| {
                let (s, c) = (term.frequency * u).sin_cos();
                term.frequency * (term.sin_amplitude * c - term.cos_amplitude * s)
            })
            .sum()
    }

    fn stepwise(&self, u: f64) -> f64 {
        self.stimulus
            .piecewise_parts()
            .map(|p| p.evaluate(u + self.tau) - p.evaluate(u))
            .sum()
    }

    pub fn value(&self, u: f64) -> f64 {
        self.stepwise(u) + self.smooth(u)
    }

    /// `∫_a^b |d(u)| du` for `a ≤ b`.
    pub fn abs_integral(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let mut cuts = vec![a, b];
        cuts.extend(self.stimulus.breakpoints_in(a, b));
        cuts.extend(
            self.stimulus
                .breakpoints_in(a + self.tau, b + self.tau)
                .into_iter()
                .map(|x| x - self.tau)
                .filter(|&x| x > a && x < b),
        );
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        cuts.windows(2)
            .map(|pair| {
                let (u0, u1) = (pair[0], pair[1]);
                let level = self.stepwise(0.5 * (u0 + u1));
                if self.terms.is_empty() {
                    level.abs() * (u1 - u0)
                } else {
                    self.smooth_abs_integral(level, u0, u1)
                }
            })
            .sum()
    }

    /// `∫_t^{t+1} |d|`.
    pub fn unit_integral(&self, t: f64) -> f64 {
        self.abs_integral(t, t + 1.0)
    }

    /// `sup_{t ∈ grid} ∫_t^{t+1} |d|`, sharing work between overlapping windows.
    pub fn window_sup(&self, w: &Window) -> f64 {
        let grid = w.grid();
        let mut cuts: Vec<f64> = grid.iter().flat_map(|&t| [t, t + 1.0]).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut prefix = Vec::with_capacity(cuts.len());
        prefix.push(0.0);
        for pair in cuts.windows(2) {
            let last = *prefix.last().unwrap();
            prefix.push(last + self.abs_integral(pair[0], pair[1]));
        }
        let index = |x: f64| {
            cuts.binary_search_by(|c| c.total_cmp(&x))
                .expect("grid point is a cut")
        };
        grid.iter()
            .map(|&t| prefix[index(t + 1.0)] - prefix[index(t)])
            .fold(0.0, f64::max)
    }

    // ∫ |level + smooth(u)| over [a, b], where the integrand is smooth
    fn smooth_abs_integral(&self, level: f64, a: f64, b: f64) -> f64 {
        let g = |u: f64| level + self.smooth(u);
        let cells = ((b - a) / self.cell).ceil().max(1.0) as usize;
        let width = (b - a) / cells as f64;
        let mut total = 0.0;
        let mut x0 = a;
        let mut g0 = g(a);
        for i in 0..cells {
            let x1 = if i + 1 == cells { b } else { a + (i + 1) as f64 * width };
            let g1 = g(x1);
            total += self.abs_cell(&g, x0, x1, g0, g1);
            x0 = x1;
            g0 = g1;
        }
        total
    }

    fn abs_cell(&self, g: &impl Fn(f64) -> f64, x0: f64, x1: f64, g0: f64, g1: f64) -> f64 {
        let w = x1 - x0;
        if w <= 0.0 {
            return 0.0;
        }
        if g0 * g1 < 0.0 {
            let r = bisect(g, x0, x1, g0);
            return self.root_side(g, x0, r, g0, true) + self.root_side(g, r, x1, g1, false);
        }
        // no sign change: linear interpolation error is at most sup|g''|·w²/8,
        // so a margin beyond that rules out a hidden pair of roots
        let margin = self.second * w * w / 8.0;
        if g0.abs().min(g1.abs()) > margin || w * w * w * self.second < 1e-12 {
            return simpson_abs(g, x0, x1, g0, g1);
        }
        let xm = 0.5 * (x0 + x1);
        let gm = g(xm);
        self.abs_cell(g, x0, xm, g0, gm) + self.abs_cell(g, xm, x1, gm, g1)
    }

    // Piece between a bracketed root `r` and the far endpoint with value `g_far`.
    fn root_side(
        &self,
        g: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        g_far: f64,
        root_at_right: bool,
    ) -> f64 {
        let w = b - a;
        let r = if root_at_right { b } else { a };
        // g(x) = g'(r)(x − r) + O(sup|g''|·(x − r)²/2): no other root within w
        // when |g'(r)| > sup|g''|·w/2
        if self.smooth_slope(r).abs() > self.second * w / 2.0 || w * w * w * self.second < 1e-12 {
            let (ga, gb) = if root_at_right { (g_far, 0.0) } else { (0.0, g_far) };
            return simpson_abs(g, a, b, ga, gb);
        }
        let xm = 0.5 * (a + b);
        let gm = g(xm);
        if root_at_right {
            self.abs_cell(g, a, xm, g_far, gm) + self.root_side(g, xm, b, gm, true)
        } else {
            self.root_side(g, a, xm, gm, false) + self.abs_cell(g, xm, b, gm, g_far)
        }
    }
}

fn simpson_abs(g: &impl Fn(f64) -> f64, a: f64, b: f64, ga: f64, gb: f64) -> f64 {
    let gm = g(0.5 * (a + b));
    ((b - a) / 6.0 * (ga + 4.0 * gm + gb)).abs()
}

fn bisect(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, g_lo: f64) -> f64 {
    let lo_negative = g_lo < 0.0;
    while hi - lo > ROOT_WIDTH {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stimulus::PiecewiseConstant;
    use std::f64::consts::{PI, TAU};

    fn sine_bump() -> Stimulus {
        Stimulus::trig(1.0, &[(0.0, 0.5, TAU)]).unwrap()
    }

    #[test]
    fn sup_distance_examples() {
        let w = Window::new(0.0, 10.0, 1e-3).unwrap();
        let f = sine_bump();
        assert_eq!(sup_distance(&f, &f, &w), 0.0);
        assert_eq!(
            sup_distance(&Stimulus::constant(1.0), &Stimulus::constant(1.25), &w),
            0.25
        );
        let d = sup_distance(&f, &Stimulus::constant(1.0), &w);
        assert!((d - 0.5).abs() < 1e-5, "{d}");
    }

    #[test]
    fn sup_distance_is_exact_for_steps() {
        let f: Stimulus = PiecewiseConstant::periodic(vec![0.0, 0.3, 1.0], vec![1.0, 2.0])
            .unwrap()
            .into();
        let g: Stimulus = PiecewiseConstant::periodic(vec![0.0, 0.31, 1.0], vec![1.0, 2.0])
            .unwrap()
            .into();
        // the grid never lands in [0.3, 0.31); breakpoints do
        let w = Window::new(0.0, 2.0, 0.25).unwrap();
        assert_eq!(sup_distance(&f, &g, &w), 1.0);
    }

    #[test]
    fn stepanov_examples() {
        let w = Window::new(0.0, 5.0, 0.05).unwrap();
        let f = sine_bump();
        assert_eq!(stepanov_shift_distance(&f, 0.0, &w), 0.0);
        assert!(stepanov_shift_distance(&f, 1.0, &w) < 1e-12);
        let d = stepanov_shift_distance(&f, 0.5, &w);
        assert!((d - 2.0 / PI).abs() < 1e-6, "{d}");

        let square: Stimulus = PiecewiseConstant::periodic(vec![0.0, 0.5, 1.0], vec![2.0, 0.0])
            .unwrap()
            .into();
        assert_eq!(stepanov_shift_distance(&square, 3.0, &w), 0.0);
        // shifting by half a period swaps the levels everywhere
        assert!((stepanov_shift_distance(&square, 0.5, &w) - 2.0).abs() < 1e-12);
        // a quarter-period shift differs on half of every unit interval
        assert!((stepanov_shift_distance(&square, 0.25, &w) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn abs_integral_handles_many_roots() {
        // |sin(40u)| over [0, 1]: (1 − cos 40)/40 plus the full half-waves
        let f = Stimulus::trig(0.0, &[(0.0, 1.0, 40.0)]).unwrap();
        let d = ShiftDifference::new(&f, PI / 40.0); // d = −2 sin(40u)
        let half_waves = (40.0 / PI).floor();
        let rest = 40.0 - half_waves * PI;
        let expected = 2.0 * (2.0 * half_waves + (1.0 - rest.cos())) / 40.0;
        assert!((d.unit_integral(0.0) - expected).abs() < 1e-6);
    }
}
