//! Seeded stimulus generators shared by the integration tests.

#![allow(dead_code)]

use firingmap::stimulus::PiecewiseConstant;
use firingmap::Stimulus;
use rand::Rng;

pub fn trig_family<R: Rng>(rng: &mut R) -> Stimulus {
    let c0 = rng.gen_range(0.3..2.0);
    let terms = rng.gen_range(1..=3);
    let mut freqs: Vec<f64> = Vec::new();
    while freqs.len() < terms {
        let lambda = rng.gen_range(0.2..5.0);
        if freqs.iter().all(|f: &f64| (f - lambda).abs() > 1e-3) {
            freqs.push(lambda);
        }
    }
    let parts: Vec<(f64, f64, f64)> = freqs
        .into_iter()
        .map(|lambda| {
            let amp = rng.gen_range(0.0..c0) / terms as f64;
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            (amp * phase.cos(), amp * phase.sin(), lambda)
        })
        .collect();
    Stimulus::trig(c0, &parts).unwrap()
}

pub fn step_family<R: Rng>(rng: &mut R, low: f64) -> Stimulus {
    let segments = rng.gen_range(1..=5);
    let mut breakpoints = vec![rng.gen_range(-2.0..2.0)];
    for _ in 0..segments {
        let last = *breakpoints.last().unwrap();
        breakpoints.push(last + rng.gen_range(0.1..1.5));
    }
    let values = (0..segments).map(|_| rng.gen_range(low..2.5)).collect();
    if rng.gen_bool(0.7) {
        PiecewiseConstant::periodic(breakpoints, values).unwrap().into()
    } else {
        let left = rng.gen_range(low.max(0.3)..2.0);
        let right = rng.gen_range(low.max(0.3)..2.0);
        PiecewiseConstant::with_tails(breakpoints, values, left, right)
            .unwrap()
            .into()
    }
}

/// Trigonometric, step or mixed stimulus with mean in [0.3, 2] and certified
/// lower bound above 0.1.
pub fn positive_stimulus<R: Rng>(rng: &mut R) -> Stimulus {
    loop {
        let candidate = match rng.gen_range(0..3) {
            0 => trig_family(rng),
            1 => step_family(rng, 0.1),
            _ => Stimulus::sum(vec![step_family(rng, 0.1), trig_family(rng)]).unwrap(),
        };
        let mean = candidate.mean();
        if (0.3..=2.0).contains(&mean) && candidate.certified_lower_bound() > 0.1 {
            return candidate;
        }
    }
}

/// Periodic step function with at least one zero segment and one positive one.
pub fn plateau_stimulus<R: Rng>(rng: &mut R) -> Stimulus {
    let segments = rng.gen_range(2..=6);
    let mut breakpoints = vec![rng.gen_range(-2.0..2.0)];
    for _ in 0..segments {
        let last = *breakpoints.last().unwrap();
        breakpoints.push(last + rng.gen_range(0.1..1.5));
    }
    let mut values: Vec<f64> = (0..segments)
        .map(|_| if rng.gen_bool(0.4) { 0.0 } else { rng.gen_range(0.2..2.5) })
        .collect();
    let zero = rng.gen_range(0..segments);
    values[zero] = 0.0;
    let positive = (zero + 1 + rng.gen_range(0..segments - 1)) % segments;
    values[positive] = rng.gen_range(0.2..2.5);
    PiecewiseConstant::periodic(breakpoints, values).unwrap().into()
}
