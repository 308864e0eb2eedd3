// Truncating a limit-periodic stimulus gives a periodic one whose firing map
// is uniformly close, once the truncation error is small enough.

use std::error::Error;
use std::f64::consts::TAU;

use firingmap::almostperiod::compare_with_periodic_approximant;
use firingmap::{FiringEngine, Stimulus, Window};

// 1 + Σ_{k<terms} 2⁻ᵏ⁻² cos(2πt/2ᵏ)
fn dyadic(terms: i32) -> Result<Stimulus, Box<dyn Error>> {
    let parts: Vec<(f64, f64, f64)> = (0..terms)
        .map(|k| (0.5f64.powi(k + 2), 0.0, TAU / 2f64.powi(k)))
        .collect();
    Ok(Stimulus::trig(1.0, &parts)?)
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let engine = FiringEngine::new(dyadic(12)?)?;
    let w = Window::new(0.0, 64.0, 0.05)?;
    let eps = 0.05;
    println!("{:>5} {:>12} {:>12} {:>12} {:>6}", "terms", "sup|f − g|", "needed", "sup|Φ − Φ'|", "ok");
    for terms in 1..=8 {
        let approx = FiringEngine::new(dyadic(terms)?)?;
        let r = compare_with_periodic_approximant(&engine, &approx, eps, &w)?;
        println!(
            "{terms:>5} {:>12.3e} {:>12.3e} {:>12.3e} {:>6}",
            r.sup_stimulus_distance,
            r.required_bound,
            r.sup_phi_distance,
            if r.precondition_met { r.passes.to_string() } else { "-".into() }
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
