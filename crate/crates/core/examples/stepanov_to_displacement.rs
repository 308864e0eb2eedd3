// Every shift that keeps the stimulus close in the Stepanov sense also keeps
// the displacement map within ε uniformly.

use std::error::Error;
use std::f64::consts::SQRT_2;

use firingmap::almostperiod::verify_displacement_theorem;
use firingmap::{FiringEngine, ScanOptions, Stimulus, TauRange, Window};

pub fn run() -> Result<(), Box<dyn Error>> {
    let f = Stimulus::trig(1.0, &[(0.1, 0.0, 1.0), (0.0, 0.1, SQRT_2)])?;
    let engine = FiringEngine::new(f)?;
    let report = verify_displacement_theorem(
        &engine,
        0.2,
        &TauRange::new(0.0, 200.0, 0.05)?,
        &Window::new(0.0, 20.0, 0.05)?,
        ScanOptions::default(),
    )?;
    println!(
        "δ = {:.3}, Stepanov threshold {:.4e}, {} candidates, status {}",
        report.delta,
        report.stepanov_threshold,
        report.candidates.len(),
        report.status
    );
    for c in report.candidates.iter().filter(|c| c.tau > 1.0).take(8) {
        println!(
            "  τ = {:>8.4}  Stepanov {:.3e}  sup|Ψ(t+τ) − Ψ(t)| {:.3e}",
            c.tau, c.stepanov_distance, c.max_displacement_deviation
        );
    }
    println!("violations: {}", report.violations.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
