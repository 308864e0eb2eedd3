// The empirical rate n/Φⁿ(t₀) approaches the mean of the stimulus.

use std::error::Error;
use std::f64::consts::SQRT_2;

use firingmap::{FiringEngine, Stimulus};

pub fn run() -> Result<(), Box<dyn Error>> {
    let f = Stimulus::trig(1.0, &[(0.4, 0.0, 1.0), (0.0, 0.4, SQRT_2)])?;
    let bound = f.oscillation_bound().unwrap_or(f64::NAN);
    let engine = FiringEngine::new(f)?;
    println!("mean 1, |F(t) − t| ≤ {bound:.4}");
    println!("{:>7} {:>14} {:>12} {:>12}", "n", "Φⁿ(0)", "rate", "deviation");
    for n in [10, 100, 1_000, 10_000, 100_000] {
        let r = engine.firing_rate(0.0, n)?;
        println!(
            "{n:>7} {:>14.6} {:>12.9} {:>12.3e}",
            r.phi_n, r.empirical_rate, r.deviation
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
