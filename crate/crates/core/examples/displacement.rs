// The displacement Ψ(t) = Φ(t) − t over a window, and its 1/δ ceiling.

use std::error::Error;

use firingmap::{FiringEngine, Stimulus, Window};

pub fn run() -> Result<(), Box<dyn Error>> {
    let f = Stimulus::trig(0.8, &[(0.3, 0.2, 1.0), (0.0, 0.15, 3.7)])?;
    let delta = f.certified_lower_bound();
    let engine = FiringEngine::new(f)?;
    let profile = engine.displacement(&Window::new(0.0, 20.0, 0.01)?)?;
    println!("f ≥ {delta:.3}, so Ψ < {:.3}", 1.0 / delta);
    println!("Ψ ranges over [{:.6}, {:.6}] on {} points", profile.min(), profile.max(), profile.grid.len());
    for (t, psi) in profile.grid.iter().zip(&profile.values).step_by(200) {
        let bar = "#".repeat((psi * 20.0) as usize);
        println!("{t:>6.2} {psi:>9.6} {bar}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
