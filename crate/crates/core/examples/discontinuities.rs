// Jumps of Φ caused by intervals where the stimulus is zero.

use std::error::Error;

use firingmap::stimulus::PiecewiseConstant;
use firingmap::{FiringEngine, Stimulus, Window};

pub fn run() -> Result<(), Box<dyn Error>> {
    // 1.5 on [0, 1), silent on [1, 1.6), 0.7 on [1.6, 3), repeated with period 3
    let f: Stimulus =
        PiecewiseConstant::periodic(vec![0.0, 1.0, 1.6, 3.0], vec![1.5, 0.0, 0.7])?.into();
    let engine = FiringEngine::new(f)?;
    let report = engine.discontinuities(&Window::new(0.0, 9.0, 0.1)?)?;
    println!("{:>10} {:>10} {:>8} {:>8}", "ā", "Φ(ā)", "jump", "plateau");
    for d in &report.entries {
        println!("{:>10.6} {:>10.6} {:>8.4} {:>8.4}", d.abar, d.a, d.jump, d.plateau_length);
        let eps = 1e-9;
        println!(
            "    Φ(ā − {eps:e}) = {:.6}, Φ(ā + {eps:e}) = {:.6}",
            engine.phi(d.abar - eps)?,
            engine.phi(d.abar + eps)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
