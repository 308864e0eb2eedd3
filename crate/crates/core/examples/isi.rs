// Interspike intervals under a drive whose period is incommensurate with the
// mean interval, and the integer shifts that nearly repeat them.

use std::error::Error;
use firingmap::almostperiod::sequence_almost_periods;
use firingmap::{FiringEngine, Stimulus};

pub fn run() -> Result<(), Box<dyn Error>> {
    let f = Stimulus::trig(1.0, &[(0.3, 0.0, 1.0)])?;
    let engine = FiringEngine::new(f)?;
    let isi = engine.spike_train(0.0, 300)?.intervals();
    let (lo, hi) = isi.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    println!("{} intervals in [{lo:.4}, {hi:.4}]", isi.len());
    for eps in [0.1, 0.05, 0.02] {
        let shifts = sequence_almost_periods(&isi, eps, 1, 100, 0)?;
        let shown: Vec<String> = shifts.iter().take(10).map(|k| k.to_string()).collect();
        println!("ε = {eps:<5} {:>3} shifts: {}", shifts.len(), shown.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
