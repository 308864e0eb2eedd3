// Spike times of a stimulus loaded from JSON, with their certified residuals.

use std::error::Error;

use firingmap::{FiringEngine, Stimulus};

const STIMULUS: &str = r#"{
    "type": "sum",
    "parts": [
        {"type": "trig", "c0": 1.2, "terms": [{"a": 0.4, "lambda": 1.0}, {"b": 0.3, "lambda": 2.2}]},
        {"type": "piecewise", "breakpoints": [0, 3, 5], "values": [0.5, -0.5],
         "extension": {"kind": "periodic"}}
    ]
}"#;

pub fn run() -> Result<(), Box<dyn Error>> {
    let f = Stimulus::from_json(STIMULUS)?;
    let engine = FiringEngine::new(f)?;
    let train = engine.spike_train(0.0, 12)?;
    println!("residual tolerance {:.3e}", engine.residual_tolerance());
    println!("{:>3} {:>12} {:>10} {:>10}", "k", "time", "interval", "residual");
    let mut last = train.start;
    for (k, (t, r)) in train.times.iter().zip(&train.residuals).enumerate() {
        println!("{:>3} {t:>12.8} {:>10.6} {r:>10.2e}", k + 1, t - last);
        last = *t;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
