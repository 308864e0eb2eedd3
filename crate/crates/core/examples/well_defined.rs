// Which stimuli give a firing map at all.
//
// A stimulus with positive mean always reaches the threshold. A negative mean
// never does from most resets, and zero-mean inputs are rejected outright.

use std::error::Error;
use std::f64::consts::SQRT_2;

use firingmap::stimulus::PiecewiseConstant;
use firingmap::{check_well_defined, FiringEngine, Stimulus};

pub fn run() -> Result<(), Box<dyn Error>> {
    let cases: Vec<(&str, Stimulus)> = vec![
        ("1 + 0.5 sin(2πt)", Stimulus::trig(1.0, &[(0.0, 0.5, std::f64::consts::TAU)])?),
        ("sin(√2 t) + sin(2t)", Stimulus::trig(0.0, &[(0.0, 1.0, SQRT_2), (0.0, 1.0, 2.0)])?),
        ("-0.1 + cos t", Stimulus::trig(-0.1, &[(1.0, 0.0, 1.0)])?),
        (
            "square wave 2/0",
            PiecewiseConstant::periodic(vec![0.0, 0.5, 1.0], vec![2.0, 0.0])?.into(),
        ),
    ];
    for (name, f) in cases {
        let verdict = check_well_defined(&f);
        print!("{name:<22} mean {:+.3}  verdict {verdict}", f.mean());
        match FiringEngine::new(f) {
            Ok(engine) => println!("  Φ(0) = {:.6}", engine.phi(0.0)?),
            Err(e) => println!("  ({e})"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
