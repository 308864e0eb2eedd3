// ε-almost periods of a quasi-periodic stimulus and of its displacement map.

use std::error::Error;
use std::f64::consts::SQRT_2;

use firingmap::almostperiod::{
    relative_density_gap, scan_displacement_almost_periods, scan_stepanov_almost_periods,
    scan_sup_almost_periods,
};
use firingmap::{AlmostPeriodScan, FiringEngine, ScanOptions, Stimulus, TauRange, Window};

fn summary(name: &str, scan: &AlmostPeriodScan) {
    let shown: Vec<String> = scan
        .accepted
        .iter()
        .filter(|&&t| t > 1.0)
        .take(6)
        .map(|t| format!("{t:.4}"))
        .collect();
    println!(
        "{name:<13} {:>4} accepted, gap {:>7.3}  first: {}",
        scan.accepted.len(),
        relative_density_gap(scan),
        shown.join(" ")
    );
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let f = Stimulus::trig(1.0, &[(0.2, 0.0, 1.0), (0.2, 0.0, SQRT_2)])?;
    let engine = FiringEngine::new(f.clone())?;
    let range = TauRange::new(0.0, 60.0, 0.05)?;
    let w = Window::new(0.0, 30.0, 0.05)?;
    let opts = ScanOptions::default();
    let eps = 0.1;
    summary("sup", &scan_sup_almost_periods(&f, eps, &range, &w, opts)?);
    summary("Stepanov", &scan_stepanov_almost_periods(&f, eps, &range, &w, opts)?);
    summary("displacement", &scan_displacement_almost_periods(&engine, eps, &range, &w, opts)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
