//! A completely mixed qubit forces g² = 1/2: seeded campaigns over both
//! families of three-qubit states with b_C = 0.
//!
//! cargo run --release --example verify_theorem [samples]

use geoent::closed_form::run_campaign;
use geoent::closed_form::theorem::{theorem_check, DEFAULT_TOLERANCE};
use geoent::{CanonicalParams, SolverConfig, ZeroBlochFamily};

fn main() -> geoent::Result<()> {
    let samples = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(500);
    let cfg = SolverConfig::default();

    // One worked instance per family, shown in full.
    let quad = CanonicalParams::new(0.6, 0.14f64.sqrt(), 0.5, 0.5, 0.0, 0.0)?;
    let hnz = CanonicalParams::new(0.3, 0.4, 0.0, 0.5f64.sqrt(), 0.5, 0.0)?;
    for p in [quad, hnz] {
        let r = theorem_check(&p, 2, &cfg, DEFAULT_TOLERANCE)?;
        println!(
            "{:<13} b_C = {:.1e}  t = {:.1e}  closed form {:.15} ({})  numeric {:.15}",
            r.family,
            r.zero_bloch_length,
            r.t,
            r.closed_form_g_squared,
            r.closed_form_path,
            r.numeric_g_squared
        );
    }

    println!();
    for family in [ZeroBlochFamily::Quadrilateral, ZeroBlochFamily::HNonzero] {
        let r = run_campaign(family, samples, 2024, DEFAULT_TOLERANCE, &cfg)?;
        println!(
            "{:<13} {} samples: max |g²-1/2| = {:.1e}, max |t| = {:.1e}, max zero-mode residual = {:.1e}, failures = {}",
            r.family,
            r.samples,
            r.max_deviation,
            r.max_abs_t,
            r.max_zero_mode_residual,
            r.failures.len()
        );
    }
    Ok(())
}
