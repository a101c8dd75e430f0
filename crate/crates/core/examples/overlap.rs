//! Maximal product overlap g² and the geometric measure E_g = -ln g².
//!
//! cargo run --example overlap

use geoent::closed_form::{dicke4_state, ghz_state};
use geoent::{haar_random_state, nearest_product_state, PureState, SolverConfig};

fn report(name: &str, s: &PureState, cfg: &SolverConfig) -> geoent::Result<()> {
    let r = nearest_product_state(s, cfg)?;
    println!(
        "{name:<14} n={}  g² = {:.12}  E_g = {:.10}  converged = {}",
        s.n_qubits(),
        r.g_squared,
        r.geometric_measure()?,
        r.converged
    );
    for k in 0..s.n_qubits() {
        let b = r.product.bloch(k);
        println!(
            "    qubit {k}: bloch ({:+.6}, {:+.6}, {:+.6})",
            b.x, b.y, b.z
        );
    }
    if let Some((l1, l2)) = r.lagrange {
        println!(
            "    λ₁ = {l1:.10}, λ₂ = {l2:.10}, residual = {:.1e}",
            r.stationarity_residual
        );
    }
    Ok(())
}

fn main() -> geoent::Result<()> {
    let cfg = SolverConfig::default();
    report("GHZ", &ghz_state(std::f64::consts::FRAC_PI_4, 3)?, &cfg)?;
    report(
        "W",
        &PureState::from_real(
            3,
            &[0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0].map(|x| x / 3f64.sqrt()),
        )?,
        &cfg,
    )?;
    report("Dicke(4,2)", &dicke4_state(), &cfg)?;
    report("Haar, seed 11", &haar_random_state(3, 11)?, &cfg)?;
    report("Haar 5q", &haar_random_state(5, 11)?, &cfg)?;
    Ok(())
}
