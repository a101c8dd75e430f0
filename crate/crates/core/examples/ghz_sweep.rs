//! Generalized GHZ states cos θ|0…0⟩ + sin θ|1…1⟩: numeric g² against (1 + |b|)/2.
//!
//! cargo run --example ghz_sweep

use geoent::closed_form::{ghz_overlap, ghz_state};
use geoent::{bloch_vector, nearest_product_state, SolverConfig};

fn main() -> geoent::Result<()> {
    let cfg = SolverConfig::default();
    println!(" n   θ/π      numeric g²        (1+|b|)/2         |b|");
    for n in 2..=5 {
        for k in 0..=6 {
            let theta = k as f64 * std::f64::consts::PI / 24.0;
            let s = ghz_state(theta, n)?;
            let g2 = nearest_product_state(&s, &cfg)?.g_squared;
            let b = bloch_vector(&s, 0)?.length();
            assert!((g2 - ghz_overlap(theta, n)?).abs() < 1e-8);
            println!(
                "{n:>2}  {:.4}   {g2:.14}  {:.14}  {b:.6}",
                theta / std::f64::consts::PI,
                (1.0 + b) / 2.0
            );
        }
    }
    Ok(())
}
