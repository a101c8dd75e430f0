//! Exploratory converse: among random states pushed onto g² = 1/2, how small
//! does the smallest Bloch vector get? No verdict is drawn.
//!
//! cargo run --release --example inverse_search [samples]

use geoent::closed_form::inverse_search;
use geoent::SolverConfig;

fn main() -> geoent::Result<()> {
    let samples = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(100);
    let r = inverse_search(samples, 9, &SolverConfig::default().with_restarts(24))?;
    for e in r.entries.iter().filter(|e| e.source != "random") {
        println!(
            "{:<24} g² = {:.12}  min Bloch = {:.1e}",
            e.source, e.g_squared, e.min_bloch
        );
    }
    let landed = r.entries.len() - r.entries.iter().filter(|e| e.source != "random").count();
    println!(
        "{landed} of {samples} random states refined onto |g² - 1/2| ≤ {:.0e}",
        r.window
    );
    if let Some(q) = r.min_bloch_quantiles {
        println!(
            "min(b_A, b_B, b_C): min {:.4}  q25 {:.4}  median {:.4}  q75 {:.4}  max {:.4}",
            q[0], q[1], q[2], q[3], q[4]
        );
    }
    println!(
        "random states with a vanishing Bloch vector: {}",
        r.random_with_zero_bloch
    );
    Ok(())
}
