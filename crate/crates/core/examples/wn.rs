//! Generalized W states: a zero Bloch vector goes with g² = 1/2 here too.
//!
//! cargo run --example wn

use geoent::closed_form::wn_overlap;
use geoent::SolverConfig;

fn main() -> geoent::Result<()> {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let r6 = 1.0 / 6f64.sqrt();
    let cases = [
        vec![1.0 / 3f64.sqrt(); 3],
        vec![r2, 0.5, 0.5],
        vec![1.0, 0.0, 0.0],
        vec![0.5; 4],
        vec![r2, r6, r6, r6],
        vec![0.8, 0.36, 0.48],
    ];
    for c in &cases {
        let r = wn_overlap(c, &SolverConfig::default())?;
        let lengths: Vec<String> = r.bloch_lengths.iter().map(|b| format!("{b:.4}")).collect();
        println!(
            "c = {:?}\n    Bloch lengths [{}]  g² = {:.10}  zero Bloch: {:<5}  g² = 1/2: {:<5}",
            c.iter()
                .map(|x| (x * 1e4).round() / 1e4)
                .collect::<Vec<_>>(),
            lengths.join(", "),
            r.g_squared,
            r.has_zero_bloch,
            r.is_half
        );
    }
    Ok(())
}
