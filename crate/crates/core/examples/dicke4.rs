//! The four-qubit Dicke state: every Bloch vector vanishes, yet g² = 3/8.
//! The three-qubit statement does not carry over to four qubits.
//!
//! cargo run --example dicke4

use geoent::closed_form::dicke4_state;
use geoent::{bloch_vector, nearest_product_state, SolverConfig};

fn main() -> geoent::Result<()> {
    let s = dicke4_state();
    for q in 0..4 {
        println!("|b_{q}| = {:.1e}", bloch_vector(&s, q)?.length());
    }
    let r = nearest_product_state(&s, &SolverConfig::default())?;
    println!(
        "g² = {:.12} (3/8 = 0.375), E_g = {:.10}",
        r.g_squared,
        r.geometric_measure()?
    );
    for k in 0..4 {
        let b = r.product.bloch(k);
        println!(
            "    nearest product, qubit {k}: polar angle {:.6} rad",
            b.z.acos()
        );
    }
    Ok(())
}
