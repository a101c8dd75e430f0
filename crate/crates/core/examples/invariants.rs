//! Local-unitary invariants of a few three-qubit states, each computed two ways.
//!
//! cargo run --example invariants

use geoent::{
    apply_local_unitary, canonical_to_state, invariant_set, random_local_unitary, sextic_t_bloch,
    sextic_t_trace, three_tangle, three_tangle_canonical, CanonicalParams,
};

fn main() -> geoent::Result<()> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let s3 = 1.0 / 3f64.sqrt();
    let states = [
        ("GHZ", CanonicalParams::new(0.0, 0.0, 0.0, r, r, 0.0)?),
        ("W", CanonicalParams::new(s3, s3, s3, 0.0, 0.0, 0.0)?),
        (
            "generic",
            CanonicalParams::normalized(0.3, 0.4, 0.2, 0.7, 0.5, 0.4)?,
        ),
    ];

    println!(
        "{:<8} {:>10} {:>10} {:>10} {:>12} {:>10}",
        "state", "b_A", "b_B", "b_C", "t", "tau"
    );
    for (name, p) in &states {
        let s = canonical_to_state(p);
        let inv = invariant_set(&s)?;
        println!(
            "{name:<8} {:>10.6} {:>10.6} {:>10.6} {:>12.3e} {:>10.6}",
            inv.b_a, inv.b_b, inv.b_c, inv.t, inv.tau
        );
        // The second formula for each quantity has to agree with the first.
        let dt = (sextic_t_trace(&s)? - sextic_t_bloch(&s)?).abs();
        let dtau = (three_tangle(&s)? - three_tangle_canonical(p)).abs();
        println!(
            "         |t_trace - t_bloch| = {dt:.1e}, |tau_hyperdet - tau_params| = {dtau:.1e}"
        );
    }

    // Invariance under a random local unitary.
    let p = states[2].1;
    let s = canonical_to_state(&p);
    let moved = apply_local_unitary(&s, &random_local_unitary(3, 7))?;
    let drift = invariant_set(&s)?.max_deviation(&invariant_set(&moved)?);
    println!("\ngeneric state after a random local unitary: max invariant drift {drift:.1e}");
    Ok(())
}
