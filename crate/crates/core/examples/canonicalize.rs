//! Reduces an arbitrary three-qubit state to a|011⟩ + b|101⟩ + c|110⟩ + d|000⟩ + e^{iγ}h|111⟩.
//!
//! cargo run --example canonicalize

use geoent::{
    apply_local_unitary, canonical_to_state, canonicalize, haar_random_state, invariant_set,
    random_local_unitary,
};

fn main() -> geoent::Result<()> {
    for seed in [1, 2, 3] {
        let s = haar_random_state(3, seed)?;
        let c = canonicalize(&s)?;
        let p = c.params;
        println!(
            "seed {seed}: a={:.6} b={:.6} c={:.6} d={:.6} h={:.6} γ={:+.6}  residual {:.1e}",
            p.a, p.b, p.c, p.d, p.h, p.gamma, c.residual
        );

        // The returned unitary maps the input onto the canonical state up to a phase.
        let fidelity = apply_local_unitary(&s, &c.unitary)?.fidelity(&canonical_to_state(&p))?;
        let drift = invariant_set(&s)?.max_deviation(&invariant_set(&canonical_to_state(&p))?);
        println!(
            "        fidelity with canonical state {fidelity:.15}, invariant drift {drift:.1e}"
        );

        // Any point of the orbit lands on the same parameters.
        let other = apply_local_unitary(&s, &random_local_unitary(3, 100 + seed))?;
        let q = canonicalize(&other)?.params;
        let gap = [
            p.a - q.a,
            p.b - q.b,
            p.c - q.c,
            p.d - q.d,
            p.h - q.h,
            p.gamma.abs() - q.gamma.abs(),
        ]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
        println!("        same orbit, different point: max parameter gap {gap:.1e}");
    }
    Ok(())
}
