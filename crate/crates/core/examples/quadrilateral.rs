//! States a|100⟩ + b|010⟩ + c|001⟩ + d|111⟩: g is twice the circumradius of
//! the cyclic quadrilateral with sides a, b, c, d.
//!
//! cargo run --example quadrilateral

use geoent::closed_form::{
    balanced_overlap, quadrilateral_nearest, quadrilateral_overlap, sample_feasible_quadrilateral,
    QuadrilateralParams,
};
use geoent::sampling::sub_rng;
use geoent::{nearest_product_state, overlap_with_product, SolverConfig};

fn main() -> geoent::Result<()> {
    let p = QuadrilateralParams::new(0.7, 0.5, 0.4, 0.1f64.sqrt())?;
    let g = quadrilateral_overlap(&p)?;
    let q = quadrilateral_nearest(&p)?;
    println!("sides {:?}", p.sides());
    println!("    area {:.12}, g = 2R = {g:.15}", p.area());
    println!(
        "    overlap of the closed-form product state {:.15}",
        overlap_with_product(&p.state(), &q)?
    );
    println!(
        "    numeric                                  {:.15}",
        nearest_product_state(&p.state(), &SolverConfig::default())?
            .g_squared
            .sqrt()
    );

    // On the balanced slice c² + d² = a² + b² the circumradius formula collapses to 1/√2.
    let balanced = QuadrilateralParams::normalized(0.6, 0.14f64.sqrt(), 0.5, 0.5)?;
    println!(
        "\nbalanced sides: g = {:.15}, simplified formula {:.15}",
        quadrilateral_overlap(&balanced)?,
        balanced_overlap(&balanced)
    );

    let mut rng = sub_rng(1, 0);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let p = sample_feasible_quadrilateral(&mut rng);
        let numeric = nearest_product_state(&p.state(), &SolverConfig::default().with_seed(i))?
            .g_squared
            .sqrt();
        worst = worst.max((quadrilateral_overlap(&p)? - numeric).abs());
    }
    println!("\n200 random feasible quadrilaterals: max |g closed - g numeric| = {worst:.1e}");
    Ok(())
}
