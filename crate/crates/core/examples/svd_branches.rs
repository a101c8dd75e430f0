//! Stationary points for c = 0, d² = a² + b² + h²: the zero mode, the
//! rejected middle branch and the main branch that reaches g² = 1/2.
//!
//! cargo run --example svd_branches

use geoent::closed_form::svd_branch_solutions;
use geoent::CanonicalParams;

fn main() -> geoent::Result<()> {
    let p = CanonicalParams::new(0.3, 0.4, 0.0, 0.5f64.sqrt(), 0.5, 0.0)?;
    let r = svd_branch_solutions(&p)?;
    println!("a = {}, b = {}, h = {}, d = 1/√2", p.a, p.b, p.h);
    println!("b_A = {:.12}, b_B = {:.12}, μ = {:.12}", r.b_a, r.b_b, r.mu);
    println!("singular values of G: {:?}", r.singular_values);

    let z = &r.zero_mode;
    println!("\nzero mode   x = {:.6?}, y = {:.6?}", z.x, z.y);
    println!(
        "            λ₁ = {:.6}, λ₂ = {:.6}, g² = {:.15}, residual {:.1e}",
        z.lambda1, z.lambda2, z.g_squared, z.residual
    );

    let m = &r.middle_branch;
    println!("\nmiddle      rejected: {}", m.reason);

    let b = &r.main_branch;
    println!("\nmain        x = {:.6?}, y = {:.6?}", b.x, b.y);
    println!(
        "            λ₁ = {:.6} (via μ: {:.6}), λ₂ = {:.6} (via μ: {:.6})",
        b.lambda1, b.lambda1_from_mu, b.lambda2, b.lambda2_from_mu
    );
    println!(
        "            g² = {:.15}, residual {:.1e}",
        b.g_squared, b.residual
    );
    println!("\nmaximum over branches: g² = {:.15}", r.final_g_squared);
    Ok(())
}
