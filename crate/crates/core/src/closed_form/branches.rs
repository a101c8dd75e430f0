//! Stationary points of the overlap for `c = 0`, `γ = 0`,
//! `d² = a² + b² + h²`, where `b_C` vanishes while `h ≠ 0`.
//!
//! On this family
//!
//! ```text
//!     b_A = b_A (sin α, 0, cos α),  tan α = h/a,  b_A = 2a√(h²+a²)
//!     b_B = b_B (sin β, 0, cos β),  tan β = h/b,  b_B = 2b√(h²+b²)
//!     G = U D Vᵀ,  D = diag(2μ, 2ab, 0),  μ = √((h²+a²)(h²+b²))
//! ```
//!
//! with `U`, `V` rotations about the y axis by `α`, `β`. In rotated
//! coordinates `x = U x'`, `y = V y'` the stationarity equations become
//! `D y' + b_A ζ = λ₁ x'`, `D x' + b_B ζ = λ₂ y'` with `ζ = (0, 0, 1)`, and
//! every solution belongs to one of three branches:
//!
//! - zero mode `x' = y' = ζ`, `λ₁ = b_A`, `λ₂ = b_B`, `g₁² = (1 + b_A + b_B)/4`;
//! - middle singular value `λ₁λ₂ = (2ab)²`, which has no unit-vector solution
//!   because `b_A b_B > 4a²b²`;
//! - largest singular value `λ₁λ₂ = 4μ²`, with `x' = (sin α, 0, cos α)`,
//!   `y' = (sin β, 0, cos β)`, `λ₁ = 2(a²+h²)`, `λ₂ = 2(b²+h²)` and `g₂² = 1/2`.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{bloch_vector, correlation_matrix, BlochVector, CorrelationMatrix};
use crate::overlap::{quarter_form, residual_parts};
use crate::state::{canonical_to_state, CanonicalParams};

const CONSTRAINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroModeBranch {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub lambda1: f64,
    pub lambda2: f64,
    pub g_squared: f64,
    /// `1/2 − g₁²`, evaluated without cancellation.
    pub gap_to_half: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MiddleBranch {
    pub nonphysical: bool,
    pub reason: String,
    /// `λ₁λ₂ = (2ab)²` required by the branch.
    pub lambda_product: f64,
    /// `b_A b_B`, which would have to equal `λ₁λ₂ (ζ·x')(ζ·y') ≤ λ₁λ₂`.
    pub bloch_product: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainBranch {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub lambda1: f64,
    pub lambda2: f64,
    /// `λ₁, λ₂` from `2μ √((b_A² + 4μ²)/(b_B² + 4μ²))` and its mirror.
    pub lambda1_from_mu: f64,
    pub lambda2_from_mu: f64,
    pub g_squared: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchReport {
    pub b_a: f64,
    pub b_b: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub singular_values: [f64; 3],
    pub zero_mode: ZeroModeBranch,
    pub middle_branch: MiddleBranch,
    pub main_branch: MainBranch,
    pub final_g_squared: f64,
}

fn rotation_y(angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

fn check_family(p: &CanonicalParams) -> Result<()> {
    p.validate()?;
    if p.c.abs() > CONSTRAINT_TOL || p.gamma.abs() > CONSTRAINT_TOL {
        return Err(Error::InvalidParams(format!(
            "branch solutions need c = 0 and γ = 0 (c = {}, γ = {})",
            p.c, p.gamma
        )));
    }
    let gap = p.d * p.d - p.a * p.a - p.b * p.b - p.h * p.h;
    if gap.abs() > CONSTRAINT_TOL {
        return Err(Error::InvalidParams(format!(
            "branch solutions need d² = a² + b² + h² (off by {gap:.3e})"
        )));
    }
    Ok(())
}

/// Closed-form factors `(U, D, V)` with `G = U D Vᵀ`.
pub fn svd_factors(p: &CanonicalParams) -> Result<(Matrix3<f64>, Vector3<f64>, Matrix3<f64>)> {
    check_family(p)?;
    let CanonicalParams { a, b, h, .. } = *p;
    let mu = ((h * h + a * a) * (h * h + b * b)).sqrt();
    Ok((
        rotation_y(h.atan2(a)),
        Vector3::new(2.0 * mu, 2.0 * a * b, 0.0),
        rotation_y(h.atan2(b)),
    ))
}

pub fn svd_branch_solutions(p: &CanonicalParams) -> Result<BranchReport> {
    let (u, sv, v) = svd_factors(p)?;
    let CanonicalParams { a, b, h, .. } = *p;
    let state = canonical_to_state(p);
    let b_a_vec: BlochVector = bloch_vector(&state, 0)?;
    let b_b_vec: BlochVector = bloch_vector(&state, 1)?;
    let g: CorrelationMatrix = correlation_matrix(&state, 0, 1)?;

    let b_a = 2.0 * a * (h * h + a * a).sqrt();
    let b_b = 2.0 * b * (h * h + b * b).sqrt();
    let mu = sv[0] / 2.0;
    let (alpha, beta) = (h.atan2(a), h.atan2(b));
    let zeta = Vector3::z();

    // With 2(a² + b² + h²) = 1, 1 − b_A − b_B = (√(a²+h²) − a)² + (√(b²+h²) − b)²,
    // and √(a²+h²) − a = h²/(√(a²+h²) + a). The direct form 1/2 − g₁² loses
    // everything to cancellation once h ≲ 1e-4, since the gap is O(h⁴).
    let lift = |s: f64| h * h / ((h * h + s * s).sqrt() + s);
    let gap_to_half = 0.25 * (lift(a).powi(2) + lift(b).powi(2));

    let x0 = u * zeta;
    let y0 = v * zeta;
    let zero_mode = ZeroModeBranch {
        x: x0.into(),
        y: y0.into(),
        lambda1: b_a,
        lambda2: b_b,
        g_squared: 0.25 * (1.0 + b_a + b_b),
        gap_to_half,
        residual: residual_parts(&x0, &y0, &b_a_vec, &b_b_vec, &g, b_a, b_b),
    };

    let lambda_product = (2.0 * a * b).powi(2);
    let bloch_product = b_a * b_b;
    let middle_branch = if bloch_product > lambda_product {
        MiddleBranch {
            nonphysical: true,
            reason: format!(
                "b_A b_B = {bloch_product:.6e} exceeds λ₁λ₂ = (2ab)² = {lambda_product:.6e} while (ζ·x')(ζ·y') ≤ 1"
            ),
            lambda_product,
            bloch_product,
        }
    } else {
        MiddleBranch {
            nonphysical: true,
            reason: "middle singular value 2ab vanishes; the branch merges with the zero mode"
                .into(),
            lambda_product,
            bloch_product,
        }
    };

    let x_rot = Vector3::new(alpha.sin(), 0.0, alpha.cos());
    let y_rot = Vector3::new(beta.sin(), 0.0, beta.cos());
    let x1 = u * x_rot;
    let y1 = v * y_rot;
    let lambda1 = 2.0 * (a * a + h * h);
    let lambda2 = 2.0 * (b * b + h * h);
    let four_mu2 = 4.0 * mu * mu;
    let main_branch = MainBranch {
        x: x1.into(),
        y: y1.into(),
        lambda1,
        lambda2,
        lambda1_from_mu: 2.0 * mu * ((b_a * b_a + four_mu2) / (b_b * b_b + four_mu2)).sqrt(),
        lambda2_from_mu: 2.0 * mu * ((b_b * b_b + four_mu2) / (b_a * b_a + four_mu2)).sqrt(),
        g_squared: quarter_form(&x1, &y1, &b_a_vec, &b_b_vec, &g)?,
        residual: residual_parts(&x1, &y1, &b_a_vec, &b_b_vec, &g, lambda1, lambda2),
    };

    let final_g_squared = zero_mode.g_squared.max(main_branch.g_squared);
    Ok(BranchReport {
        b_a,
        b_b,
        mu,
        alpha,
        beta,
        singular_values: sv.into(),
        zero_mode,
        middle_branch,
        main_branch,
        final_g_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample() -> CanonicalParams {
        CanonicalParams::new(0.3, 0.4, 0.0, 0.5f64.sqrt(), 0.5, 0.0).unwrap()
    }

    #[test]
    fn worked_example() {
        let r = svd_branch_solutions(&sample()).unwrap();
        assert_abs_diff_eq!(r.main_branch.lambda1, 0.68, epsilon = 1e-14);
        assert_abs_diff_eq!(r.main_branch.lambda2, 0.82, epsilon = 1e-14);
        assert_abs_diff_eq!(r.main_branch.lambda1_from_mu, 0.68, epsilon = 1e-12);
        assert_abs_diff_eq!(r.main_branch.lambda2_from_mu, 0.82, epsilon = 1e-12);
        assert_abs_diff_eq!(r.b_a, 0.349857113690718, epsilon = 1e-12);
        assert_abs_diff_eq!(r.b_b, 0.5122499389946279, epsilon = 1e-12);
        assert_abs_diff_eq!(r.zero_mode.g_squared, 0.46552676317133646, epsilon = 1e-12);
        assert_abs_diff_eq!(
            r.zero_mode.gap_to_half,
            0.5 - 0.46552676317133646,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(r.main_branch.g_squared, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.final_g_squared, 0.5, epsilon = 1e-12);
        assert!(r.middle_branch.nonphysical);
        assert!(r.middle_branch.bloch_product > r.middle_branch.lambda_product);
        assert!(r.zero_mode.residual <= 1e-12);
        assert!(r.main_branch.residual <= 1e-12);
    }

    #[test]
    fn ghz_branches() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r =
            svd_branch_solutions(&CanonicalParams::new(0.0, 0.0, 0.0, s, s, 0.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.zero_mode.g_squared, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(r.main_branch.g_squared, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(r.final_g_squared, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn factors_reproduce_g() {
        let p = sample();
        let (u, sv, v) = svd_factors(&p).unwrap();
        let g = correlation_matrix(&canonical_to_state(&p), 0, 1).unwrap();
        let rebuilt = u * Matrix3::from_diagonal(&sv) * v.transpose();
        assert_abs_diff_eq!(rebuilt, g.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_mode_gap_survives_tiny_h() {
        let h: f64 = 1e-5;
        let a = 0.6 * (0.5 - h * h).sqrt();
        let b = 0.8 * (0.5 - h * h).sqrt();
        let p = CanonicalParams::new(a, b, 0.0, 0.5f64.sqrt(), h, 0.0).unwrap();
        let r = svd_branch_solutions(&p).unwrap();
        // (h⁴/16)(1/a² + 1/b²) to leading order.
        let leading = h.powi(4) / 16.0 * (1.0 / (a * a) + 1.0 / (b * b));
        assert!(r.zero_mode.gap_to_half > 0.0);
        assert_abs_diff_eq!(r.zero_mode.gap_to_half / leading, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn rejects_off_family() {
        let p = CanonicalParams::normalized(0.3, 0.4, 0.1, 0.7, 0.5, 0.0).unwrap();
        assert!(matches!(
            svd_branch_solutions(&p),
            Err(Error::InvalidParams(_))
        ));
    }
}
