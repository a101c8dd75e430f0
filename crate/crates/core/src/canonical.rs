//! Numerical reduction of a three-qubit state to the canonical form
//! `a|011⟩ + b|101⟩ + c|110⟩ + d|000⟩ + e^{iγ} h|111⟩`.
//!
//! In that form `|000⟩` is a stationary point of the product overlap: the
//! amplitudes on `|001⟩`, `|010⟩`, `|100⟩` are the overlap gradient and
//! vanish. So the reduction runs the product-overlap solver, rotates each
//! qubit so a local maximum becomes `|000⟩`, and then uses the residual
//! diagonal phase freedom `diag(1, e^{iφ_k})` to make `d, a, b, c` real.
//! The remaining phase on `h` is `γ`; shifting all three `φ_k` by π moves
//! `γ` by π, which places it in `(−π/2, π/2]`. When one of `a, b, c`
//! vanishes a phase is left over and `γ` is set to zero.
//!
//! Among representatives from different local maxima the one with the
//! lexicographically largest `(d, h, a, b, c)` is returned, so `d` is the
//! maximal product overlap.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::overlap::{all_local_maxima, polish, ProductState, SolverConfig};
use crate::state::{apply_local_unitary, CanonicalParams, LocalUnitary, PureState};

/// Residual accepted for a canonical representative.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Amplitudes below this magnitude carry no usable phase.
const PHASE_FLOOR: f64 = 1e-7;

/// Local maxima within this distance of the best are treated as ties.
const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Canonicalization {
    pub params: CanonicalParams,
    /// Maps the input onto `canonical_to_state(params)` up to a global phase.
    pub unitary: LocalUnitary,
    /// Weight on `|001⟩, |010⟩, |100⟩` plus the distance of the `d, a, b, c`
    /// amplitudes from the nonnegative reals.
    pub residual: f64,
}

/// Canonical form with 32 solver restarts.
pub fn canonicalize(s: &PureState) -> Result<Canonicalization> {
    canonicalize_with(
        s,
        &SolverConfig {
            restarts: 32,
            ..SolverConfig::default()
        },
    )
}

pub fn canonicalize_with(s: &PureState, cfg: &SolverConfig) -> Result<Canonicalization> {
    s.require_qubits(3)?;
    let mut traces = all_local_maxima(s, cfg)?;
    let best_g2 = traces.iter().map(|t| t.g_squared).fold(0.0, f64::max);
    traces.retain(|t| t.g_squared >= best_g2 - TIE_TOL);

    let mut chosen: Option<Canonicalization> = None;
    let mut best_residual = f64::INFINITY;
    for mut trace in traces {
        polish(s, &mut trace, 20 * cfg.max_iterations);
        let candidate = reduce_at(s, &trace.product)?;
        best_residual = best_residual.min(candidate.residual);
        if candidate.residual > RESIDUAL_TOL {
            continue;
        }
        let better = match &chosen {
            None => true,
            Some(current) => lexicographically_larger(&candidate.params, &current.params),
        };
        if better {
            chosen = Some(candidate);
        }
    }
    chosen.ok_or(Error::NonConvergence {
        restarts: cfg.restarts + 1,
        residual: best_residual,
    })
}

fn lexicographically_larger(p: &CanonicalParams, q: &CanonicalParams) -> bool {
    let key = |p: &CanonicalParams| [p.d, p.h, p.a, p.b, p.c];
    for (x, y) in key(p).into_iter().zip(key(q)) {
        if x > y + TIE_TOL {
            return true;
        }
        if x < y - TIE_TOL {
            return false;
        }
    }
    false
}

/// Rotates `q` to `|000⟩` and fixes the diagonal phases.
fn reduce_at(s: &PureState, q: &ProductState) -> Result<Canonicalization> {
    // U_k q_k = |0⟩ with U_k ∈ SU(2).
    let rotations: Vec<Matrix2<Complex64>> = q
        .spinors()
        .iter()
        .map(|v| Matrix2::new(v[0].conj(), v[1].conj(), -v[1], v[0]))
        .collect();
    let rotated = apply_local_unitary(s, &LocalUnitary::new(rotations.clone())?)?;
    let amp = |i: usize| rotated.amplitude(i);

    let theta_d = amp(0).arg();
    let rel = |i: usize| amp(i).arg() - theta_d;
    let (ma, mb, mc, mh) = (amp(3).norm(), amp(5).norm(), amp(6).norm(), amp(7).norm());

    // Constraints on (φ_A, φ_B, φ_C): a ← φ_B+φ_C, b ← φ_A+φ_C, c ← φ_A+φ_B,
    // h ← φ_A+φ_B+φ_C.
    let mut rows: Vec<([f64; 3], f64)> = Vec::new();
    for (mag, row, target) in [
        (ma, [0.0, 1.0, 1.0], -rel(3)),
        (mb, [1.0, 0.0, 1.0], -rel(5)),
        (mc, [1.0, 1.0, 0.0], -rel(6)),
    ] {
        if mag > PHASE_FLOOR {
            rows.push((row, target));
        }
    }
    let all_pairs = rows.len() == 3;
    if !all_pairs && mh > PHASE_FLOOR {
        rows.push(([1.0, 1.0, 1.0], -rel(7)));
    }
    let phases = solve_phases(&rows);

    let mut phases = phases;
    let raw = wrap(rel(7) + phases.sum());
    let gamma = if mh <= PHASE_FLOOR || !all_pairs {
        // Either no phase to carry, or the h row was solved exactly.
        0.0
    } else if raw > -std::f64::consts::FRAC_PI_2 && raw <= std::f64::consts::FRAC_PI_2 {
        raw
    } else {
        phases.add_scalar_mut(std::f64::consts::PI);
        wrap(raw + std::f64::consts::PI)
    };

    let global = Complex64::from_polar(1.0, -theta_d);
    let factors: Vec<Matrix2<Complex64>> = rotations
        .iter()
        .zip(phases.iter())
        .enumerate()
        .map(|(k, (u, &phi))| {
            let diag = Matrix2::new(
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::from_polar(1.0, phi),
            );
            // Fold the global phase into qubit A.
            let g = if k == 0 {
                global
            } else {
                Complex64::new(1.0, 0.0)
            };
            diag * u * g
        })
        .collect();
    let unitary = LocalUnitary::new(factors)?;
    let out = apply_local_unitary(s, &unitary)?;

    let residual = [1, 2, 4]
        .iter()
        .map(|&i| out.amplitude(i).norm_sqr())
        .sum::<f64>()
        + [0, 3, 5, 6]
            .iter()
            .map(|&i| (out.amplitude(i) - Complex64::new(out.amplitude(i).norm(), 0.0)).norm())
            .sum::<f64>();

    let mag = |i: usize| out.amplitude(i).norm();
    let params = CanonicalParams::normalized(mag(3), mag(5), mag(6), mag(0), mag(7), gamma)?;
    Ok(Canonicalization {
        params,
        unitary,
        residual,
    })
}

fn wrap(angle: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut a = angle.rem_euclid(tau);
    if a > std::f64::consts::PI {
        a -= tau;
    }
    a
}

/// Solves the phase constraints; unconstrained directions are set to zero.
fn solve_phases(rows: &[([f64; 3], f64)]) -> Vector3<f64> {
    let mut m = Matrix3::zeros();
    let mut rhs = Vector3::zeros();
    for (i, (row, target)) in rows.iter().enumerate() {
        m.set_row(i, &nalgebra::RowVector3::from_row_slice(row));
        rhs[i] = *target;
    }
    // Pad with unit rows that keep the system nonsingular.
    let mut next = rows.len();
    for k in 0..3 {
        if next == 3 {
            break;
        }
        let mut trial = m;
        let mut unit = [0.0; 3];
        unit[k] = 1.0;
        trial.set_row(next, &nalgebra::RowVector3::from_row_slice(&unit));
        let rank = trial.rows(0, next + 1).rank(1e-9);
        if rank == next + 1 {
            m = trial;
            rhs[next] = 0.0;
            next += 1;
        }
    }
    m.lu().solve(&rhs).unwrap_or_else(Vector3::zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariant_set;
    use crate::sampling::{haar_random_state, random_local_unitary};
    use crate::state::canonical_to_state;
    use approx::assert_abs_diff_eq;

    fn check_maps(s: &PureState, c: &Canonicalization) {
        let mapped = apply_local_unitary(s, &c.unitary).unwrap();
        let fid = mapped.fidelity(&canonical_to_state(&c.params)).unwrap();
        assert!(fid >= 1.0 - 1e-8, "fidelity {fid}");
        assert!(c.residual <= RESIDUAL_TOL);
        c.params.validate().unwrap();
    }

    #[test]
    fn ghz_orbit() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let ghz = canonical_to_state(&CanonicalParams::new(0.0, 0.0, 0.0, r, r, 0.0).unwrap());
        let s = apply_local_unitary(&ghz, &random_local_unitary(3, 4)).unwrap();
        let c = canonicalize(&s).unwrap();
        check_maps(&s, &c);
        let p = c.params;
        assert_abs_diff_eq!(p.d, r, epsilon = 1e-6);
        assert_abs_diff_eq!(p.h, r, epsilon = 1e-6);
        for x in [p.a, p.b, p.c] {
            assert_abs_diff_eq!(x, 0.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn product_orbit() {
        let s = apply_local_unitary(
            &PureState::basis(3, 0).unwrap(),
            &random_local_unitary(3, 9),
        )
        .unwrap();
        let c = canonicalize(&s).unwrap();
        check_maps(&s, &c);
        assert_abs_diff_eq!(c.params.d, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn random_states_reduce() {
        for seed in 0..20 {
            let s = haar_random_state(3, seed).unwrap();
            let c = canonicalize(&s).unwrap();
            check_maps(&s, &c);
            let before = invariant_set(&s).unwrap();
            let after = invariant_set(&canonical_to_state(&c.params)).unwrap();
            assert!(before.max_deviation(&after) <= 1e-8);
        }
    }

    #[test]
    fn fixed_point_when_d_is_maximal() {
        let p = CanonicalParams::normalized(0.2, 0.25, 0.15, 0.85, 0.3, 0.6).unwrap();
        let c = canonicalize(&canonical_to_state(&p)).unwrap();
        for (x, y) in [
            (c.params.a, p.a),
            (c.params.b, p.b),
            (c.params.c, p.c),
            (c.params.d, p.d),
            (c.params.h, p.h),
            (c.params.gamma, p.gamma),
        ] {
            assert_abs_diff_eq!(x, y, epsilon = 1e-7);
        }
    }

    #[test]
    fn phase_removed_when_one_pair_amplitude_vanishes() {
        let p = CanonicalParams::normalized(0.2, 0.25, 0.0, 0.85, 0.3, 0.6).unwrap();
        let s = canonical_to_state(&p);
        let c = canonicalize(&s).unwrap();
        check_maps(&s, &c);
        assert_eq!(c.params.gamma, 0.0);
    }

    #[test]
    fn rejects_wrong_qubit_count() {
        assert!(canonicalize(&PureState::basis(2, 0).unwrap()).is_err());
    }
}
