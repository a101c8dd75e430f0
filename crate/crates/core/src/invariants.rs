//! Bloch vectors, the two-qubit correlation matrix and the five continuous
//! local-unitary invariants `(b_A, b_B, b_C, t, τ)` of three-qubit states.
//!
//! The sextic invariant and the three-tangle each have two independent
//! formulas here:
//!
//! - `t = 3 tr[ρ_AB (ρ_A ⊗ ρ_B)] − tr ρ_A³ − tr ρ_B³ − 1/4` and
//!   `t = (3/4) b_A · (G b_B)`;
//! - `τ` from the degree-4 hyperdeterminant of the amplitude tensor and
//!   `τ = 4d √((dh² − 4abc)² + 16abcd h² cos²γ)` on canonical parameters.
//!
//! Pauli matrices are the standard ones, `σ_y = [[0, −i], [i, 0]]`.

use nalgebra::{Matrix3, Matrix4, Vector3};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{partial_trace_pair, partial_trace_single, CanonicalParams, PureState};

const CROSS_CHECK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub Vector3<f64>);

impl BlochVector {
    pub fn length(&self) -> f64 {
        self.0.norm()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }
}

/// `G_ij = tr(ρ_{q1 q2} σ_i ⊗ σ_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix(pub Matrix3<f64>);

impl CorrelationMatrix {
    /// Singular values in descending order.
    pub fn singular_values(&self) -> [f64; 3] {
        let mut sv: Vec<f64> = self.0.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        [sv[0], sv[1], sv[2]]
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let m = &self.0;
        [
            [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
            [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
            [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantSet {
    #[serde(rename = "b_A")]
    pub b_a: f64,
    #[serde(rename = "b_B")]
    pub b_b: f64,
    #[serde(rename = "b_C")]
    pub b_c: f64,
    pub t: f64,
    pub tau: f64,
}

impl InvariantSet {
    pub fn as_array(&self) -> [f64; 5] {
        [self.b_a, self.b_b, self.b_c, self.t, self.tau]
    }

    /// Largest componentwise difference.
    pub fn max_deviation(&self, other: &InvariantSet) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn pauli(i: usize) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let im = Complex64::new(0.0, 1.0);
    match i {
        0 => [[z, one], [one, z]],
        1 => [[z, -im], [im, z]],
        _ => [[one, z], [z, -one]],
    }
}

/// `(tr ρσ_x, tr ρσ_y, tr ρσ_z)` for qubit `q`.
pub fn bloch_vector(s: &PureState, q: usize) -> Result<BlochVector> {
    let rho = partial_trace_single(s, q)?;
    let coherence = rho.get(0, 1);
    Ok(BlochVector(Vector3::new(
        2.0 * coherence.re,
        -2.0 * coherence.im,
        rho.get(0, 0).re - rho.get(1, 1).re,
    )))
}

pub fn correlation_matrix(s: &PureState, q1: usize, q2: usize) -> Result<CorrelationMatrix> {
    let rho = partial_trace_pair(s, q1, q2)?;
    let mut g = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let (si, sj) = (pauli(i), pauli(j));
            // tr(ρ (σ_i ⊗ σ_j)) = Σ ρ[(a,b),(c,d)] σ_i[c][a] σ_j[d][b]
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..4 {
                for c in 0..4 {
                    acc += rho.get(r, c) * si[c >> 1][r >> 1] * sj[c & 1][r & 1];
                }
            }
            g[(i, j)] = acc.re;
        }
    }
    Ok(CorrelationMatrix(g))
}

fn to_matrix2(rho: &crate::state::DensityMatrix) -> nalgebra::Matrix2<Complex64> {
    nalgebra::Matrix2::new(rho.get(0, 0), rho.get(0, 1), rho.get(1, 0), rho.get(1, 1))
}

/// Sextic invariant from traces of reduced density matrices.
pub fn sextic_t_trace(s: &PureState) -> Result<f64> {
    s.require_qubits(3)?;
    let ra = to_matrix2(&partial_trace_single(s, 0)?);
    let rb = to_matrix2(&partial_trace_single(s, 1)?);
    let rab = partial_trace_pair(s, 0, 1)?;
    let rab = Matrix4::from_fn(|i, j| rab.get(i, j));
    let kron = ra.kronecker(&rb);
    let mixed = (rab * Matrix4::from_fn(|i, j| kron[(i, j)])).trace().re;
    let cube = |m: &nalgebra::Matrix2<Complex64>| (m * m * m).trace().re;
    Ok(3.0 * mixed - cube(&ra) - cube(&rb) - 0.25)
}

/// Sextic invariant from Bloch vectors: `(3/4) b_A · (G b_B)`.
pub fn sextic_t_bloch(s: &PureState) -> Result<f64> {
    s.require_qubits(3)?;
    let b_a = bloch_vector(s, 0)?;
    let b_b = bloch_vector(s, 1)?;
    let g = correlation_matrix(s, 0, 1)?;
    Ok(0.75 * b_a.0.dot(&(g.0 * b_b.0)))
}

/// Three-tangle `τ = 4 |d₁ − 2d₂ + 4d₃|`, normalized so the GHZ state gives 1.
pub fn three_tangle(s: &PureState) -> Result<f64> {
    s.require_qubits(3)?;
    let a = |i: usize| s.amplitude(i);
    let sq = |z: Complex64| z * z;
    let d1 = sq(a(0)) * sq(a(7)) + sq(a(1)) * sq(a(6)) + sq(a(2)) * sq(a(5)) + sq(a(4)) * sq(a(3));
    let d2 = a(0) * a(7) * a(3) * a(4)
        + a(0) * a(7) * a(5) * a(2)
        + a(0) * a(7) * a(6) * a(1)
        + a(3) * a(4) * a(5) * a(2)
        + a(3) * a(4) * a(6) * a(1)
        + a(5) * a(2) * a(6) * a(1);
    let d3 = a(0) * a(6) * a(5) * a(3) + a(7) * a(1) * a(2) * a(4);
    Ok(4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm())
}

/// Three-tangle evaluated directly on canonical parameters.
pub fn three_tangle_canonical(p: &CanonicalParams) -> f64 {
    let CanonicalParams {
        a,
        b,
        c,
        d,
        h,
        gamma,
    } = *p;
    let abc = a * b * c;
    let cos = gamma.cos();
    4.0 * d * ((d * h * h - 4.0 * abc).powi(2) + 16.0 * abc * d * h * h * cos * cos).sqrt()
}

/// `(b_A, b_B, b_C, t, τ)` with the trace-form `t` and hyperdeterminant `τ`.
///
/// In debug builds the two `t` formulas are asserted to agree; release
/// callers can use [`check_invariant_consistency`].
pub fn invariant_set(s: &PureState) -> Result<InvariantSet> {
    s.require_qubits(3)?;
    let t = sextic_t_trace(s)?;
    debug_assert!(
        (t - sextic_t_bloch(s)?).abs() <= CROSS_CHECK_TOL,
        "sextic invariant formulas disagree"
    );
    Ok(InvariantSet {
        b_a: bloch_vector(s, 0)?.length(),
        b_b: bloch_vector(s, 1)?.length(),
        b_c: bloch_vector(s, 2)?.length(),
        t,
        tau: three_tangle(s)?,
    })
}

/// Verifies the trace and Bloch forms of `t` agree within 1e-10.
pub fn check_invariant_consistency(s: &PureState) -> Result<()> {
    let (trace, bloch) = (sextic_t_trace(s)?, sextic_t_bloch(s)?);
    if (trace - bloch).abs() > CROSS_CHECK_TOL {
        return Err(Error::Internal(format!(
            "sextic invariant: trace form {trace} vs Bloch form {bloch}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ghz() -> PureState {
        PureState::from_real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap()
    }

    fn w() -> PureState {
        PureState::from_real(3, &[0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap()
    }

    fn h_nonzero() -> CanonicalParams {
        CanonicalParams::new(0.3, 0.4, 0.0, 0.5f64.sqrt(), 0.5, 0.0).unwrap()
    }

    fn assert_vec(v: &BlochVector, want: [f64; 3], eps: f64) {
        for (x, y) in v.as_array().iter().zip(want) {
            assert_abs_diff_eq!(*x, y, epsilon = eps);
        }
    }

    #[test]
    fn bloch_examples() {
        assert_vec(
            &bloch_vector(&PureState::basis(3, 0).unwrap(), 0).unwrap(),
            [0.0, 0.0, 1.0],
            0.0,
        );
        assert_vec(
            &bloch_vector(&PureState::basis(3, 3).unwrap(), 1).unwrap(),
            [0.0, 0.0, -1.0],
            0.0,
        );
        let s = crate::state::canonical_to_state(&h_nonzero());
        assert_vec(&bloch_vector(&s, 0).unwrap(), [0.3, 0.0, 0.18], 1e-15);
        assert!(bloch_vector(&s, 3).is_err());
    }

    #[test]
    fn bloch_components_match_canonical_closed_form() {
        let p = CanonicalParams::normalized(0.3, 0.5, 0.2, 0.6, 0.4, 0.7).unwrap();
        let s = crate::state::canonical_to_state(&p);
        let CanonicalParams {
            a,
            b,
            c,
            d,
            h,
            gamma,
        } = p;
        let (cg, sg) = (gamma.cos(), gamma.sin());
        let want = [
            [
                2.0 * h * a * cg,
                2.0 * h * a * sg,
                d * d + a * a - b * b - c * c - h * h,
            ],
            [
                2.0 * h * b * cg,
                2.0 * h * b * sg,
                d * d + b * b - a * a - c * c - h * h,
            ],
            [
                2.0 * h * c * cg,
                2.0 * h * c * sg,
                d * d + c * c - b * b - a * a - h * h,
            ],
        ];
        for (q, w) in want.into_iter().enumerate() {
            assert_vec(&bloch_vector(&s, q).unwrap(), w, 1e-14);
        }
    }

    #[test]
    fn correlation_examples() {
        let g = correlation_matrix(&PureState::basis(2, 0).unwrap(), 0, 1).unwrap();
        assert_eq!(g.0, Matrix3::from_diagonal(&Vector3::new(0.0, 0.0, 1.0)));
        let g = correlation_matrix(&ghz(), 0, 1).unwrap();
        assert_abs_diff_eq!(
            g.0,
            Matrix3::from_diagonal(&Vector3::new(0.0, 0.0, 1.0)),
            epsilon = 1e-15
        );
        assert!(correlation_matrix(&ghz(), 2, 2).is_err());
    }

    #[test]
    fn correlation_matches_canonical_closed_form() {
        let p = CanonicalParams::normalized(0.3, 0.5, 0.2, 0.6, 0.4, 0.7).unwrap();
        let CanonicalParams {
            a,
            b,
            c,
            d,
            h,
            gamma,
        } = p;
        let (cg, sg) = (gamma.cos(), gamma.sin());
        let want = Matrix3::new(
            2.0 * a * b + 2.0 * c * d,
            0.0,
            -2.0 * h * a * cg,
            0.0,
            2.0 * a * b - 2.0 * c * d,
            -2.0 * h * a * sg,
            -2.0 * h * b * cg,
            -2.0 * h * b * sg,
            d * d - a * a - b * b + c * c + h * h,
        );
        let g = correlation_matrix(&crate::state::canonical_to_state(&p), 0, 1).unwrap();
        assert_abs_diff_eq!(g.0, want, epsilon = 1e-12);

        let p = CanonicalParams::new(0.6, 0.14f64.sqrt(), 0.5, 0.5, 0.0, 0.0).unwrap();
        let CanonicalParams { a, b, c, d, .. } = p;
        let g = correlation_matrix(&crate::state::canonical_to_state(&p), 0, 1).unwrap();
        let want = Matrix3::from_diagonal(&Vector3::new(
            2.0 * a * b + 2.0 * c * d,
            2.0 * a * b - 2.0 * c * d,
            d * d - a * a - b * b + c * c,
        ));
        assert_abs_diff_eq!(g.0, want, epsilon = 1e-12);
    }

    #[test]
    fn sextic_examples() {
        let prod = PureState::basis(3, 0).unwrap();
        assert_abs_diff_eq!(sextic_t_trace(&prod).unwrap(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(sextic_t_bloch(&prod).unwrap(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(sextic_t_trace(&ghz()).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sextic_t_bloch(&ghz()).unwrap(), 0.0, epsilon = 1e-15);
        let s = crate::state::canonical_to_state(&h_nonzero());
        assert_abs_diff_eq!(sextic_t_trace(&s).unwrap(), 0.0, epsilon = 1e-12);
        assert!(sextic_t_trace(&PureState::basis(2, 0).unwrap()).is_err());
    }

    #[test]
    fn tangle_examples() {
        assert_abs_diff_eq!(three_tangle(&ghz()).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(three_tangle(&w()).unwrap(), 0.0, epsilon = 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let ghz_p = CanonicalParams::new(0.0, 0.0, 0.0, r, r, 0.0).unwrap();
        assert_abs_diff_eq!(three_tangle_canonical(&ghz_p), 1.0, epsilon = 1e-15);

        let quad = CanonicalParams::new(0.6, 0.14f64.sqrt(), 0.5, 0.5, 0.0, 0.0).unwrap();
        let want = 16.0 * quad.a * quad.b * quad.c * quad.d;
        assert_abs_diff_eq!(three_tangle_canonical(&quad), want, epsilon = 1e-14);
        assert_abs_diff_eq!(
            three_tangle(&crate::state::canonical_to_state(&quad)).unwrap(),
            want,
            epsilon = 1e-14
        );

        // c = 0: 4 d² h² = 4 · 0.5 · 0.25
        let p = h_nonzero();
        assert_abs_diff_eq!(three_tangle_canonical(&p), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(
            three_tangle(&crate::state::canonical_to_state(&p)).unwrap(),
            0.5,
            epsilon = 1e-14
        );
    }

    #[test]
    fn invariant_set_examples() {
        let inv = invariant_set(&ghz()).unwrap();
        for (x, y) in inv.as_array().iter().zip([0.0, 0.0, 0.0, 0.0, 1.0]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-14);
        }
        let inv = invariant_set(&PureState::basis(3, 0).unwrap()).unwrap();
        assert_eq!(inv.as_array(), [1.0, 1.0, 1.0, 0.75, 0.0]);

        let inv = invariant_set(&w()).unwrap();
        for b in [inv.b_a, inv.b_b, inv.b_c] {
            assert_abs_diff_eq!(b, 1.0 / 3.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(inv.tau, 0.0);
        assert_abs_diff_eq!(inv.t, sextic_t_bloch(&w()).unwrap(), epsilon = 1e-14);
        check_invariant_consistency(&w()).unwrap();
    }

    #[test]
    fn invariants_even_in_gamma() {
        let p = CanonicalParams::normalized(0.3, 0.5, 0.2, 0.6, 0.4, 0.9).unwrap();
        let plus = invariant_set(&crate::state::canonical_to_state(&p)).unwrap();
        let minus = invariant_set(&crate::state::canonical_to_state(&p.with_gamma(-0.9))).unwrap();
        assert!(plus.max_deviation(&minus) <= 1e-12);
    }
}
