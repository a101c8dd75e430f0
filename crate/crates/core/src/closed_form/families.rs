//! Named n-qubit families: generalized GHZ, generalized W and the
//! two-excitation Dicke state on four qubits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::bloch_vector;
use crate::overlap::{nearest_product_state, SolverConfig};
use crate::state::PureState;

/// `cos θ |0…0⟩ + sin θ |1…1⟩`.
pub fn ghz_state(theta: f64, n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::QubitCount(n));
    }
    let mut amps = vec![0.0; 1 << n];
    amps[0] = theta.cos();
    amps[(1 << n) - 1] = theta.sin();
    PureState::from_real(n, &amps)
}

/// `g² = (1 + |cos 2θ|)/2`; every Bloch vector has length `|cos 2θ|`.
pub fn ghz_overlap(theta: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::QubitCount(n));
    }
    Ok((1.0 + (2.0 * theta).cos().abs()) / 2.0)
}

/// `c₁|10…0⟩ + c₂|010…0⟩ + … + c_n|0…01⟩`.
pub fn w_state(coeffs: &[f64]) -> Result<PureState> {
    let n = coeffs.len();
    if coeffs.iter().any(|c| !c.is_finite() || *c < 0.0) {
        return Err(Error::InvalidParams(
            "W coefficients must be nonnegative".into(),
        ));
    }
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParams(format!("Σc² = {norm}, expected 1")));
    }
    let mut amps = vec![0.0; 1usize.checked_shl(n as u32).unwrap_or(0)];
    if amps.is_empty() || n > crate::state::MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    for (k, &c) in coeffs.iter().enumerate() {
        amps[1 << (n - 1 - k)] = c;
    }
    PureState::from_real(n, &amps)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WnReport {
    pub coeffs: Vec<f64>,
    pub g_squared: f64,
    pub bloch_lengths: Vec<f64>,
    pub has_zero_bloch: bool,
    pub is_half: bool,
    /// `has_zero_bloch == is_half` on this instance.
    pub correspondence_holds: bool,
}

pub fn wn_overlap(coeffs: &[f64], cfg: &SolverConfig) -> Result<WnReport> {
    let s = w_state(coeffs)?;
    let g_squared = nearest_product_state(&s, cfg)?.g_squared;
    let bloch_lengths = (0..s.n_qubits())
        .map(|q| bloch_vector(&s, q).map(|b| b.length()))
        .collect::<Result<Vec<_>>>()?;
    let has_zero_bloch = bloch_lengths.iter().any(|&b| b <= 1e-8);
    let is_half = (g_squared - 0.5).abs() <= 1e-6;
    Ok(WnReport {
        coeffs: coeffs.to_vec(),
        g_squared,
        bloch_lengths,
        has_zero_bloch,
        is_half,
        correspondence_holds: has_zero_bloch == is_half,
    })
}

/// Equal superposition of the six weight-2 strings on four qubits.
pub fn dicke4_state() -> PureState {
    let amps: Vec<f64> = (0..16u32)
        .map(|i| if i.count_ones() == 2 { 1.0 } else { 0.0 })
        .collect();
    PureState::from_real(4, &amps).expect("six nonzero amplitudes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ghz_formula_values() {
        assert_abs_diff_eq!(
            ghz_overlap(std::f64::consts::FRAC_PI_4, 5).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(ghz_overlap(0.0, 3).unwrap(), 1.0);
        assert_abs_diff_eq!(
            ghz_overlap(std::f64::consts::FRAC_PI_6, 4).unwrap(),
            0.75,
            epsilon = 1e-15
        );
        assert!(ghz_overlap(0.3, 1).is_err());
    }

    #[test]
    fn ghz_bloch_length_is_cos_two_theta() {
        let theta = 0.4;
        let s = ghz_state(theta, 4).unwrap();
        for q in 0..4 {
            assert_abs_diff_eq!(
                bloch_vector(&s, q).unwrap().length(),
                (2.0 * theta).cos().abs(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn w_layout() {
        let s = w_state(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(s, PureState::basis(3, 0b100).unwrap());
        assert!(w_state(&[0.5, 0.5]).is_err());
    }

    #[test]
    fn wn_examples() {
        let cfg = SolverConfig::default();
        let s3 = 1.0 / 3f64.sqrt();
        let r = wn_overlap(&[s3, s3, s3], &cfg).unwrap();
        assert!(!r.has_zero_bloch);
        assert_abs_diff_eq!(r.g_squared, 4.0 / 9.0, epsilon = 1e-9);
        assert!(r.correspondence_holds);

        let r = wn_overlap(&[std::f64::consts::FRAC_1_SQRT_2, 0.5, 0.5], &cfg).unwrap();
        assert!(r.bloch_lengths[0] <= 1e-12);
        assert_abs_diff_eq!(r.g_squared, 0.5, epsilon = 1e-6);
        assert!(r.correspondence_holds);

        let r = wn_overlap(&[1.0, 0.0, 0.0], &cfg).unwrap();
        assert_abs_diff_eq!(r.g_squared, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn dicke_has_zero_bloch_vectors() {
        let s = dicke4_state();
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
        for q in 0..4 {
            assert!(bloch_vector(&s, q).unwrap().length() <= 1e-14);
        }
        let g2 = nearest_product_state(&s, &SolverConfig::default())
            .unwrap()
            .g_squared;
        assert_abs_diff_eq!(g2, 0.375, epsilon = 1e-7);
    }
}
