//! Dense pure states of a few qubits.
//!
//! Amplitude index `i` is read as an `n`-bit string with qubit 0 (qubit A)
//! as the most significant bit, so for three qubits `|011⟩` is index 3.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::overlap::ProductState;

pub const MAX_QUBITS: usize = 8;

/// Tolerance on the norm of a constructed state.
pub const NORM_TOL: f64 = 1e-12;

const UNITARY_TOL: f64 = 1e-10;

/// Bit mask selecting `qubit` in an amplitude index.
#[inline]
pub(crate) fn qubit_mask(n_qubits: usize, qubit: usize) -> usize {
    1 << (n_qubits - 1 - qubit)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// Result of [`make_state`]: the normalized state and the factor that was
/// applied to the raw amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub state: PureState,
    pub factor: f64,
}

/// Normalizes `amplitudes` into an `n`-qubit state.
pub fn make_state(n: usize, amplitudes: Vec<Complex64>) -> Result<Normalized> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    let expected = 1usize << n;
    if amplitudes.len() != expected {
        return Err(Error::LengthMismatch {
            n_qubits: n,
            expected,
            got: amplitudes.len(),
        });
    }
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroState);
    }
    let factor = 1.0 / norm;
    let amplitudes = amplitudes.into_iter().map(|a| a * factor).collect();
    Ok(Normalized {
        state: PureState {
            n_qubits: n,
            amplitudes,
        },
        factor,
    })
}

impl PureState {
    /// Builds a state from amplitudes, normalizing them.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        make_state(n, amplitudes).map(|m| m.state)
    }

    pub fn from_real(n: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            n,
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        let slot = amplitudes.get_mut(index).ok_or(Error::Domain(format!(
            "basis index {index} out of range for {n} qubits"
        )))?;
        *slot = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits: n,
            amplitudes,
        })
    }

    /// Tensor product of single-qubit spinors, qubit 0 first.
    pub fn product(spinors: &ProductState) -> Self {
        let n = spinors.n_qubits();
        let amplitudes = (0..1usize << n)
            .map(|i| {
                (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| {
                    let bit = usize::from(i & qubit_mask(n, k) != 0);
                    acc * spinors.spinor(k)[bit]
                })
            })
            .collect();
        Self {
            n_qubits: n,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitCountMismatch {
                expected: self.n_qubits,
                got: other.n_qubits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        self.inner(other).map(|z| z.norm_sqr())
    }

    /// Relabels qubits: qubit `k` of the result is qubit `perm[k]` of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        if perm.len() != n {
            return Err(Error::QubitCountMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n {
                return Err(Error::QubitIndex {
                    index: p,
                    n_qubits: n,
                });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::RepeatedQubit(p));
            }
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (j, slot) in amplitudes.iter_mut().enumerate() {
            let mut src = 0;
            for (k, &p) in perm.iter().enumerate() {
                if j & qubit_mask(n, k) != 0 {
                    src |= qubit_mask(n, p);
                }
            }
            *slot = self.amplitudes[src];
        }
        Ok(Self {
            n_qubits: n,
            amplitudes,
        })
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            Err(Error::QubitIndex {
                index: q,
                n_qubits: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_qubits(&self, n: usize) -> Result<()> {
        if self.n_qubits != n {
            Err(Error::QubitCountMismatch {
                expected: n,
                got: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }
}

/// Parameters of the three-qubit canonical form
/// `a|011⟩ + b|101⟩ + c|110⟩ + d|000⟩ + e^{iγ} h|111⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub h: f64,
    pub gamma: f64,
}

impl CanonicalParams {
    /// Validates nonnegativity, normalization within 1e-12 and
    /// `γ ∈ (−π/2, π/2]`.
    pub fn new(a: f64, b: f64, c: f64, d: f64, h: f64, gamma: f64) -> Result<Self> {
        let p = Self {
            a,
            b,
            c,
            d,
            h,
            gamma,
        };
        p.validate()?;
        Ok(p)
    }

    /// Rescales the five amplitudes to unit norm before validating.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64, h: f64, gamma: f64) -> Result<Self> {
        let n = (a * a + b * b + c * c + d * d + h * h).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroState);
        }
        Self::new(a / n, b / n, c / n, d / n, h / n, gamma)
    }

    pub fn validate(&self) -> Result<()> {
        let amps = [self.a, self.b, self.c, self.d, self.h];
        if amps.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidParams(format!(
                "amplitudes must be finite and nonnegative: {amps:?}"
            )));
        }
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!(
                "a²+b²+c²+d²+h² = {norm}, expected 1"
            )));
        }
        let half_pi = std::f64::consts::FRAC_PI_2;
        if !(self.gamma > -half_pi && self.gamma <= half_pi) {
            return Err(Error::InvalidParams(format!(
                "gamma = {} outside (-π/2, π/2]",
                self.gamma
            )));
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d + self.h * self.h
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        Self { gamma, ..self }
    }
}

/// Builds the canonical-form state for `p`.
pub fn canonical_to_state(p: &CanonicalParams) -> PureState {
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    amplitudes[0] = Complex64::new(p.d, 0.0);
    amplitudes[3] = Complex64::new(p.a, 0.0);
    amplitudes[5] = Complex64::new(p.b, 0.0);
    amplitudes[6] = Complex64::new(p.c, 0.0);
    amplitudes[7] = Complex64::from_polar(p.h, p.gamma);
    PureState {
        n_qubits: 3,
        amplitudes,
    }
}

/// One 2×2 unitary per qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    factors: Vec<Matrix2<Complex64>>,
}

impl LocalUnitary {
    pub fn new(factors: Vec<Matrix2<Complex64>>) -> Result<Self> {
        for (qubit, u) in factors.iter().enumerate() {
            let deviation = unitarity_deviation(u);
            if deviation > UNITARY_TOL {
                return Err(Error::NotUnitary { qubit, deviation });
            }
        }
        Ok(Self { factors })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            factors: vec![Matrix2::identity(); n],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Matrix2<Complex64>] {
        &self.factors
    }

    pub fn inverse(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|u| u.adjoint()).collect(),
        }
    }

    /// `other` followed by `self`, qubit by qubit.
    pub fn compose(&self, other: &LocalUnitary) -> Result<Self> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::QubitCountMismatch {
                expected: self.n_qubits(),
                got: other.n_qubits(),
            });
        }
        Ok(Self {
            factors: self
                .factors
                .iter()
                .zip(&other.factors)
                .map(|(u, v)| u * v)
                .collect(),
        })
    }
}

fn unitarity_deviation(u: &Matrix2<Complex64>) -> f64 {
    (u * u.adjoint() - Matrix2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Applies `u_0 ⊗ u_1 ⊗ … ⊗ u_{n-1}` to `s`.
pub fn apply_local_unitary(s: &PureState, u: &LocalUnitary) -> Result<PureState> {
    s.require_qubits(u.n_qubits())?;
    for (qubit, m) in u.factors.iter().enumerate() {
        let deviation = unitarity_deviation(m);
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { qubit, deviation });
        }
    }
    let n = s.n_qubits;
    let mut amps = s.amplitudes.clone();
    for (k, m) in u.factors.iter().enumerate() {
        let mask = qubit_mask(n, k);
        for i0 in (0..amps.len()).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            let (x0, x1) = (amps[i0], amps[i1]);
            amps[i0] = m[(0, 0)] * x0 + m[(0, 1)] * x1;
            amps[i1] = m[(1, 0)] * x0 + m[(1, 1)] * x1;
        }
    }
    Ok(PureState {
        n_qubits: n,
        amplitudes: amps,
    })
}

/// A reduced density matrix on one or two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .matrix
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Reduced density matrix on `keep`, with `keep[0]` the most significant
/// qubit of the reduced index.
fn reduced_density(s: &PureState, keep: &[usize]) -> DensityMatrix {
    let n = s.n_qubits;
    let dim = 1 << keep.len();
    let keep_mask: usize = keep.iter().map(|&q| qubit_mask(n, q)).sum();
    let local_index = |i: usize| {
        keep.iter().fold(0, |acc, &q| {
            (acc << 1) | usize::from(i & qubit_mask(n, q) != 0)
        })
    };
    let mut rho = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (i, ai) in s.amplitudes.iter().enumerate() {
        if ai.norm_sqr() == 0.0 {
            continue;
        }
        let env = i & !keep_mask;
        let li = local_index(i);
        for (j, aj) in s.amplitudes.iter().enumerate() {
            if j & !keep_mask == env {
                rho[(li, local_index(j))] += ai * aj.conj();
            }
        }
    }
    DensityMatrix { matrix: rho }
}

/// `ρ_q`, the 2×2 reduced density matrix of qubit `q`.
pub fn partial_trace_single(s: &PureState, q: usize) -> Result<DensityMatrix> {
    s.check_qubit(q)?;
    Ok(reduced_density(s, &[q]))
}

/// `ρ_{q1 q2}`, with `q1` the more significant qubit of the 4-dim index.
pub fn partial_trace_pair(s: &PureState, q1: usize, q2: usize) -> Result<DensityMatrix> {
    s.check_qubit(q1)?;
    s.check_qubit(q2)?;
    if q1 == q2 {
        return Err(Error::RepeatedQubit(q1));
    }
    Ok(reduced_density(s, &[q1, q2]))
}

/// `|⟨s| q_0 ⊗ q_1 ⊗ …⟩|`.
pub fn overlap_with_product(s: &PureState, q: &ProductState) -> Result<f64> {
    s.require_qubits(q.n_qubits())?;
    Ok(PureState::product(q).inner(s)?.norm())
}
