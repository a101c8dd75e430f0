//! Maximal product overlap `g = max |⟨ψ|q_0 q_1 … q_{n-1}⟩|`.
//!
//! The numeric solver is the alternating rank-one ascent (higher-order power
//! method): each spinor in turn is replaced by the normalized contraction of
//! the state against all other spinors, which is the exact optimum for that
//! qubit with the others held fixed. The overlap never decreases. Several
//! random starts are run and the best local maximum kept.
//!
//! For three qubits the same maximum can be written through the two-qubit
//! marginal of `A` and `B`: with `x`, `y` the Bloch vectors of `q_A`, `q_B`,
//! the optimum over `q_C` leaves `g² = ¼[1 + x·b_A + y·b_B + x·(G y)]`
//! (see [`quarter_form`]). Three-qubit runs finish with Newton steps on
//! that reduced form, which removes the slow tail of the ascent.

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::invariants::{bloch_vector, correlation_matrix, BlochVector, CorrelationMatrix};
use crate::sampling::sub_rng;
use crate::state::{qubit_mask, PureState};

pub type Spinor = Vector2<Complex64>;

const SPINOR_TOL: f64 = 1e-12;
const UNIT_TOL: f64 = 1e-10;

/// Tangent-gradient level at which the best local maximum counts as
/// stationary after polishing.
const POLISH_TOL: f64 = 1e-13;

/// One normalized 2-spinor per qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    spinors: Vec<Spinor>,
}

impl ProductState {
    pub fn new(spinors: Vec<Spinor>) -> Result<Self> {
        for q in &spinors {
            let norm = q.norm();
            if (norm - 1.0).abs() > SPINOR_TOL {
                return Err(Error::NotUnit {
                    what: "spinor",
                    norm,
                });
            }
        }
        Ok(Self { spinors })
    }

    /// Normalizes each spinor; fails on a zero spinor.
    pub fn normalized(spinors: Vec<Spinor>) -> Result<Self> {
        spinors
            .into_iter()
            .map(|q| {
                let norm = q.norm();
                if norm == 0.0 || !norm.is_finite() {
                    Err(Error::ZeroState)
                } else {
                    Ok(q / Complex64::new(norm, 0.0))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(|spinors| Self { spinors })
    }

    /// The computational basis product state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let spinors = (0..n)
            .map(|k| {
                if index & qubit_mask(n, k) != 0 {
                    Spinor::new(zero, one)
                } else {
                    Spinor::new(one, zero)
                }
            })
            .collect();
        Self { spinors }
    }

    pub fn from_bloch(vectors: &[Vector3<f64>]) -> Result<Self> {
        vectors
            .iter()
            .map(bloch_to_spinor)
            .collect::<Result<Vec<_>>>()
            .map(|spinors| Self { spinors })
    }

    pub fn n_qubits(&self) -> usize {
        self.spinors.len()
    }

    pub fn spinor(&self, k: usize) -> &Spinor {
        &self.spinors[k]
    }

    pub fn spinors(&self) -> &[Spinor] {
        &self.spinors
    }

    pub fn bloch(&self, k: usize) -> Vector3<f64> {
        spinor_to_bloch(&self.spinors[k])
    }
}

/// Unit Bloch vector to spinor; the `|0⟩` component is real and nonnegative.
pub fn bloch_to_spinor(v: &Vector3<f64>) -> Result<Spinor> {
    let norm = v.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit {
            what: "Bloch vector",
            norm,
        });
    }
    let v = v / norm;
    let up = ((1.0 + v.z) / 2.0).max(0.0).sqrt();
    let transverse = Complex64::new(v.x, v.y);
    let down = if up > 0.5 {
        transverse / (2.0 * up)
    } else {
        let r = transverse.norm();
        let phase = if r > 0.0 {
            transverse / r
        } else {
            Complex64::new(1.0, 0.0)
        };
        phase * ((1.0 - v.z) / 2.0).max(0.0).sqrt()
    };
    Ok(Spinor::new(Complex64::new(up, 0.0), down))
}

pub fn spinor_to_bloch(q: &Spinor) -> Vector3<f64> {
    let coherence = q[0].conj() * q[1];
    Vector3::new(
        2.0 * coherence.re,
        2.0 * coherence.im,
        q[0].norm_sqr() - q[1].norm_sqr(),
    )
}

/// `E_g = −2 ln g = −ln g²`.
pub fn geometric_measure(g_squared: f64) -> Result<f64> {
    if !(g_squared > 0.0 && g_squared <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "g² must lie in (0, 1], got {g_squared}"
        )));
    }
    Ok(-g_squared.min(1.0).ln())
}

/// `¼[1 + x·b_A + y·b_B + x·(G y)]`, the best squared overlap over `q_C`
/// for product states whose first two Bloch vectors are `x` and `y`.
pub fn quarter_form(
    x: &Vector3<f64>,
    y: &Vector3<f64>,
    b_a: &BlochVector,
    b_b: &BlochVector,
    g: &CorrelationMatrix,
) -> Result<f64> {
    for v in [x, y] {
        let norm = v.norm();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit {
                what: "Bloch vector",
                norm,
            });
        }
    }
    Ok(0.25 * (1.0 + x.dot(&b_a.0) + y.dot(&b_b.0) + x.dot(&(g.0 * y))))
}

/// `‖G y + b_A − λ₁ x‖ + ‖Gᵀ x + b_B − λ₂ y‖` for a three-qubit state.
pub fn stationarity_residual(
    s: &PureState,
    x: &Vector3<f64>,
    y: &Vector3<f64>,
    lambda1: f64,
    lambda2: f64,
) -> Result<f64> {
    s.require_qubits(3)?;
    let b_a = bloch_vector(s, 0)?;
    let b_b = bloch_vector(s, 1)?;
    let g = correlation_matrix(s, 0, 1)?;
    Ok(residual_parts(x, y, &b_a, &b_b, &g, lambda1, lambda2))
}

pub(crate) fn residual_parts(
    x: &Vector3<f64>,
    y: &Vector3<f64>,
    b_a: &BlochVector,
    b_b: &BlochVector,
    g: &CorrelationMatrix,
    lambda1: f64,
    lambda2: f64,
) -> f64 {
    (g.0 * y + b_a.0 - lambda1 * x).norm() + (g.0.transpose() * x + b_b.0 - lambda2 * y).norm()
}

/// Lagrange multipliers from scalar projections of the stationarity
/// equations: `λ₁ = x·(G y + b_A)`, `λ₂ = y·(Gᵀ x + b_B)`.
pub fn lagrange_multipliers(
    x: &Vector3<f64>,
    y: &Vector3<f64>,
    b_a: &BlochVector,
    b_b: &BlochVector,
    g: &CorrelationMatrix,
) -> (f64, f64) {
    (
        x.dot(&(g.0 * y + b_a.0)),
        y.dot(&(g.0.transpose() * x + b_b.0)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Number of random starts, in addition to the computational-basis start.
    pub restarts: usize,
    /// Sweep budget per start.
    pub max_iterations: usize,
    /// Convergence threshold on the per-sweep change of `g²`.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iterations: 500,
            tolerance: 1e-13,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_restarts(self, restarts: usize) -> Self {
        Self { restarts, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::Domain(
                "solver needs max_iterations > 0 and tolerance > 0".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapResult {
    pub g_squared: f64,
    pub product: ProductState,
    /// `(λ₁, λ₂)` for three-qubit states, reported only when both are positive.
    pub lagrange: Option<(f64, f64)>,
    /// Starts run, including the computational-basis start.
    pub restarts_used: usize,
    /// Sweeps spent on the winning start, including polishing.
    pub iterations: usize,
    pub converged: bool,
    /// For three qubits, the residual of the stationarity equations at
    /// `(x, y, λ₁, λ₂)`; otherwise the summed tangent gradient norm.
    pub stationarity_residual: f64,
}

impl OverlapResult {
    pub fn geometric_measure(&self) -> Result<f64> {
        geometric_measure(self.g_squared)
    }
}

/// One run of the alternating ascent from a fixed start.
#[derive(Debug, Clone)]
pub struct AscentTrace {
    pub product: ProductState,
    pub g_squared: f64,
    /// `g²` at the start and after every sweep.
    pub history: Vec<f64>,
    pub converged: bool,
}

impl AscentTrace {
    pub fn sweeps(&self) -> usize {
        self.history.len() - 1
    }
}

/// `v_k[j] = Σ ψ_i Π_{m≠k} conj(q_m[i_m])` over indices with `i_k = j`.
fn contraction(state: &PureState, q: &[Spinor], k: usize) -> Spinor {
    let n = state.n_qubits();
    let mut v = Spinor::zeros();
    for (i, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let mut w = *amp;
        for (m, qm) in q.iter().enumerate() {
            if m != k {
                w *= qm[usize::from(i & qubit_mask(n, m) != 0)].conj();
            }
        }
        v[usize::from(i & qubit_mask(n, k) != 0)] += w;
    }
    v
}

fn squared_overlap(state: &PureState, q: &[Spinor]) -> f64 {
    contraction(state, q, 0).dot(&q[0].conjugate()).norm_sqr()
}

/// Summed norm of the components of each `v_k` orthogonal to `q_k`; zero
/// exactly at stationary points.
pub fn tangent_gradient(state: &PureState, product: &ProductState) -> f64 {
    let q = product.spinors();
    (0..q.len())
        .map(|k| {
            let v = contraction(state, q, k);
            let along = q[k].dotc(&v);
            (v - q[k] * along).norm()
        })
        .sum()
}

fn sweep(state: &PureState, q: &mut [Spinor]) -> f64 {
    let mut g = 0.0;
    for k in 0..q.len() {
        let v = contraction(state, q, k);
        let norm = v.norm();
        if norm > 0.0 {
            q[k] = v / Complex64::new(norm, 0.0);
            g = norm;
        }
    }
    if g == 0.0 {
        squared_overlap(state, q)
    } else {
        g * g
    }
}

/// Runs the alternating ascent from `start` until the per-sweep change in
/// `g²` falls below `tolerance` or `max_iterations` sweeps have run.
pub fn alternating_ascent(
    state: &PureState,
    start: &ProductState,
    max_iterations: usize,
    tolerance: f64,
) -> Result<AscentTrace> {
    state.require_qubits(start.n_qubits())?;
    let mut q = start.spinors().to_vec();
    let mut g2 = squared_overlap(state, &q);
    let mut history = vec![g2];
    let mut converged = false;
    for _ in 0..max_iterations {
        let next = sweep(state, &mut q);
        history.push(next);
        let delta = (next - g2).abs();
        g2 = next;
        if delta < tolerance {
            converged = true;
            break;
        }
    }
    Ok(AscentTrace {
        product: ProductState { spinors: q },
        g_squared: g2,
        history,
        converged,
    })
}

fn random_spinor<R: Rng>(rng: &mut R) -> Spinor {
    loop {
        let v = Spinor::new(
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
        );
        let norm = v.norm();
        if norm > 1e-12 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

/// Start `0` is the basis product state of the largest amplitude; start
/// `r ≥ 1` draws Haar-uniform spinors from its own sub-seed.
pub(crate) fn starting_point(state: &PureState, seed: u64, start: usize) -> ProductState {
    let n = state.n_qubits();
    if start == 0 {
        let (index, _) = state
            .amplitudes()
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, a)| {
                if a.norm_sqr() > best.1 {
                    (i, a.norm_sqr())
                } else {
                    best
                }
            });
        ProductState::basis(n, index)
    } else {
        let mut rng = sub_rng(seed, start as u64);
        ProductState {
            spinors: (0..n).map(|_| random_spinor(&mut rng)).collect(),
        }
    }
}

/// Two-qubit marginal data of qubits A and B.
struct Marginal {
    b_a: Vector3<f64>,
    b_b: Vector3<f64>,
    g: Matrix3<f64>,
}

impl Marginal {
    fn of(state: &PureState) -> Result<Self> {
        Ok(Self {
            b_a: bloch_vector(state, 0)?.0,
            b_b: bloch_vector(state, 1)?.0,
            g: correlation_matrix(state, 0, 1)?.0,
        })
    }

    /// `F(x) = max_y ¼[1 + x·b_A + y·b_B + x·(G y)] = ¼[1 + x·b_A + |b_B + Gᵀx|]`.
    fn reduced(&self, x: &Vector3<f64>) -> f64 {
        0.25 * (1.0 + x.dot(&self.b_a) + (self.b_b + self.g.transpose() * x).norm())
    }
}

/// Maximizes `F` over the unit sphere from `x` by Newton steps in the
/// tangent plane, with the Hessian's eigenvalues forced negative and a
/// backtracking line search. Alternating ascent can crawl for thousands of
/// sweeps along nearly flat ridges; this converges in a handful of steps.
fn newton_on_sphere(m: &Marginal, mut x: Vector3<f64>) -> Vector3<f64> {
    let mut f = m.reduced(&x);
    for _ in 0..100 {
        let v = m.b_b + m.g.transpose() * x;
        let nv = v.norm();
        if nv < 1e-12 {
            break;
        }
        let u = v / nv;
        let grad = 0.25 * (m.b_a + m.g * u);
        let hess = 0.25 / nv * m.g * (Matrix3::identity() - u * u.transpose()) * m.g.transpose();

        let seed = if x.x.abs() < 0.9 {
            Vector3::x()
        } else {
            Vector3::y()
        };
        let e1 = (seed - x * x.dot(&seed)).normalize();
        let e2 = x.cross(&e1);
        let radial = x.dot(&grad);
        let rg = Vector2::new(e1.dot(&grad), e2.dot(&grad));
        if rg.norm() <= 1e-16 {
            break;
        }
        let h = Matrix2::new(
            e1.dot(&(hess * e1)) - radial,
            e1.dot(&(hess * e2)),
            e2.dot(&(hess * e1)),
            e2.dot(&(hess * e2)) - radial,
        );
        let eig = h.symmetric_eigen();
        let mut step = Vector2::zeros();
        for i in 0..2 {
            let dir = eig.eigenvectors.column(i);
            step += dir * (dir.dot(&rg) / eig.eigenvalues[i].abs().max(1e-12));
        }

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let candidate = (x + (e1 * step[0] + e2 * step[1]) * t).normalize();
            let fc = m.reduced(&candidate);
            if fc > f {
                x = candidate;
                f = fc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted || (step.norm() * t) < 1e-15 {
            break;
        }
    }
    x
}

/// Replaces a three-qubit trace's end point by the Newton-refined maximum
/// of `F` near it, when that improves the overlap.
fn refine_three(state: &PureState, m: &Marginal, trace: &mut AscentTrace) {
    let x = newton_on_sphere(m, trace.product.bloch(0));
    let v = m.b_b + m.g.transpose() * x;
    if v.norm() < 1e-12 {
        return;
    }
    let (Ok(qa), Ok(qb)) = (bloch_to_spinor(&x), bloch_to_spinor(&v.normalize())) else {
        return;
    };
    let mut q = vec![qa, qb, trace.product.spinors[2]];
    let vc = contraction(state, &q, 2);
    let norm = vc.norm();
    if norm == 0.0 {
        return;
    }
    q[2] = vc / Complex64::new(norm, 0.0);
    let g2 = norm * norm;
    if g2 >= trace.g_squared {
        trace.g_squared = g2;
        trace.history.push(g2);
        trace.product = ProductState { spinors: q };
    }
}

/// Runs every start and returns the traces in start order.
pub(crate) fn all_local_maxima(state: &PureState, cfg: &SolverConfig) -> Result<Vec<AscentTrace>> {
    cfg.validate()?;
    let marginal = if state.n_qubits() == 3 {
        Some(Marginal::of(state)?)
    } else {
        None
    };
    (0..=cfg.restarts)
        .map(|r| {
            let start = starting_point(state, cfg.seed, r);
            let mut trace = alternating_ascent(state, &start, cfg.max_iterations, cfg.tolerance)?;
            if let Some(m) = &marginal {
                refine_three(state, m, &mut trace);
            }
            Ok(trace)
        })
        .collect()
}

/// Continues the ascent past the `g²` criterion until the tangent gradient
/// vanishes to working precision. Returns the extra sweeps used.
pub(crate) fn polish(state: &PureState, trace: &mut AscentTrace, budget: usize) -> (usize, bool) {
    let mut q = trace.product.spinors.clone();
    let mut used = 0;
    let mut done = tangent_gradient(state, &trace.product) <= POLISH_TOL;
    while !done && used < budget {
        let g2 = sweep(state, &mut q);
        used += 1;
        trace.history.push(g2);
        trace.g_squared = g2;
        if used % 8 == 0 || used == budget {
            done = tangent_gradient(state, &ProductState { spinors: q.clone() }) <= POLISH_TOL;
        }
    }
    trace.product = ProductState { spinors: q };
    (used, done)
}

/// Best product approximation of `s` by multi-start alternating ascent.
pub fn nearest_product_state(s: &PureState, cfg: &SolverConfig) -> Result<OverlapResult> {
    if s.n_qubits() < 2 {
        return Err(Error::QubitCount(s.n_qubits()));
    }
    let traces = all_local_maxima(s, cfg)?;
    let restarts_used = traces.len();
    let mut best = traces
        .into_iter()
        .reduce(|best, t| {
            if t.g_squared > best.g_squared + 1e-14 {
                t
            } else {
                best
            }
        })
        .expect("at least one start");
    let (_, stationary) = polish(s, &mut best, 20 * cfg.max_iterations);
    let iterations = best.sweeps();
    let g_squared = best.g_squared.min(1.0);

    let (lagrange, stationarity_residual) = if s.n_qubits() == 3 {
        let x = best.product.bloch(0);
        let y = best.product.bloch(1);
        let b_a = bloch_vector(s, 0)?;
        let b_b = bloch_vector(s, 1)?;
        let g = correlation_matrix(s, 0, 1)?;
        let (l1, l2) = lagrange_multipliers(&x, &y, &b_a, &b_b, &g);
        let residual = residual_parts(&x, &y, &b_a, &b_b, &g, l1, l2);
        ((l1 > 0.0 && l2 > 0.0).then_some((l1, l2)), residual)
    } else {
        (None, tangent_gradient(s, &best.product))
    };
    Ok(OverlapResult {
        g_squared,
        product: best.product,
        lagrange,
        restarts_used,
        iterations,
        converged: best.converged || stationary,
        stationarity_residual,
    })
}
