//! Local-unitary invariants and the geometric measure of entanglement for
//! pure few-qubit states.
//!
//! The crate covers three layers:
//!
//! - [`state`]: dense pure states with qubit 0 as the most significant bit,
//!   local unitaries, reduced density matrices and the five-amplitude
//!   canonical form `a|011⟩ + b|101⟩ + c|110⟩ + d|000⟩ + e^{iγ} h|111⟩`.
//! - [`invariants`]: Bloch vectors, the two-qubit correlation matrix and the
//!   continuous invariants `(b_A, b_B, b_C, t, τ)`, each with an independent
//!   second formula where one exists.
//! - [`overlap`] and [`closed_form`]: the maximal product overlap `g`
//!   computed numerically by alternating rank-one updates, and the analytic
//!   solutions for states with a completely mixed qubit, where `g² = 1/2`.
//!
//! The [`cli`] module backs the `geoent` binary; the crate's `examples/`
//! directory has one runnable program per capability.

pub mod canonical;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod invariants;
pub mod io;
pub mod overlap;
pub mod sampling;
pub mod state;

pub use canonical::{canonicalize, canonicalize_with, Canonicalization};
pub use error::{Error, Result};
pub use invariants::{
    bloch_vector, correlation_matrix, invariant_set, sextic_t_bloch, sextic_t_trace, three_tangle,
    three_tangle_canonical, BlochVector, CorrelationMatrix, InvariantSet,
};
pub use overlap::{
    bloch_to_spinor, geometric_measure, nearest_product_state, quarter_form, spinor_to_bloch,
    stationarity_residual, OverlapResult, ProductState, SolverConfig,
};
pub use sampling::{
    haar_random_state, random_local_unitary, sample_zero_bloch_manifold, ZeroBlochFamily,
};
pub use state::{
    apply_local_unitary, canonical_to_state, make_state, overlap_with_product, partial_trace_pair,
    partial_trace_single, CanonicalParams, DensityMatrix, LocalUnitary, Normalized, PureState,
};

pub use num_complex::Complex64;
