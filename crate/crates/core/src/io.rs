//! JSON state files:
//!
//! ```json
//! { "n_qubits": 2, "amplitudes": [[0.7071067811865476, 0.0], [0.0, 0.0], [0.0, 0.0], [0.7071067811865476, 0.0]] }
//! ```
//!
//! Amplitudes are `[re, im]` pairs in the qubit-A-most-significant order.
//! Inputs off unit norm by more than 1e-12 are renormalized with a warning;
//! beyond 1e-6 they are rejected unless the caller opts in.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::state::{make_state, PureState, MAX_QUBITS, NORM_TOL};

/// Largest norm deviation accepted without an explicit opt-in.
pub const NORM_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub n_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&PureState> for StateFile {
    fn from(s: &PureState) -> Self {
        Self {
            n_qubits: s.n_qubits(),
            amplitudes: s.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedState {
    pub state: PureState,
    pub warning: Option<String>,
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

/// Applies the input normalization policy to a raw norm: `Ok(None)` when it
/// is within round-off of 1, a warning when it needs rescaling, and an error
/// naming `field` when it is off by more than [`NORM_SLACK`] without opt-in.
pub fn normalization_policy(
    norm: f64,
    allow_unnormalized: bool,
    field: &str,
) -> Result<Option<String>> {
    let deviation = (norm - 1.0).abs();
    if deviation > NORM_SLACK && !allow_unnormalized {
        return Err(field_error(
            field,
            format!("norm is {norm}, more than {NORM_SLACK:e} from 1 (pass --allow-unnormalized to rescale)"),
        ));
    }
    Ok((deviation > NORM_TOL).then(|| format!("input norm {norm} rescaled to 1")))
}

pub fn parse_state(text: &str, allow_unnormalized: bool) -> Result<LoadedState> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| field_error("<document>", e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| field_error("<document>", "expected a JSON object"))?;

    let n = obj
        .get("n_qubits")
        .ok_or_else(|| field_error("n_qubits", "missing"))?
        .as_u64()
        .ok_or_else(|| field_error("n_qubits", "expected a positive integer"))?
        as usize;
    if n == 0 || n > MAX_QUBITS {
        return Err(field_error(
            "n_qubits",
            format!("must be in 1..={MAX_QUBITS}, got {n}"),
        ));
    }

    let raw = obj
        .get("amplitudes")
        .ok_or_else(|| field_error("amplitudes", "missing"))?
        .as_array()
        .ok_or_else(|| field_error("amplitudes", "expected an array of [re, im] pairs"))?;
    let expected = 1usize << n;
    if raw.len() != expected {
        return Err(field_error(
            "amplitudes",
            format!("has {} entries, expected 2^{n} = {expected}", raw.len()),
        ));
    }
    let amplitudes = raw
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let pair = v.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                field_error(format!("amplitudes[{i}]"), "expected a [re, im] pair")
            })?;
            let num = |x: &Value| {
                x.as_f64().filter(|x| x.is_finite()).ok_or_else(|| {
                    field_error(format!("amplitudes[{i}]"), "expected finite numbers")
                })
            };
            Ok(Complex64::new(num(&pair[0])?, num(&pair[1])?))
        })
        .collect::<Result<Vec<_>>>()?;

    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let warning = normalization_policy(norm, allow_unnormalized, "amplitudes")?;
    let state = make_state(n, amplitudes)
        .map_err(|e| field_error("amplitudes", e.to_string()))?
        .state;
    Ok(LoadedState { state, warning })
}

pub fn read_state_file(path: &Path, allow_unnormalized: bool) -> Result<LoadedState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| field_error("--input", format!("{}: {e}", path.display())))?;
    parse_state(&text, allow_unnormalized)
}

pub fn state_to_json(s: &PureState) -> String {
    serde_json::to_string_pretty(&StateFile::from(s)).expect("state file serializes")
}
