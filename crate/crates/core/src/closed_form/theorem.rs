//! Checks that a completely mixed qubit forces `g² = 1/2` on three-qubit
//! pure states, sample by sample and in seeded campaigns, plus an
//! exploratory search over states with `g² = 1/2`.

use rayon::prelude::*;
use serde::Serialize;

use super::branches::svd_branch_solutions;
use super::quadrilateral::{balanced_overlap, QuadrilateralParams};
use crate::error::{Error, Result};
use crate::invariants::{bloch_vector, correlation_matrix, sextic_t_trace};
use crate::overlap::{nearest_product_state, SolverConfig};
use crate::sampling::{haar_random_state_with, sample_zero_bloch_with, sub_rng, ZeroBlochFamily};
use crate::state::{canonical_to_state, CanonicalParams, PureState};

/// Bound on `b_C`, `|t|` and the zero-mode residuals.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Default bound on `|g² − 1/2|`.
pub const DEFAULT_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub family: &'static str,
    pub params: CanonicalParams,
    /// Qubit that carries the vanishing Bloch vector after relabeling.
    pub zero_qubit: usize,
    pub zero_bloch_length: f64,
    pub t: f64,
    /// `‖Gᵀ b_A‖`
    pub zero_mode_left: f64,
    /// `‖G b_B‖`
    pub zero_mode_right: f64,
    pub closed_form_g_squared: f64,
    pub closed_form_path: &'static str,
    pub numeric_g_squared: f64,
    pub passed: bool,
}

impl TheoremReport {
    pub fn deviation(&self) -> f64 {
        (self.numeric_g_squared - 0.5).abs()
    }

    pub fn zero_mode_residual(&self) -> f64 {
        self.zero_mode_left.max(self.zero_mode_right)
    }
}

fn family_of(p: &CanonicalParams) -> Result<ZeroBlochFamily> {
    if p.h <= STRUCTURE_TOL {
        Ok(ZeroBlochFamily::Quadrilateral)
    } else if p.c <= STRUCTURE_TOL {
        Ok(ZeroBlochFamily::HNonzero)
    } else {
        Err(Error::InvalidParams(format!(
            "b_C = 0 needs h = 0 or c = 0 (h = {}, c = {})",
            p.h, p.c
        )))
    }
}

/// Moves qubit C to position `zero_qubit`.
fn relabel(s: &PureState, zero_qubit: usize) -> Result<PureState> {
    match zero_qubit {
        0 => s.permute_qubits(&[2, 0, 1]),
        1 => s.permute_qubits(&[0, 2, 1]),
        2 => Ok(s.clone()),
        other => Err(Error::QubitIndex {
            index: other,
            n_qubits: 3,
        }),
    }
}

/// Compares the closed form and the numeric solver on one `b_C = 0` state.
///
/// The numeric side runs on the state with qubit C relabeled to
/// `zero_qubit`; the structural checks use the original labeling.
pub fn theorem_check(
    p: &CanonicalParams,
    zero_qubit: usize,
    cfg: &SolverConfig,
    tolerance: f64,
) -> Result<TheoremReport> {
    p.validate()?;
    let family = family_of(p)?;
    let state = canonical_to_state(p);

    let b_a = bloch_vector(&state, 0)?;
    let b_b = bloch_vector(&state, 1)?;
    let g = correlation_matrix(&state, 0, 1)?;
    let t = sextic_t_trace(&state)?;
    let zero_mode_left = (g.0.transpose() * b_a.0).norm();
    let zero_mode_right = (g.0 * b_b.0).norm();

    let (closed_form_g_squared, closed_form_path) = match family {
        ZeroBlochFamily::Quadrilateral => {
            let q = QuadrilateralParams::normalized(p.a, p.b, p.c, p.d)?;
            (
                balanced_overlap(&q).powi(2),
                "quadrilateral nearest product (balanced sides)",
            )
        }
        ZeroBlochFamily::HNonzero => (
            svd_branch_solutions(p)?.final_g_squared,
            "svd branches: max(zero mode, main)",
        ),
    };

    let relabeled = relabel(&state, zero_qubit)?;
    let zero_bloch_length = bloch_vector(&relabeled, zero_qubit)?.length();
    let numeric_g_squared = nearest_product_state(&relabeled, cfg)?.g_squared;

    let passed = zero_bloch_length <= STRUCTURE_TOL
        && t.abs() <= STRUCTURE_TOL
        && zero_mode_left <= STRUCTURE_TOL
        && zero_mode_right <= STRUCTURE_TOL
        && (closed_form_g_squared - 0.5).abs() <= tolerance
        && (numeric_g_squared - 0.5).abs() <= tolerance;

    Ok(TheoremReport {
        family: family.name(),
        params: *p,
        zero_qubit,
        zero_bloch_length,
        t,
        zero_mode_left,
        zero_mode_right,
        closed_form_g_squared,
        closed_form_path,
        numeric_g_squared,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignFailure {
    pub index: usize,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub family: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub max_abs_t: f64,
    pub max_zero_mode_residual: f64,
    pub max_closed_form_deviation: f64,
    pub failures: Vec<CampaignFailure>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn family_stream(family: ZeroBlochFamily) -> u64 {
    match family {
        ZeroBlochFamily::Quadrilateral => 1 << 32,
        ZeroBlochFamily::HNonzero => 2 << 32,
    }
}

/// Sample `index` of a campaign.
pub fn campaign_sample(family: ZeroBlochFamily, seed: u64, index: usize) -> CanonicalParams {
    sample_zero_bloch_with(
        family,
        &mut sub_rng(seed, family_stream(family) + index as u64),
    )
}

/// Runs [`theorem_check`] on `samples` seeded draws from `family`, in parallel.
/// Results are merged in sample order.
pub fn run_campaign(
    family: ZeroBlochFamily,
    samples: usize,
    seed: u64,
    tolerance: f64,
    cfg: &SolverConfig,
) -> Result<CampaignReport> {
    let reports = (0..samples)
        .into_par_iter()
        .map(|i| {
            let p = campaign_sample(family, seed, i);
            let cfg = cfg.with_seed(seed.wrapping_add(i as u64));
            theorem_check(&p, 2, &cfg, tolerance)
        })
        .collect::<Result<Vec<_>>>()?;

    let max_of = |f: &dyn Fn(&TheoremReport) -> f64| reports.iter().map(f).fold(0.0, f64::max);
    Ok(CampaignReport {
        family: family.name(),
        samples,
        seed,
        tolerance,
        max_deviation: max_of(&|r| r.deviation()),
        max_abs_t: max_of(&|r| r.t.abs()),
        max_zero_mode_residual: max_of(&|r| r.zero_mode_residual()),
        max_closed_form_deviation: max_of(&|r| (r.closed_form_g_squared - 0.5).abs()),
        failures: reports
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.passed)
            .map(|(index, r)| CampaignFailure {
                index,
                report: r.clone(),
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InverseEntry {
    pub index: usize,
    pub source: &'static str,
    pub g_squared: f64,
    pub min_bloch: f64,
    /// Position along the path to the anchor state where `g² = 1/2` was met;
    /// zero for controls.
    pub path_parameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InverseSearchReport {
    pub seed: u64,
    pub samples: usize,
    pub window: f64,
    pub entries: Vec<InverseEntry>,
    /// Random samples whose refinement did not land in the window.
    pub rejected: usize,
    /// `[min, 25%, median, 75%, max]` of `min(b_A, b_B, b_C)` over random entries.
    pub min_bloch_quantiles: Option<[f64; 5]>,
    /// Random entries with `min(b_A, b_B, b_C) ≤ 1e-8`.
    pub random_with_zero_bloch: usize,
}

fn min_bloch(s: &PureState) -> Result<f64> {
    (0..3)
        .map(|q| bloch_vector(s, q).map(|b| b.length()))
        .try_fold(f64::INFINITY, |m, b| b.map(|b| m.min(b)))
}

fn blend(s: &PureState, anchor: &PureState, t: f64) -> Result<PureState> {
    let (c, sn) = (t.cos(), t.sin());
    PureState::new(
        3,
        s.amplitudes()
            .iter()
            .zip(anchor.amplitudes())
            .map(|(x, y)| x * c + y * sn)
            .collect(),
    )
}

/// Window on `|g² − 1/2|` for accepting a refined sample.
pub const INVERSE_WINDOW: f64 = 1e-4;

/// Draws Haar-random states, moves each along a great-circle path towards
/// `|000⟩` (if `g² < 1/2`) or the W state (if `g² > 1/2`) until `g² = 1/2`
/// by bisection, and records `min(b_A, b_B, b_C)` at the landing point.
/// Three controls with a known zero Bloch vector are prepended.
///
/// Exploratory only: the report carries no verdict.
pub fn inverse_search(
    samples: usize,
    seed: u64,
    cfg: &SolverConfig,
) -> Result<InverseSearchReport> {
    let solve = |s: &PureState, i: usize| -> Result<f64> {
        Ok(nearest_product_state(s, &cfg.with_seed(seed.wrapping_add(i as u64)))?.g_squared)
    };

    let mut entries = Vec::new();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let controls: [(&'static str, CanonicalParams); 3] = [
        (
            "control: ghz",
            CanonicalParams::new(0.0, 0.0, 0.0, r, r, 0.0)?,
        ),
        (
            "control: quadrilateral",
            campaign_sample(ZeroBlochFamily::Quadrilateral, seed, 0),
        ),
        (
            "control: h-nonzero",
            campaign_sample(ZeroBlochFamily::HNonzero, seed, 0),
        ),
    ];
    for (source, p) in controls {
        let s = canonical_to_state(&p);
        let g_squared = solve(&s, 0)?;
        if (g_squared - 0.5).abs() <= INVERSE_WINDOW {
            entries.push(InverseEntry {
                index: entries.len(),
                source,
                g_squared,
                min_bloch: min_bloch(&s)?,
                path_parameter: 0.0,
            });
        }
    }

    let product = PureState::basis(3, 0)?;
    let w = PureState::from_real(3, &[0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0])?;
    let refined = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Option<InverseEntry>> {
            let s = haar_random_state_with(3, &mut sub_rng(seed, 3 << 32 | i as u64))?;
            let start = solve(&s, i)?;
            let anchor = if start < 0.5 { &product } else { &w };
            let (mut lo, mut hi) = (0.0, std::f64::consts::FRAC_PI_2);
            let (mut best, mut best_t, mut best_g2) = (s.clone(), 0.0, start);
            for _ in 0..60 {
                if (best_g2 - 0.5).abs() <= 1e-9 {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let candidate = blend(&s, anchor, mid)?;
                let g2 = solve(&candidate, i)?;
                if (g2 < 0.5) == (start < 0.5) {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if (g2 - 0.5).abs() < (best_g2 - 0.5).abs() {
                    best = candidate;
                    best_t = mid;
                    best_g2 = g2;
                }
            }
            if (best_g2 - 0.5).abs() > INVERSE_WINDOW {
                return Ok(None);
            }
            Ok(Some(InverseEntry {
                index: i,
                source: "random",
                g_squared: best_g2,
                min_bloch: min_bloch(&best)?,
                path_parameter: best_t,
            }))
        })
        .collect::<Result<Vec<_>>>()?;

    let rejected = refined.iter().filter(|e| e.is_none()).count();
    let randoms: Vec<InverseEntry> = refined.into_iter().flatten().collect();
    let mut mins: Vec<f64> = randoms.iter().map(|e| e.min_bloch).collect();
    mins.sort_by(f64::total_cmp);
    let quantile = |q: f64| mins[((mins.len() - 1) as f64 * q).round() as usize];
    let min_bloch_quantiles = (!mins.is_empty()).then(|| {
        [
            quantile(0.0),
            quantile(0.25),
            quantile(0.5),
            quantile(0.75),
            quantile(1.0),
        ]
    });
    let random_with_zero_bloch = mins.iter().filter(|&&m| m <= 1e-8).count();
    entries.extend(randoms);

    Ok(InverseSearchReport {
        seed,
        samples,
        window: INVERSE_WINDOW,
        entries,
        rejected,
        min_bloch_quantiles,
        random_with_zero_bloch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::sample_zero_bloch_manifold;

    fn fast() -> SolverConfig {
        SolverConfig::default().with_restarts(16)
    }

    #[test]
    fn examples_pass() {
        let quad = CanonicalParams::new(0.6, 0.14f64.sqrt(), 0.5, 0.5, 0.0, 0.0).unwrap();
        let r = theorem_check(&quad, 2, &fast(), DEFAULT_TOLERANCE).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.family, "quadrilateral");

        let hnz = CanonicalParams::new(0.3, 0.4, 0.0, 0.5f64.sqrt(), 0.5, 0.0).unwrap();
        let r = theorem_check(&hnz, 2, &fast(), DEFAULT_TOLERANCE).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.family, "h-nonzero");
    }

    #[test]
    fn relabeled_variants_pass() {
        for family in [ZeroBlochFamily::Quadrilateral, ZeroBlochFamily::HNonzero] {
            let p = sample_zero_bloch_manifold(family, 5);
            for q in 0..3 {
                let r = theorem_check(&p, q, &fast(), DEFAULT_TOLERANCE).unwrap();
                assert!(r.passed, "{r:?}");
                assert!(r.zero_bloch_length <= 1e-12);
            }
        }
    }

    #[test]
    fn rejects_states_off_the_manifold() {
        let p = CanonicalParams::normalized(0.3, 0.4, 0.2, 0.7, 0.5, 0.0).unwrap();
        assert!(theorem_check(&p, 2, &fast(), DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn campaign_is_reproducible() {
        let a = run_campaign(ZeroBlochFamily::HNonzero, 20, 3, DEFAULT_TOLERANCE, &fast()).unwrap();
        let b = run_campaign(ZeroBlochFamily::HNonzero, 20, 3, DEFAULT_TOLERANCE, &fast()).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
    }

    #[test]
    fn tiny_tolerance_reports_failures() {
        let r = run_campaign(ZeroBlochFamily::Quadrilateral, 20, 3, 1e-17, &fast()).unwrap();
        assert!(!r.passed());
        assert!(r.failures.iter().all(|f| !f.report.passed));
    }
}
