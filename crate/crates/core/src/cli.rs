//! Command-line front end behind the `geoent` binary.
//!
//! Exit codes: 0 on success, 1 when a verification or demo check fails,
//! 2 on bad input (unreadable file, malformed flags, wrong qubit count).
//! Human output rounds to 10 significant digits; `--format structured`
//! prints full-precision JSON.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::canonical::canonicalize_with;
use crate::closed_form::theorem::DEFAULT_TOLERANCE;
use crate::closed_form::{
    dicke4_state, ghz_overlap, ghz_state, inverse_search, quadrilateral_overlap, run_campaign,
    sample_feasible_quadrilateral, w_state, wn_overlap, CampaignReport,
};
use crate::error::Error;
use crate::invariants::{bloch_vector, correlation_matrix, invariant_set};
use crate::io::{normalization_policy, read_state_file, StateFile};
use crate::overlap::{nearest_product_state, ProductState, SolverConfig};
use crate::sampling::{sub_rng, ZeroBlochFamily};
use crate::state::{canonical_to_state, CanonicalParams, PureState};

#[derive(Debug, Parser)]
#[command(
    name = "geoent",
    version,
    about = "Entanglement invariants and maximal product overlap of pure qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bloch vectors, correlation matrix and (b_A, b_B, b_C, t, tau) of a three-qubit state.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximal product overlap g², E_g = -ln g² and the nearest product state.
    Overlap {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical parameters (a, b, c, d, h, gamma) of a three-qubit state.
    Canonicalize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Checks g² = 1/2 on seeded samples with a completely mixed qubit.
    VerifyTheorem {
        #[arg(long, value_enum, default_value_t = FamilyArg::Both)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Bound on |g² - 1/2|.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reproduces one of the worked examples.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        /// Sample count for the quadrilateral demo.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exploratory: distribution of min(b_A, b_B, b_C) over states with g² ≈ 1/2.
    InverseSearch {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "builtin"])))]
struct InputArgs {
    /// JSON state file with `n_qubits` and `amplitudes`.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// ghz, w, dicke4 or canonical:a,b,c,d,h,gamma
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Rescale inputs whose norm is more than 1e-6 away from 1.
    #[arg(long)]
    allow_unnormalized: bool,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Random starts in addition to the computational-basis start.
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long = "max-iters")]
    max_iters: Option<usize>,
    /// Convergence threshold on the per-sweep change of g².
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, Error> {
        let d = SolverConfig::default();
        let cfg = SolverConfig {
            restarts: self.restarts.unwrap_or(d.restarts),
            max_iterations: self.max_iters.unwrap_or(d.max_iterations),
            tolerance: self.tol.unwrap_or(d.tolerance),
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Quadrilateral,
    HNonzero,
    Both,
}

impl FamilyArg {
    fn families(self) -> Vec<ZeroBlochFamily> {
        match self {
            Self::Quadrilateral => vec![ZeroBlochFamily::Quadrilateral],
            Self::HNonzero => vec![ZeroBlochFamily::HNonzero],
            Self::Both => vec![ZeroBlochFamily::Quadrilateral, ZeroBlochFamily::HNonzero],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DemoName {
    GhzSweep,
    Wn,
    Dicke4,
    Quadrilateral,
}

enum Failure {
    Input(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Exit code 0 or 1 on a completed run.
type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { 0 } else { 2 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Invariants { input, output } => invariants(&input, output.format, out, err),
        Command::Overlap {
            input,
            solver,
            output,
        } => overlap(&input, &solver, output.format, out, err),
        Command::Canonicalize {
            input,
            solver,
            output,
        } => canonical(&input, &solver, output.format, out, err),
        Command::VerifyTheorem {
            family,
            samples,
            tolerance,
            solver,
            output,
        } => verify_theorem(family, samples, tolerance, &solver, output.format, out),
        Command::Demo {
            name,
            samples,
            solver,
            output,
        } => {
            let cfg = solver.config()?;
            match name {
                DemoName::GhzSweep => demo_ghz_sweep(&cfg, output.format, out),
                DemoName::Wn => demo_wn(&cfg, output.format, out),
                DemoName::Dicke4 => demo_dicke4(&cfg, output.format, out),
                DemoName::Quadrilateral => demo_quadrilateral(samples, &cfg, output.format, out),
            }
        }
        Command::InverseSearch {
            samples,
            solver,
            output,
        } => inverse(samples, &solver, output.format, out),
    }
}

/// Rounds to 10 significant digits and drops trailing zeros.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-4..10).contains(&exponent) {
        let s = format!("{x:.9e}");
        let (mantissa, exp) = s.split_once('e').expect("scientific format");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    let decimals = (9 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn vec_str(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| sig(*x)).collect();
    format!("({})", parts.join(", "))
}

fn complex_str(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", sig(z.re), sig(-z.im))
    } else {
        format!("{}+{}i", sig(z.re), sig(z.im))
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("JSON value serializes")
    )
}

fn builtin_state(
    name: &str,
    allow_unnormalized: bool,
) -> Result<(PureState, Option<String>), Error> {
    let field_err = |message: String| Error::Parse {
        field: "--builtin".into(),
        message,
    };
    match name {
        "ghz" => Ok((ghz_state(std::f64::consts::FRAC_PI_4, 3)?, None)),
        "w" => Ok((w_state(&[1.0 / 3f64.sqrt(); 3])?, None)),
        "dicke4" => Ok((dicke4_state(), None)),
        _ => {
            let Some(list) = name.strip_prefix("canonical:") else {
                return Err(field_err(format!(
                    "unknown state `{name}` (expected ghz, w, dicke4 or canonical:a,b,c,d,h,gamma)"
                )));
            };
            let values = list
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| field_err(format!("canonical parameters: {e}")))?;
            let [a, b, c, d, h, gamma] = values[..] else {
                return Err(field_err(format!(
                    "canonical: needs 6 comma-separated numbers, got {}",
                    values.len()
                )));
            };
            let norm = (a * a + b * b + c * c + d * d + h * h).sqrt();
            let warning = normalization_policy(norm, allow_unnormalized, "--builtin")?;
            let p = CanonicalParams::normalized(a, b, c, d, h, gamma)?;
            Ok((canonical_to_state(&p), warning))
        }
    }
}

fn load(input: &InputArgs, err: &mut dyn Write) -> Result<PureState, Failure> {
    let (state, warning) = match (&input.input, &input.builtin) {
        (Some(path), _) => {
            let loaded = read_state_file(path, input.allow_unnormalized)?;
            (loaded.state, loaded.warning)
        }
        (None, Some(name)) => builtin_state(name, input.allow_unnormalized)?,
        (None, None) => unreachable!("clap enforces one input source"),
    };
    if let Some(w) = warning {
        writeln!(err, "warning: {w}")?;
    }
    Ok(state)
}

fn require_three(s: &PureState, command: &str) -> Result<(), Failure> {
    if s.n_qubits() != 3 {
        return Err(Failure::Input(format!(
            "`{command}` needs a three-qubit state, got {} qubits (use `overlap` for other sizes)",
            s.n_qubits()
        )));
    }
    Ok(())
}

fn invariants(
    input: &InputArgs,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let s = load(input, err)?;
    require_three(&s, "invariants")?;
    let inv = invariant_set(&s)?;
    let blochs = (0..3)
        .map(|q| bloch_vector(&s, q).map(|b| b.as_array()))
        .collect::<Result<Vec<_>, _>>()?;
    let g = correlation_matrix(&s, 0, 1)?.rows();

    match format {
        Format::Structured => emit_json(
            out,
            &json!({
                "b_A": inv.b_a, "b_B": inv.b_b, "b_C": inv.b_c, "t": inv.t, "tau": inv.tau,
                "bloch_A": blochs[0], "bloch_B": blochs[1], "bloch_C": blochs[2],
                "G": g,
            }),
        )?,
        Format::Human => {
            writeln!(out, "b_A = {}", sig(inv.b_a))?;
            writeln!(out, "b_B = {}", sig(inv.b_b))?;
            writeln!(out, "b_C = {}", sig(inv.b_c))?;
            writeln!(out, "t   = {}", sig(inv.t))?;
            writeln!(out, "tau = {}", sig(inv.tau))?;
            for (label, b) in ["A", "B", "C"].iter().zip(&blochs) {
                writeln!(out, "bloch_{label} = {}", vec_str(b))?;
            }
            writeln!(out, "G (A,B) =")?;
            for row in g {
                writeln!(out, "  {}", vec_str(&row))?;
            }
        }
    }
    Ok(0)
}

fn spinor_json(q: &ProductState) -> Vec<[[f64; 2]; 2]> {
    q.spinors()
        .iter()
        .map(|s| [[s[0].re, s[0].im], [s[1].re, s[1].im]])
        .collect()
}

fn overlap(
    input: &InputArgs,
    solver: &SolverArgs,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let s = load(input, err)?;
    if s.n_qubits() < 2 {
        return Err(Failure::Input(format!(
            "`overlap` needs 2 to 8 qubits, got {}",
            s.n_qubits()
        )));
    }
    let cfg = solver.config()?;
    let r = nearest_product_state(&s, &cfg)?;
    let e_g = r.geometric_measure()?;
    let warning = (!r.converged).then(|| {
        format!(
            "solver did not meet its convergence criteria within {} sweeps; result is the best found",
            cfg.max_iterations
        )
    });
    let three = s.n_qubits() == 3;

    match format {
        Format::Structured => emit_json(
            out,
            &json!({
                "n_qubits": s.n_qubits(),
                "g_squared": r.g_squared,
                "E_g": e_g,
                "spinors": spinor_json(&r.product),
                "bloch": (0..s.n_qubits()).map(|k| <[f64; 3]>::from(r.product.bloch(k))).collect::<Vec<_>>(),
                "nearest_product_state": StateFile::from(&PureState::product(&r.product)),
                "lambda1": r.lagrange.map(|l| l.0),
                "lambda2": r.lagrange.map(|l| l.1),
                "stationarity_residual": three.then_some(r.stationarity_residual),
                "restarts_used": r.restarts_used,
                "iterations": r.iterations,
                "converged": r.converged,
                "warning": warning,
            }),
        )?,
        Format::Human => {
            writeln!(out, "g^2 = {}", sig(r.g_squared))?;
            writeln!(out, "E_g = {}", sig(e_g))?;
            for (k, q) in r.product.spinors().iter().enumerate() {
                writeln!(
                    out,
                    "qubit {k}: ({}, {})  bloch {}",
                    complex_str(q[0]),
                    complex_str(q[1]),
                    vec_str(r.product.bloch(k).as_slice())
                )?;
            }
            if three {
                if let Some((l1, l2)) = r.lagrange {
                    writeln!(out, "lambda1 = {}, lambda2 = {}", sig(l1), sig(l2))?;
                }
                writeln!(
                    out,
                    "stationarity residual = {}",
                    sig(r.stationarity_residual)
                )?;
            }
            writeln!(
                out,
                "restarts = {}, sweeps = {}, converged = {}",
                r.restarts_used, r.iterations, r.converged
            )?;
            if let Some(w) = &warning {
                writeln!(out, "warning: {w}")?;
            }
        }
    }
    Ok(0)
}

fn canonical(
    input: &InputArgs,
    solver: &SolverArgs,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let s = load(input, err)?;
    require_three(&s, "canonicalize")?;
    let c = canonicalize_with(&s, &solver.config()?)?;
    let p = c.params;
    match format {
        Format::Structured => emit_json(
            out,
            &json!({
                "params": p,
                "residual": c.residual,
                "canonical_state": StateFile::from(&canonical_to_state(&p)),
                "local_unitary": c.unitary.factors().iter().map(|u| {
                    [[[u[(0, 0)].re, u[(0, 0)].im], [u[(0, 1)].re, u[(0, 1)].im]],
                     [[u[(1, 0)].re, u[(1, 0)].im], [u[(1, 1)].re, u[(1, 1)].im]]]
                }).collect::<Vec<_>>(),
            }),
        )?,
        Format::Human => {
            writeln!(out, "a     = {}", sig(p.a))?;
            writeln!(out, "b     = {}", sig(p.b))?;
            writeln!(out, "c     = {}", sig(p.c))?;
            writeln!(out, "d     = {}", sig(p.d))?;
            writeln!(out, "h     = {}", sig(p.h))?;
            writeln!(out, "gamma = {}", sig(p.gamma))?;
            writeln!(out, "residual = {}", sig(c.residual))?;
        }
    }
    Ok(0)
}

fn builtin_arg(p: &CanonicalParams) -> String {
    format!(
        "canonical:{},{},{},{},{},{}",
        p.a, p.b, p.c, p.d, p.h, p.gamma
    )
}

fn verify_theorem(
    family: FamilyArg,
    samples: usize,
    tolerance: f64,
    solver: &SolverArgs,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Failure::Input(format!(
            "--tolerance must be positive, got {tolerance}"
        )));
    }
    let cfg = solver.config()?;
    let reports = family
        .families()
        .into_iter()
        .map(|f| run_campaign(f, samples, solver.seed, tolerance, &cfg))
        .collect::<Result<Vec<CampaignReport>, _>>()?;
    let passed = reports.iter().all(CampaignReport::passed);

    match format {
        Format::Structured => emit_json(out, &json!({ "passed": passed, "campaigns": reports }))?,
        Format::Human => {
            for r in &reports {
                writeln!(
                    out,
                    "family {}: {} samples, seed {}",
                    r.family, r.samples, r.seed
                )?;
                writeln!(out, "  max |g^2 - 1/2|         = {}", sig(r.max_deviation))?;
                writeln!(
                    out,
                    "  max |closed form - 1/2| = {}",
                    sig(r.max_closed_form_deviation)
                )?;
                writeln!(out, "  max |t|                 = {}", sig(r.max_abs_t))?;
                writeln!(
                    out,
                    "  max zero-mode residual  = {}",
                    sig(r.max_zero_mode_residual)
                )?;
                writeln!(out, "  failures                = {}", r.failures.len())?;
                for f in &r.failures {
                    writeln!(
                        out,
                        "  FAIL sample {}: numeric g^2 = {}, closed form = {}; reproduce with --builtin {}",
                        f.index,
                        f.report.numeric_g_squared,
                        f.report.closed_form_g_squared,
                        builtin_arg(&f.report.params)
                    )?;
                }
            }
            writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn demo_ghz_sweep(cfg: &SolverConfig, format: Format, out: &mut dyn Write) -> Outcome {
    let mut rows = Vec::new();
    for n in 2..=5 {
        for k in 0..=3 {
            let theta = k as f64 * std::f64::consts::PI / 12.0;
            let s = ghz_state(theta, n)?;
            let numeric = nearest_product_state(&s, cfg)?.g_squared;
            let bloch = bloch_vector(&s, 0)?.length();
            rows.push((
                n,
                theta,
                numeric,
                (1.0 + bloch) / 2.0,
                ghz_overlap(theta, n)?,
                bloch,
            ));
        }
    }
    let max_gap = rows
        .iter()
        .map(|r| (r.2 - r.3).abs().max((r.2 - r.4).abs()))
        .fold(0.0, f64::max);
    let passed = max_gap <= 1e-8;

    match format {
        Format::Structured => emit_json(
            out,
            &json!({
                "rows": rows.iter().map(|r| json!({
                    "n": r.0, "theta": r.1, "numeric_g_squared": r.2,
                    "bloch_formula": r.3, "cos_formula": r.4, "bloch_length": r.5,
                })).collect::<Vec<_>>(),
                "max_discrepancy": max_gap,
                "passed": passed,
            }),
        )?,
        Format::Human => {
            writeln!(out, "n  theta/pi   numeric g^2    (1+|b|)/2      |b|")?;
            for r in &rows {
                writeln!(
                    out,
                    "{}  {:<9}  {:<13}  {:<13}  {}",
                    r.0,
                    sig(r.1 / std::f64::consts::PI),
                    sig(r.2),
                    sig(r.3),
                    sig(r.5)
                )?;
            }
            writeln!(out, "max discrepancy = {}", sig(max_gap))?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn demo_wn(cfg: &SolverConfig, format: Format, out: &mut dyn Write) -> Outcome {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let cases: Vec<Vec<f64>> = vec![
        vec![1.0 / 3f64.sqrt(); 3],
        vec![r2, 0.5, 0.5],
        vec![1.0, 0.0, 0.0],
        vec![0.6, 0.8, 0.0],
        vec![0.5; 4],
        vec![r2, 1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt()],
        vec![1.0 / 5f64.sqrt(); 5],
        vec![0.5, 0.5, r2, 0.0, 0.0],
    ];
    let reports = cases
        .iter()
        .map(|c| wn_overlap(c, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.correspondence_holds);

    match format {
        Format::Structured => emit_json(out, &json!({ "cases": reports, "passed": passed }))?,
        Format::Human => {
            for r in &reports {
                writeln!(out, "c = {}", vec_str(&r.coeffs))?;
                writeln!(out, "  Bloch lengths = {}", vec_str(&r.bloch_lengths))?;
                writeln!(
                    out,
                    "  g^2 = {}  zero Bloch vector: {}  g^2 = 1/2: {}  correspondence: {}",
                    sig(r.g_squared),
                    r.has_zero_bloch,
                    r.is_half,
                    if r.correspondence_holds {
                        "holds"
                    } else {
                        "BROKEN"
                    }
                )?;
            }
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn demo_dicke4(cfg: &SolverConfig, format: Format, out: &mut dyn Write) -> Outcome {
    let s = dicke4_state();
    let g_squared = nearest_product_state(&s, cfg)?.g_squared;
    let lengths = (0..4)
        .map(|q| bloch_vector(&s, q).map(|b| b.length()))
        .collect::<Result<Vec<_>, _>>()?;
    let all_zero = lengths.iter().all(|&b| b <= 1e-12);
    let passed = all_zero && (g_squared - 0.375).abs() <= 1e-7;

    match format {
        Format::Structured => emit_json(
            out,
            &json!({
                "g_squared": g_squared,
                "bloch_lengths": lengths,
                "all_bloch_zero": all_zero,
                "theorem_extends": (g_squared - 0.5).abs() <= 1e-7,
                "passed": passed,
            }),
        )?,
        Format::Human => {
            writeln!(out, "Bloch lengths = {}", vec_str(&lengths))?;
            writeln!(
                out,
                "g²={}, all Bloch vectors {}, theorem does NOT extend",
                sig(g_squared),
                if all_zero { "zero" } else { "NOT zero" }
            )?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn demo_quadrilateral(
    samples: usize,
    cfg: &SolverConfig,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let mut rng = sub_rng(cfg.seed, 4 << 32);
    let params: Vec<_> = (0..samples)
        .map(|_| sample_feasible_quadrilateral(&mut rng))
        .collect();
    let mut max_gap: f64 = 0.0;
    let mut rows = Vec::with_capacity(samples);
    for (i, p) in params.iter().enumerate() {
        let closed = quadrilateral_overlap(p)?;
        let numeric =
            nearest_product_state(&p.state(), &cfg.with_seed(cfg.seed.wrapping_add(i as u64)))?
                .g_squared
                .sqrt();
        max_gap = max_gap.max((closed - numeric).abs());
        rows.push((p.sides(), closed, numeric));
    }
    let passed = max_gap <= 1e-7;

    match format {
        Format::Structured => emit_json(
            out,
            &json!({
                "samples": rows.iter().map(|r| json!({
                    "sides": r.0, "closed_form_g": r.1, "numeric_g": r.2,
                })).collect::<Vec<_>>(),
                "max_discrepancy": max_gap,
                "passed": passed,
            }),
        )?,
        Format::Human => {
            for (sides, closed, numeric) in rows.iter().take(5) {
                writeln!(
                    out,
                    "sides {}  g closed = {}  g numeric = {}",
                    vec_str(sides),
                    sig(*closed),
                    sig(*numeric)
                )?;
            }
            if rows.len() > 5 {
                writeln!(out, "... {} more", rows.len() - 5)?;
            }
            writeln!(
                out,
                "max |g closed - g numeric| over {samples} feasible quadrilaterals = {}",
                sig(max_gap)
            )?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn inverse(samples: usize, solver: &SolverArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let cfg = solver.config()?;
    let r = inverse_search(samples, solver.seed, &cfg)?;
    match format {
        Format::Structured => {
            emit_json(out, &serde_json::to_value(&r).expect("report serializes"))?
        }
        Format::Human => {
            writeln!(out, "exploratory search; no verdict is implied")?;
            writeln!(
                out,
                "seed {}, {} random samples, window |g^2 - 1/2| <= {}",
                r.seed, r.samples, r.window
            )?;
            for e in r.entries.iter().filter(|e| e.source != "random") {
                writeln!(
                    out,
                    "{}: g^2 = {}, min Bloch = {}",
                    e.source,
                    sig(e.g_squared),
                    sig(e.min_bloch)
                )?;
            }
            let landed = r.entries.iter().filter(|e| e.source == "random").count();
            writeln!(
                out,
                "random states refined onto g^2 = 1/2: {landed} (rejected {})",
                r.rejected
            )?;
            if let Some(q) = r.min_bloch_quantiles {
                writeln!(
                    out,
                    "min(b_A, b_B, b_C) quantiles [0, 25, 50, 75, 100]% = {}",
                    vec_str(&q)
                )?;
            }
            writeln!(
                out,
                "random states with a zero Bloch vector (<= 1e-8): {}",
                r.random_with_zero_bloch
            )?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.375), "0.375");
        assert_eq!(sig(0.5000000000001), "0.5");
        assert_eq!(sig(1.0 / 3.0), "0.3333333333");
        assert_eq!(sig(2f64.ln()), "0.6931471806");
        assert_eq!(sig(1234.5678901234), "1234.56789");
        assert_eq!(sig(-2.5e-17), "-2.5e-17");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(-0.0), "0");
    }

    #[test]
    fn builtin_parsing() {
        assert_eq!(builtin_state("ghz", false).unwrap().0.n_qubits(), 3);
        assert_eq!(builtin_state("dicke4", false).unwrap().0.n_qubits(), 4);
        let (s, warn) =
            builtin_state("canonical:0.6,0.3741657386773941,0.5,0.5,0,0", false).unwrap();
        assert!(warn.is_none());
        assert!((s.amplitude(0).re - 0.5).abs() < 1e-15);
        assert!(builtin_state("canonical:1,2", false).is_err());
        assert!(builtin_state("canonical:1,1,1,1,1,0", false).is_err());
        assert!(builtin_state("canonical:1,1,1,1,1,0", true)
            .unwrap()
            .1
            .is_some());
        assert!(builtin_state("bell", false).is_err());
    }
}
