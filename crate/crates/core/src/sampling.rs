//! Seeded random states and local unitaries.
//!
//! Every sampler takes an explicit seed. Sample `i` of a batch draws from
//! ChaCha stream `i` of that seed, so batches are reproducible regardless of
//! how they are scheduled across threads.

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::state::{make_state, CanonicalParams, LocalUnitary, PureState};

/// Independent generator for `(seed, stream)`.
pub fn sub_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
pub fn haar_random_state(n: usize, seed: u64) -> Result<PureState> {
    haar_random_state_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn haar_random_state_with<R: Rng>(n: usize, rng: &mut R) -> Result<PureState> {
    let dim = 1usize.checked_shl(n as u32).unwrap_or(0);
    make_state(n, (0..dim).map(|_| complex_gaussian(rng)).collect()).map(|m| m.state)
}

/// Haar-random element of U(2).
pub fn haar_unitary_2<R: Rng>(rng: &mut R) -> Matrix2<Complex64> {
    // Uniform point on S³ gives Haar SU(2); a uniform phase completes U(2).
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / norm);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    Matrix2::new(
        Complex64::new(a, b),
        Complex64::new(c, d),
        Complex64::new(-c, d),
        Complex64::new(a, -b),
    ) * phase
}

pub fn random_local_unitary(n: usize, seed: u64) -> LocalUnitary {
    random_local_unitary_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_local_unitary_with<R: Rng>(n: usize, rng: &mut R) -> LocalUnitary {
    LocalUnitary::new((0..n).map(|_| haar_unitary_2(rng)).collect())
        .expect("Haar sample is unitary")
}

/// The two canonical-form families on which `b_C` vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroBlochFamily {
    /// `h = 0`, `a² + b² = c² + d² = 1/2`.
    Quadrilateral,
    /// `c = 0`, `d² = a² + b² + h² = 1/2`.
    HNonzero,
}

impl ZeroBlochFamily {
    pub fn name(self) -> &'static str {
        match self {
            Self::Quadrilateral => "quadrilateral",
            Self::HNonzero => "h-nonzero",
        }
    }
}

impl std::str::FromStr for ZeroBlochFamily {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadrilateral" => Ok(Self::Quadrilateral),
            "h-nonzero" => Ok(Self::HNonzero),
            other => Err(crate::Error::Parse {
                field: "family".into(),
                message: format!("unknown family `{other}`"),
            }),
        }
    }
}

pub fn sample_zero_bloch_manifold(family: ZeroBlochFamily, seed: u64) -> CanonicalParams {
    sample_zero_bloch_with(family, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn sample_zero_bloch_with<R: Rng>(family: ZeroBlochFamily, rng: &mut R) -> CanonicalParams {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let p = match family {
        ZeroBlochFamily::Quadrilateral => {
            let u: f64 = rng.random_range(0.0..std::f64::consts::FRAC_PI_2);
            let v: f64 = rng.random_range(0.0..std::f64::consts::FRAC_PI_2);
            CanonicalParams {
                a: r * u.cos(),
                b: r * u.sin(),
                c: r * v.cos(),
                d: r * v.sin(),
                h: 0.0,
                gamma: 0.0,
            }
        }
        ZeroBlochFamily::HNonzero => {
            // Uniform direction in the positive octant of a sphere of radius 1/√2.
            let g: [f64; 3] = std::array::from_fn(|_| rng.sample::<f64, _>(StandardNormal).abs());
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            CanonicalParams {
                a: r * g[0] / norm,
                b: r * g[1] / norm,
                c: 0.0,
                d: r,
                h: r * g[2] / norm,
                gamma: 0.0,
            }
        }
    };
    debug_assert!(p.validate().is_ok());
    p
}
