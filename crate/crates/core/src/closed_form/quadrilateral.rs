//! Quadrilateral states `a|100⟩ + b|010⟩ + c|001⟩ + d|111⟩`.
//!
//! Their maximal product overlap is twice the circumradius of the cyclic
//! quadrilateral with sides `a, b, c, d`, provided that quadrilateral exists
//! and its circumcenter gives nonnegative weights `r_a … r_d`. Outside that
//! region the maximum sits elsewhere and the numeric solver has to be used.

use nalgebra::Vector2;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::overlap::ProductState;
use crate::state::{CanonicalParams, PureState, NORM_TOL};

/// Area below which the quadrilateral counts as collinear.
const AREA_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrilateralParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl QuadrilateralParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let sides = [a, b, c, d];
        if sides.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidParams(format!(
                "quadrilateral sides must be finite and nonnegative: {sides:?}"
            )));
        }
        let norm = sides.iter().map(|x| x * x).sum::<f64>();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!(
                "a²+b²+c²+d² = {norm}, expected 1"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let n = (a * a + b * b + c * c + d * d).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroState);
        }
        Self::new(a / n, b / n, c / n, d / n)
    }

    /// The `h = 0` canonical state `a|011⟩ + b|101⟩ + c|110⟩ + d|000⟩` is
    /// this state with every qubit flipped.
    pub fn from_canonical(p: &CanonicalParams) -> Result<Self> {
        if p.h > NORM_TOL {
            return Err(Error::InvalidParams(format!(
                "quadrilateral states need h = 0, got {}",
                p.h
            )));
        }
        Self::normalized(p.a, p.b, p.c, p.d)
    }

    pub fn sides(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn semiperimeter(&self) -> f64 {
        self.sides().iter().sum::<f64>() / 2.0
    }

    /// Every side is at most the semiperimeter.
    pub fn is_feasible(&self) -> bool {
        let s = self.semiperimeter();
        self.sides().iter().all(|&x| x <= s)
    }

    /// Brahmagupta area; Heron's formula when one side is zero.
    pub fn area(&self) -> f64 {
        let s = self.semiperimeter();
        self.sides()
            .iter()
            .map(|&x| (s - x).max(0.0))
            .product::<f64>()
            .sqrt()
    }

    /// Circumcenter weights `r_a, r_b, r_c, r_d`.
    pub fn r_coefficients(&self) -> [f64; 4] {
        let Self { a, b, c, d } = *self;
        let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
        [
            a * (b2 + c2 + d2 - a2) + 2.0 * b * c * d,
            b * (a2 + c2 + d2 - b2) + 2.0 * a * c * d,
            c * (b2 + a2 + d2 - c2) + 2.0 * a * b * d,
            d * (b2 + c2 + a2 - d2) + 2.0 * a * b * c,
        ]
    }

    /// `a|100⟩ + b|010⟩ + c|001⟩ + d|111⟩`.
    pub fn state(&self) -> PureState {
        let mut amps = [0.0; 8];
        amps[0b100] = self.a;
        amps[0b010] = self.b;
        amps[0b001] = self.c;
        amps[0b111] = self.d;
        PureState::from_real(3, &amps).expect("normalized parameters")
    }

    /// Area of the cyclic quadrilateral, or the reason the closed form does
    /// not apply.
    pub fn check_closed_form(&self) -> Result<f64> {
        if !self.is_feasible() {
            return Err(Error::InfeasibleQuadrilateral(format!(
                "a side exceeds the semiperimeter {:.6}",
                self.semiperimeter()
            )));
        }
        let area = self.area();
        if area <= AREA_FLOOR {
            return Err(Error::InfeasibleQuadrilateral(
                "degenerate quadrilateral with zero area".into(),
            ));
        }
        if let Some(r) = self.r_coefficients().iter().find(|r| **r < -NORM_TOL) {
            return Err(Error::InfeasibleQuadrilateral(format!(
                "negative circumcenter weight {r:.3e}"
            )));
        }
        Ok(area)
    }
}

/// `g = 2R`, with `R = √((ab+cd)(ac+bd)(ad+bc)) / (4S)`.
pub fn quadrilateral_overlap(p: &QuadrilateralParams) -> Result<f64> {
    let area = p.check_closed_form()?;
    let QuadrilateralParams { a, b, c, d } = *p;
    let circumradius = ((a * b + c * d) * (a * c + b * d) * (a * d + b * c)).sqrt() / (4.0 * area);
    Ok(2.0 * circumradius)
}

/// Nearest product state of [`QuadrilateralParams::state`].
pub fn quadrilateral_nearest(p: &QuadrilateralParams) -> Result<ProductState> {
    let area = p.check_closed_form()?;
    let QuadrilateralParams { a, b, c, d } = *p;
    let r = p.r_coefficients();
    if let Some(x) = r.iter().find(|x| **x < 0.0) {
        return Err(Error::NonPhysical(format!(
            "circumcenter weight {x:.3e} < 0"
        )));
    }
    let [ra, rb, rc, rd] = r;
    let spinor = |up: f64, down: f64, pair: f64| {
        let scale = 4.0 * area * pair.sqrt();
        Vector2::new(
            Complex64::new(up.sqrt() / scale, 0.0),
            Complex64::new(down.sqrt() / scale, 0.0),
        )
    };
    ProductState::normalized(vec![
        spinor(ra * rd, rb * rc, a * d + b * c),
        spinor(rb * rd, ra * rc, b * d + a * c),
        spinor(rc * rd, ra * rb, c * d + a * b),
    ])
}

/// Simplified overlap when `c² + d² = a² + b²`:
/// `g = [(c²+d²)ab + (a²+b²)cd] / √((ad+bc)(ac+bd)(ab+cd))`.
pub fn balanced_overlap(p: &QuadrilateralParams) -> f64 {
    let QuadrilateralParams { a, b, c, d } = *p;
    ((c * c + d * d) * a * b + (a * a + b * b) * c * d)
        / ((a * d + b * c) * (a * c + b * d) * (a * b + c * d)).sqrt()
}

/// Simplified nearest product state when `c² + d² = a² + b²`.
pub fn balanced_nearest(p: &QuadrilateralParams) -> Result<ProductState> {
    let QuadrilateralParams { a, b, c, d } = *p;
    let spinor = |up: f64, down: f64| {
        Vector2::new(
            Complex64::new(up.sqrt(), 0.0),
            Complex64::new(down.sqrt(), 0.0),
        )
    };
    ProductState::normalized(vec![
        spinor(b * c, a * d),
        spinor(a * c, b * d),
        spinor(d * c, a * b),
    ])
}

/// Sides drawn uniformly from the positive orthant of the unit sphere,
/// rejected until the closed form applies.
pub fn sample_feasible_quadrilateral<R: Rng>(rng: &mut R) -> QuadrilateralParams {
    loop {
        let g: [f64; 4] = std::array::from_fn(|_| rng.sample::<f64, _>(StandardNormal).abs());
        if let Ok(p) = QuadrilateralParams::normalized(g[0], g[1], g[2], g[3]) {
            if p.check_closed_form().is_ok() {
                return p;
            }
        }
    }
}
