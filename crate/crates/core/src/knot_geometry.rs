//! The (2,3) torus knot on the unit 3-sphere `|u|^2 + |w|^2 = 1` in `C^2`.
//!
//! Two parametrisations of the same knot type are provided:
//! - `Clifford`: `t ↦ (e^{2πi·2t}, e^{2πi·3t}) / √2`, on the torus `|u| = |w|`;
//! - `EquationLocus`: `t ↦ (r e^{2πi·2t}, r^{3/2} e^{2πi·3t})`, which satisfies
//!   `u^3 = w^2` exactly, where `r` is the real root of `r^3 + r^2 = 1`
//!   (forced by the sphere constraint).

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sphere constraint and construction identities.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-12;
/// Residuals aggregated over many samples.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
/// Fewest samples for which every phase step stays below π.
pub const MIN_SAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KnotError {
    #[error("parameter t = {0} is outside [0, 1)")]
    ParameterOutOfRange(f64),
    #[error("at least {MIN_SAMPLES} samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("u^3 = w^2 holds only on the equation-locus variant")]
    WrongVariant,
    #[error("unknown curve variant `{0}`")]
    UnknownVariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveVariant {
    Clifford,
    EquationLocus,
}

impl CurveVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveVariant::Clifford => "clifford",
            CurveVariant::EquationLocus => "equation-locus",
        }
    }
}

impl fmt::Display for CurveVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CurveVariant {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "clifford" => Ok(CurveVariant::Clifford),
            "equation-locus" => Ok(CurveVariant::EquationLocus),
            other => Err(KnotError::UnknownVariant(other.into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusKnotSample {
    pub t: f64,
    pub u: Complex64,
    pub w: Complex64,
}

impl TorusKnotSample {
    pub fn sphere_defect(&self) -> f64 {
        (self.u.norm_sqr() + self.w.norm_sqr() - 1.0).abs()
    }

    pub fn distance(&self, other: &TorusKnotSample) -> f64 {
        ((self.u - other.u).norm_sqr() + (self.w - other.w).norm_sqr()).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnotCurveConfig {
    variant: CurveVariant,
    samples: usize,
}

impl KnotCurveConfig {
    pub fn new(variant: CurveVariant, samples: usize) -> Result<Self, KnotError> {
        if samples < MIN_SAMPLES {
            return Err(KnotError::TooFewSamples(samples));
        }
        Ok(KnotCurveConfig { variant, samples })
    }

    pub fn variant(&self) -> CurveVariant {
        self.variant
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Points at `t = k / samples` for `k = 0..samples`.
    pub fn sample_points(&self) -> Vec<TorusKnotSample> {
        (0..self.samples)
            .map(|k| torus_knot_point(k as f64 / self.samples as f64, self.variant).expect("t in [0, 1)"))
            .collect()
    }
}

/// Real root of `r^3 + r^2 - 1` in `(0, 1)`, by bisection to machine precision.
pub fn equation_locus_radius() -> f64 {
    let f = |r: f64| r * r * r + r * r - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-16 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn phase(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * turns)
}

pub fn torus_knot_point(t: f64, variant: CurveVariant) -> Result<TorusKnotSample, KnotError> {
    if !(0.0..1.0).contains(&t) {
        return Err(KnotError::ParameterOutOfRange(t));
    }
    let (ru, rw) = match variant {
        CurveVariant::Clifford => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        CurveVariant::EquationLocus => {
            let r = equation_locus_radius();
            (r, r.powf(1.5))
        }
    };
    Ok(TorusKnotSample { t, u: phase(2.0 * t) * ru, w: phase(3.0 * t) * rw })
}

/// Winding numbers of the `u` and `w` phases along a closed sampled curve,
/// summing principal-value phase increments (including the closing step).
pub fn winding_of(samples: &[TorusKnotSample]) -> (i64, i64) {
    let wind = |f: &dyn Fn(&TorusKnotSample) -> Complex64| {
        let n = samples.len();
        let total: f64 = (0..n)
            .map(|k| {
                let a = f(&samples[k]);
                let b = f(&samples[(k + 1) % n]);
                (b * a.conj()).arg()
            })
            .sum();
        (total / TAU).round() as i64
    };
    (wind(&|s| s.u), wind(&|s| s.w))
}

pub fn winding_numbers(config: &KnotCurveConfig) -> (i64, i64) {
    winding_of(&config.sample_points())
}

/// `max |u^3 - w^2|` over the sampled equation-locus curve.
pub fn max_equation_residual(config: &KnotCurveConfig) -> Result<f64, KnotError> {
    if config.variant != CurveVariant::EquationLocus {
        return Err(KnotError::WrongVariant);
    }
    Ok(config.sample_points().iter().map(|s| (s.u.powu(3) - s.w.powu(2)).norm()).fold(0.0, f64::max))
}

pub fn max_sphere_defect(samples: &[TorusKnotSample]) -> f64 {
    samples.iter().map(TorusKnotSample::sphere_defect).fold(0.0, f64::max)
}

pub fn min_pairwise_distance(samples: &[TorusKnotSample]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in samples.iter().enumerate() {
        for b in &samples[i + 1..] {
            best = best.min(a.distance(b));
        }
    }
    best
}

/// Everything the CLI reports about a sampled curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotReport {
    pub variant: CurveVariant,
    pub samples: usize,
    pub winding: [i64; 2],
    /// `max |u^3 - w^2|`; `None` for the Clifford variant, where it does not apply.
    pub max_residual: Option<f64>,
    pub max_sphere_defect: f64,
    pub min_pairwise_distance: f64,
    /// True when every tolerance holds and the winding pair is (2, 3).
    pub ok: bool,
}

pub fn knot_report(config: &KnotCurveConfig) -> KnotReport {
    let points = config.sample_points();
    let (wu, ww) = winding_of(&points);
    let max_residual = max_equation_residual(config).ok();
    let sphere = max_sphere_defect(&points);
    let min_dist = min_pairwise_distance(&points);
    let mut ok = (wu, ww) == (2, 3) && sphere <= CONSTRUCTION_TOLERANCE && min_dist > 0.0;
    if let Some(r) = max_residual {
        ok &= r <= RESIDUAL_TOLERANCE;
    }
    if config.variant == CurveVariant::Clifford {
        ok &= points.iter().all(|s| (s.u.norm() - s.w.norm()).abs() <= CONSTRUCTION_TOLERANCE);
    }
    KnotReport {
        variant: config.variant,
        samples: config.samples,
        winding: [wu, ww],
        max_residual,
        max_sphere_defect: sphere,
        min_pairwise_distance: min_dist,
        ok,
    }
}
