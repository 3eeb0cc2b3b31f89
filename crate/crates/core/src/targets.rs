//! Closed-form test functions with analytic (or tabulated) Fourier data.
//!
//! Fourier convention: `f^(xi) = \int e^{-i xi.x} f(x) dx`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::math::{dot, norm};
use crate::mollify::MollifiedData;
use crate::radial::RadialFourierTable;

/// Gaussian tails below this value are treated as exactly zero.
pub const TRUNCATION_TOLERANCE: f64 = 1e-14;

/// Largest accepted truncation radius for Gaussian targets.
pub const MAX_SUPPORT_RADIUS: f64 = 10.0;

const CUSP_RHO_MAX: f64 = 160.0;
const CUSP_RHO_STEP: f64 = 0.025;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothness {
    Analytic,
    /// Finite Sobolev-type regularity of the given order.
    Finite(f64),
}

/// `A exp(-|x - c|^2 / (2 sigma^2))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSpec {
    pub center: Vec<f64>,
    /// The variance `sigma^2`.
    pub width: f64,
    pub amplitude: f64,
}

impl GaussianSpec {
    pub fn centered(d: usize, width: f64, amplitude: f64) -> Self {
        Self { center: alloc::vec![0.0; d], width, amplitude }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Radius (about the origin) outside which the Gaussian is below the
    /// truncation tolerance.
    pub fn truncation_radius(&self) -> f64 {
        let a = self.amplitude.abs();
        let tail = if a > TRUNCATION_TOLERANCE {
            (2.0 * self.width * (a / TRUNCATION_TOLERANCE).ln()).sqrt()
        } else {
            0.0
        };
        norm(&self.center) + tail
    }

    pub fn validate(&self) -> Result<()> {
        if self.center.is_empty() {
            return Err(Error::UnsupportedDimension(0));
        }
        if !(self.width > 0.0 && self.width.is_finite()) {
            return Err(invalid("Gaussian width sigma^2 must be positive and finite"));
        }
        if !self.amplitude.is_finite() || self.center.iter().any(|c| !c.is_finite()) {
            return Err(invalid("Gaussian amplitude and center must be finite"));
        }
        if self.truncation_radius() > MAX_SUPPORT_RADIUS {
            return Err(invalid("Gaussian tail exceeds the admissible support radius"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub(crate) enum TargetKind {
    Gaussian { spec: GaussianSpec, radius: f64 },
    Cusp { gamma: f64, table: Arc<RadialFourierTable> },
    Combination(Vec<(f64, TargetFunction)>),
    Mollified(Arc<MollifiedData>),
}

/// A smooth test function with pointwise values and Fourier transform.
#[derive(Debug, Clone)]
pub struct TargetFunction {
    dim: usize,
    support_radius: f64,
    smoothness: Smoothness,
    pub(crate) kind: TargetKind,
}

pub fn make_gaussian(spec: GaussianSpec) -> Result<TargetFunction> {
    spec.validate()?;
    let radius = spec.truncation_radius();
    Ok(TargetFunction {
        dim: spec.dim(),
        support_radius: radius,
        smoothness: Smoothness::Analytic,
        kind: TargetKind::Gaussian { spec, radius },
    })
}

/// `R f(omega, b) = A (2 pi sigma^2)^{(d-1)/2} exp(-(b - omega.c)^2 / (2 sigma^2))`.
pub fn gaussian_radon_oracle(spec: &GaussianSpec, omega: &[f64], b: f64) -> Result<f64> {
    spec.validate()?;
    if omega.len() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), got: omega.len() });
    }
    let d = spec.dim() as f64;
    let shift = b - dot(omega, &spec.center);
    Ok(spec.amplitude
        * (2.0 * PI * spec.width).powf(0.5 * (d - 1.0))
        * (-shift * shift / (2.0 * spec.width)).exp())
}

/// `max(0, 1 - |x|)^gamma`, supported in the closed unit ball.
///
/// Its Fourier transform is tabulated once by radial quadrature; frequencies
/// beyond the table return zero.
pub fn make_cusp_radial(gamma: f64, d: usize) -> Result<TargetFunction> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(invalid("cusp exponent must be positive"));
    }
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let table =
        RadialFourierTable::build(d, CUSP_RHO_MAX, CUSP_RHO_STEP, |r| (1.0 - r).max(0.0).powf(gamma))?;
    Ok(TargetFunction {
        dim: d,
        support_radius: 1.0,
        smoothness: Smoothness::Finite(gamma),
        kind: TargetKind::Cusp { gamma, table: Arc::new(table) },
    })
}

impl TargetFunction {
    pub(crate) fn from_parts(dim: usize, support_radius: f64, smoothness: Smoothness, kind: TargetKind) -> Self {
        Self { dim, support_radius, smoothness, kind }
    }

    /// The identically zero function.
    pub fn zero(d: usize) -> Self {
        Self {
            dim: d,
            support_radius: 0.0,
            smoothness: Smoothness::Analytic,
            kind: TargetKind::Combination(Vec::new()),
        }
    }

    /// Linear combination `sum c_i f_i` of targets of equal dimension.
    pub fn combination(terms: Vec<(f64, TargetFunction)>) -> Result<Self> {
        let dim = match terms.first() {
            Some((_, f)) => f.dim,
            None => return Err(invalid("empty combination; use TargetFunction::zero")),
        };
        if let Some((_, bad)) = terms.iter().find(|(_, f)| f.dim != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.dim });
        }
        let support_radius = terms.iter().map(|(_, f)| f.support_radius).fold(0.0, f64::max);
        let smoothness = terms.iter().fold(Smoothness::Analytic, |acc, (_, f)| match (acc, f.smoothness) {
            (Smoothness::Finite(a), Smoothness::Finite(b)) => Smoothness::Finite(a.min(b)),
            (Smoothness::Finite(a), _) | (_, Smoothness::Finite(a)) => Smoothness::Finite(a),
            _ => Smoothness::Analytic,
        });
        Ok(Self { dim, support_radius, smoothness, kind: TargetKind::Combination(terms) })
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            support_radius: self.support_radius,
            smoothness: self.smoothness,
            kind: TargetKind::Combination(alloc::vec![(c, self.clone())]),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    /// Frequency beyond which `|f^|` is negligible (used for grid warnings and
    /// quadrature cutoffs).
    pub fn bandwidth(&self) -> f64 {
        match &self.kind {
            TargetKind::Gaussian { spec, .. } => {
                // exp(-sigma^2 t^2 / 2) < 1e-16
                (2.0 * 16.0 * 10.0f64.ln()).sqrt() / spec.width.sqrt()
            }
            TargetKind::Cusp { table, .. } => table.rho_max(),
            TargetKind::Combination(terms) => {
                terms.iter().map(|(_, f)| f.bandwidth()).fold(0.0, f64::max)
            }
            TargetKind::Mollified(m) => m.base.bandwidth(),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.kind {
            TargetKind::Gaussian { spec, radius } => {
                let r2: f64 = x.iter().zip(&spec.center).map(|(a, c)| (a - c) * (a - c)).sum();
                let v = spec.amplitude * (-r2 / (2.0 * spec.width)).exp();
                if norm(x) > *radius || v.abs() < TRUNCATION_TOLERANCE {
                    0.0
                } else {
                    v
                }
            }
            TargetKind::Cusp { gamma, .. } => (1.0 - norm(x)).max(0.0).powf(*gamma),
            TargetKind::Combination(terms) => terms.iter().map(|(c, f)| c * f.evaluate(x)).sum(),
            TargetKind::Mollified(m) => m.evaluate(x),
        }
    }

    pub fn fourier(&self, xi: &[f64]) -> Complex64 {
        debug_assert_eq!(xi.len(), self.dim);
        match &self.kind {
            TargetKind::Gaussian { spec, .. } => {
                let d = self.dim as f64;
                let r2 = dot(xi, xi);
                let mag = spec.amplitude
                    * (2.0 * PI * spec.width).powf(0.5 * d)
                    * (-0.5 * spec.width * r2).exp();
                let phase = -dot(xi, &spec.center);
                Complex64::from_polar(mag, phase)
            }
            TargetKind::Cusp { table, .. } => Complex64::new(table.eval(norm(xi)), 0.0),
            TargetKind::Combination(terms) => terms
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, (c, f)| acc + f.fourier(xi) * *c),
            TargetKind::Mollified(m) => m.fourier(xi),
        }
    }

    /// `f^(omega t)` along a direction.
    pub fn fourier_along(&self, omega: &[f64], t: f64) -> Complex64 {
        let xi: Vec<f64> = omega.iter().map(|w| w * t).collect();
        self.fourier(&xi)
    }
}
