//! Mollification by a radial bump and the binomial approximant
//! `f_eps(x) = sum_{t=1}^{s} C(s,t) (-1)^{t-1} \int phi_eps(y) f(x - t y) dy`.
//!
//! The binomial weights sum to one, so
//! `f(x) - f_eps(x) = \int phi_eps(y) Delta_y^s f(x) dy = O(eps^s)` for smooth `f`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::gauss::GaussLegendre;
use crate::math::{binomial, binomial_exact, norm, sphere_area};
use crate::quadrature::SphereGrid;
use crate::radial::RadialFourierTable;
use crate::targets::{Smoothness, TargetFunction, TargetKind};

/// Radial points per unit ball below which quadrature is considered coarse.
pub const RESOLUTION_FLOOR: usize = 8;
/// Default radial points per unit ball.
pub const DEFAULT_RESOLUTION: usize = 24;

fn bump(r2: f64) -> f64 {
    if r2 < 1.0 {
        (-1.0 / (1.0 - r2)).exp()
    } else {
        0.0
    }
}

/// `\int_{B_1} exp(-1/(1-|x|^2)) dx`.
fn bump_mass(d: usize) -> f64 {
    let gl = GaussLegendre::new(16);
    let radial: f64 = gl
        .composite(0.0, 1.0, 64)
        .into_iter()
        .map(|(r, w)| w * bump(r * r) * r.powi(d as i32 - 1))
        .sum();
    sphere_area(d) * radial
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MollifierSpec {
    pub dim: usize,
    pub eps: f64,
    pub s: u32,
    norm_const: f64,
}

impl MollifierSpec {
    pub fn new(dim: usize, eps: f64, s: u32) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(invalid("mollifier scale must lie in (0, 1]"));
        }
        if s == 0 {
            return Err(invalid("difference order s must be at least 1"));
        }
        Ok(Self { dim, eps, s, norm_const: bump_mass(dim) })
    }

    /// `phi(x) = exp(-1/(1-|x|^2)) / Z_d` for `|x| < 1`.
    pub fn unit_value(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        bump(r2) / self.norm_const
    }
}

/// `phi_eps(x) = eps^{-d} phi(x / eps)`.
pub fn mollifier_value(spec: &MollifierSpec, x: &[f64]) -> f64 {
    let scaled: Vec<f64> = x.iter().map(|v| v / spec.eps).collect();
    spec.unit_value(&scaled) / spec.eps.powi(spec.dim as i32)
}

/// `Delta_y^s f(x) = sum_{t=0}^{s} C(s,t) (-1)^t f(x - t y)`.
pub fn finite_difference(f: impl Fn(&[f64]) -> f64, y: &[f64], s: u32, x: &[f64]) -> f64 {
    let mut pt = vec![0.0; x.len()];
    (0..=s)
        .map(|t| {
            for ((p, xi), yi) in pt.iter_mut().zip(x).zip(y) {
                *p = xi - t as f64 * yi;
            }
            let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(s, t) * f(&pt)
        })
        .sum()
}

/// `sum_{t=1}^{s} C(s,t) (-1)^{t-1}` in exact integer arithmetic.
pub fn binomial_weight_sum(s: u32) -> Option<i128> {
    let mut acc: i128 = 0;
    for t in 1..=s as u64 {
        let c = i128::try_from(binomial_exact(s as u64, t)?).ok()?;
        acc += if t % 2 == 1 { c } else { -c };
    }
    Some(acc)
}

/// Centrally symmetric quadrature for `\int phi(y) g(y) dy` on the unit ball,
/// weights renormalized to sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct BallRule {
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl BallRule {
    pub fn new(d: usize, resolution: usize) -> Result<Self> {
        if resolution < RESOLUTION_FLOOR {
            log::warn!("mollifier quadrature resolution {resolution} is below {RESOLUTION_FLOOR}");
        }
        let n_r = resolution.max(2);
        let gl = GaussLegendre::new(n_r);
        let radial: Vec<(f64, f64)> = gl.on_interval(0.0, 1.0).collect();
        let sphere = match d {
            1 => SphereGrid::new(1, 1)?,
            2 => SphereGrid::new(2, (2 * n_r).next_power_of_two().trailing_zeros())?,
            3 => SphereGrid::new(3, n_r as u32)?,
            _ => return Err(Error::UnsupportedDimension(d)),
        };
        let mut nodes = Vec::with_capacity(radial.len() * sphere.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for (r, wr) in &radial {
            let phi = bump(r * r) * r.powi(d as i32 - 1) * wr;
            for (omega, w) in sphere.iter() {
                nodes.push(omega.iter().map(|c| c * r).collect());
                weights.push(phi * w);
            }
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Precomputed binomial approximant at fixed `(d, s, eps)`.
#[derive(Debug, Clone)]
pub struct Mollifier {
    pub spec: MollifierSpec,
    rule: BallRule,
}

impl Mollifier {
    pub fn new(spec: MollifierSpec, resolution: usize) -> Result<Self> {
        Ok(Self { spec, rule: BallRule::new(spec.dim, resolution)? })
    }

    /// `f_eps(x) = sum_{t=1}^{s} C(s,t) (-1)^{t-1} \int phi_eps(y) f(x - t y) dy`.
    pub fn apply(&self, f: impl Fn(&[f64]) -> f64, x: &[f64]) -> f64 {
        let s = self.spec.s;
        let eps = self.spec.eps;
        let mut pt = vec![0.0; x.len()];
        let mut total = 0.0;
        for t in 1..=s {
            let c = binomial(s, t) * if t % 2 == 1 { 1.0 } else { -1.0 };
            let step = t as f64 * eps;
            let conv: f64 = self
                .rule
                .nodes
                .iter()
                .zip(&self.rule.weights)
                .map(|(y, w)| {
                    for ((p, xi), yi) in pt.iter_mut().zip(x).zip(y) {
                        *p = xi - step * yi;
                    }
                    w * f(&pt)
                })
                .sum();
            total += c * conv;
        }
        total
    }
}

/// One-shot evaluation of `f_eps(x)`.
pub fn smooth_approximant(f: &TargetFunction, s: u32, eps: f64, x: &[f64], resolution: usize) -> Result<f64> {
    if x.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: x.len() });
    }
    let m = Mollifier::new(MollifierSpec::new(f.dim(), eps, s)?, resolution)?;
    Ok(m.apply(|p| f.evaluate(p), x))
}

/// `n^{-1/d}`, clamped to `(0, 1]`.
pub fn epsilon_schedule(n: usize, d: usize) -> Result<f64> {
    if n == 0 || d == 0 {
        return Err(invalid("schedule needs n >= 1 and d >= 1"));
    }
    Ok((n as f64).powf(-1.0 / d as f64).min(1.0))
}

const PHI_HAT_STEP: f64 = 0.02;

/// `f_eps` as a target: values by quadrature, Fourier data
/// `f^(xi) sum_t C(s,t) (-1)^{t-1} phi^(t eps |xi|)`.
#[derive(Debug)]
pub struct MollifiedData {
    pub base: TargetFunction,
    mollifier: Mollifier,
    phi_hat: RadialFourierTable,
}

impl MollifiedData {
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.mollifier.apply(|p| self.base.evaluate(p), x)
    }

    pub fn fourier(&self, xi: &[f64]) -> Complex64 {
        let base = self.base.fourier(xi);
        if base == Complex64::new(0.0, 0.0) {
            return base;
        }
        base * self.symbol(norm(xi))
    }

    /// `sum_t C(s,t) (-1)^{t-1} phi^(t eps rho)`.
    pub fn symbol(&self, rho: f64) -> f64 {
        let s = self.mollifier.spec.s;
        let eps = self.mollifier.spec.eps;
        (1..=s)
            .map(|t| binomial(s, t) * if t % 2 == 1 { 1.0 } else { -1.0 } * self.phi_hat.eval(t as f64 * eps * rho))
            .sum()
    }
}

pub fn mollified_target(f: &TargetFunction, s: u32, eps: f64) -> Result<TargetFunction> {
    let d = f.dim();
    let spec = MollifierSpec::new(d, eps, s)?;
    let mollifier = Mollifier::new(spec, DEFAULT_RESOLUTION)?;
    let rho_max = s as f64 * eps * f.bandwidth() + 2.0;
    let z = spec.norm_const;
    let phi_hat = RadialFourierTable::build(d, rho_max, PHI_HAT_STEP, move |r| bump(r * r) / z)?;
    let data = MollifiedData { base: f.clone(), mollifier, phi_hat };
    Ok(TargetFunction::from_parts(
        d,
        f.support_radius() + s as f64 * eps,
        Smoothness::Analytic,
        TargetKind::Mollified(Arc::new(data)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_values() {
        assert!((epsilon_schedule(16, 2).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(epsilon_schedule(1, 3).unwrap(), 1.0);
        assert!((epsilon_schedule(1000, 3).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn binomial_weights_sum_to_one() {
        for s in 1..=10 {
            assert_eq!(binomial_weight_sum(s), Some(1));
        }
    }

    #[test]
    fn second_difference_of_quadratic() {
        let f = |x: &[f64]| x[0] * x[0];
        for x in [-0.7, 0.0, 0.4] {
            assert!((finite_difference(f, &[0.1], 2, &[x]) - 0.02).abs() < 1e-14);
        }
        let affine = |x: &[f64]| 3.0 * x[0] - 2.0 * x[1] + 1.0;
        assert!(finite_difference(affine, &[0.3, -0.2], 2, &[0.1, 0.5]).abs() < 1e-12);
    }

    #[test]
    fn approximant_keeps_constants_and_linear_functions() {
        let m = Mollifier::new(MollifierSpec::new(2, 0.25, 3).unwrap(), 16).unwrap();
        assert!((m.apply(|_| 2.5, &[0.1, 0.2]) - 2.5).abs() < 1e-13);
        let m1 = Mollifier::new(MollifierSpec::new(1, 0.5, 1).unwrap(), 16).unwrap();
        assert!((m1.apply(|x| x[0], &[0.3]) - 0.3).abs() < 1e-14);
    }

    #[test]
    fn mollifier_support_and_symmetry() {
        let spec = MollifierSpec::new(2, 0.25, 1).unwrap();
        assert_eq!(mollifier_value(&spec, &[0.25, 0.0]), 0.0);
        assert_eq!(mollifier_value(&spec, &[0.1, -0.05]), mollifier_value(&spec, &[-0.1, 0.05]));
        assert!(MollifierSpec::new(2, 0.0, 1).is_err());
        assert!(MollifierSpec::new(2, 0.5, 0).is_err());
    }
}
