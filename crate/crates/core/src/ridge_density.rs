//! Peano-kernel ingredients: derivative profiles, the polynomial part, the
//! variation-norm upper bound, and Fourier-side Sobolev seminorms.
//!
//! For `f` with back-projected profiles `F_omega`, Taylor's formula with
//! integral remainder on `[-1, 1]` gives, on the unit ball,
//!
//! `f(x) = p(x) + (1/k!) \int_S \int_{-1}^{1} F_omega^{(k+1)}(b) sigma_k(omega.x - b) db d omega`
//!
//! with `p(x) = \int_S sum_{j<=k} F_omega^{(j)}(-1)/j! (omega.x + 1)^j d omega`.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::fourier_radon::{filtered_profile, filtered_profiles, RidgeProfile, SpectralOptions};
use crate::gauss::GaussLegendre;
use crate::math::factorial;
use crate::polynomial::PolynomialPart;
use crate::quadrature::{LineGrid, SphereGrid};
use crate::targets::TargetFunction;

/// Sobolev order used for seminorm computations (`q = 2` only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessSpec {
    pub s: f64,
}

impl SmoothnessSpec {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(invalid("Sobolev order must be positive"));
        }
        Ok(Self { s })
    }

    /// The critical order `(d + 2k + 1) / 2` of the embedding into the
    /// variation space.
    pub fn embedding_order(d: usize, k: u32) -> Self {
        Self { s: (d as f64 + 2.0 * k as f64 + 1.0) / 2.0 }
    }
}

/// Samples of `F_omega^{(k+1)}` on `grid`.
pub fn derivative_profile(
    f: &TargetFunction,
    omega: &[f64],
    k: u32,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<RidgeProfile> {
    filtered_profile(f, omega, k + 1, grid, opts)
}

/// Tabulated Peano density over a sphere grid, shared by the variation bound,
/// the polynomial part and the network constructors.
#[derive(Debug, Clone)]
pub struct PeanoDensity {
    pub k: u32,
    pub dim: usize,
    pub grid: LineGrid,
    pub directions: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    /// `F_omega^{(k+1)}` per direction.
    pub profiles: Vec<RidgeProfile>,
    pub poly: PolynomialPart,
}

impl PeanoDensity {
    pub fn new(
        f: &TargetFunction,
        k: u32,
        sphere: &SphereGrid,
        grid: &LineGrid,
        opts: &SpectralOptions,
    ) -> Result<Self> {
        let entries = sphere
            .iter()
            .map(|(omega, w)| DirectionEntry::new(f, k, omega, w, grid, opts))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(f.dim(), k, sphere, grid, entries)
    }

    /// Combines per-direction entries (in sphere order) into the density.
    pub fn assemble(
        dim: usize,
        k: u32,
        sphere: &SphereGrid,
        grid: &LineGrid,
        entries: Vec<DirectionEntry>,
    ) -> Result<Self> {
        if sphere.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: sphere.dim() });
        }
        if entries.len() != sphere.len() {
            return Err(invalid("one entry per sphere node is required"));
        }
        let mut poly = PolynomialPart::zero(dim);
        let mut profiles = Vec::with_capacity(entries.len());
        for e in entries {
            poly.add_scaled(&e.poly, 1.0);
            profiles.push(e.profile);
        }
        Ok(Self {
            k,
            dim,
            grid: *grid,
            directions: sphere.nodes().to_vec(),
            weights: sphere.weights().to_vec(),
            profiles,
            poly,
        })
    }

    /// Trapezoid weights `tau_m` and node indices for `b in [-1, 1]`.
    pub fn unit_trapezoid(&self) -> Vec<(usize, f64)> {
        let (lo, hi) = self.grid.unit_interval_indices().expect("checked at construction");
        let h = self.grid.spacing();
        (lo..=hi).map(|m| (m, if m == lo || m == hi { 0.5 * h } else { h })).collect()
    }

    /// `(1/k!) sum_j w_j \int_{-1}^{1} |F_{omega_j}^{(k+1)}(b)| db`.
    pub fn variation_bound(&self) -> f64 {
        let rule = self.unit_trapezoid();
        let kf = factorial(self.k);
        self.profiles
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * rule.iter().map(|(m, t)| t * p.values[*m].abs()).sum::<f64>())
            .sum::<f64>()
            / kf
    }
}

/// One direction's share of the density: `F_omega^{(k+1)}` and the weighted
/// Taylor polynomial `w sum_{j<=k} F_omega^{(j)}(-1)/j! (omega.x + 1)^j`.
#[derive(Debug, Clone)]
pub struct DirectionEntry {
    pub profile: RidgeProfile,
    pub poly: PolynomialPart,
}

impl DirectionEntry {
    pub fn new(
        f: &TargetFunction,
        k: u32,
        omega: &[f64],
        weight: f64,
        grid: &LineGrid,
        opts: &SpectralOptions,
    ) -> Result<Self> {
        let lo = grid.unit_interval_indices()?.0;
        let orders: Vec<u32> = (0..=k + 1).collect();
        let mut all = filtered_profiles(f, omega, &orders, grid, opts)?;
        let profile = all.pop().expect("k + 2 orders");
        let powers = PolynomialPart::affine(1.0, omega).powers(k);
        let mut poly = PolynomialPart::zero(f.dim());
        for (j, prof) in all.iter().enumerate() {
            poly.add_scaled(&powers[j], weight * prof.values[lo] / factorial(j as u32));
        }
        Ok(Self { profile, poly })
    }
}

/// Upper bound on the variation norm of `f - p` from the Peano density.
pub fn variation_upper_bound(
    f: &TargetFunction,
    k: u32,
    sphere: &SphereGrid,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<f64> {
    Ok(PeanoDensity::new(f, k, sphere, grid, opts)?.variation_bound())
}

/// The polynomial part `p` of the Peano decomposition.
pub fn polynomial_part(
    f: &TargetFunction,
    k: u32,
    sphere: &SphereGrid,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<PolynomialPart> {
    Ok(PeanoDensity::new(f, k, sphere, grid, opts)?.poly)
}

const SEMINORM_DECAY: f64 = 1e-14;

/// `((2pi)^{-d} \int |xi|^{2s} |f^(xi)|^2 d xi)^{1/2}`.
pub fn sobolev_seminorm(f: &TargetFunction, s: f64) -> Result<f64> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(invalid("Sobolev order must be nonnegative"));
    }
    let d = f.dim();
    let sphere = match d {
        1 => SphereGrid::new(1, 1)?,
        2 => SphereGrid::new(2, 7)?,
        3 => SphereGrid::new(3, 24)?,
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    let cutoff = f.bandwidth();
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(invalid("target has no usable bandwidth"));
    }
    let gl = GaussLegendre::new(16);
    let panels = 8 + (4.0 * cutoff).ceil() as usize;
    let radial = gl.composite(0.0, cutoff, panels);
    let integrand = |omega: &[f64], rho: f64| -> f64 {
        let v = f.fourier_along(omega, rho).norm_sqr();
        let weight = if s == 0.0 { 1.0 } else { rho.powf(2.0 * s) };
        weight * v * rho.powi(d as i32 - 1)
    };
    let mut total = 0.0;
    let mut peak = 0.0f64;
    let mut edge = 0.0f64;
    for (omega, w) in sphere.iter() {
        for (rho, wr) in &radial {
            let v = integrand(omega, *rho);
            peak = peak.max(v);
            total += w * wr * v;
        }
        edge = edge.max(integrand(omega, cutoff * (1.0 - 1e-9)));
    }
    if peak > 0.0 && edge > SEMINORM_DECAY * peak {
        return Err(Error::NotDecayed(edge / peak));
    }
    Ok((total / (2.0 * PI).powi(d as i32)).sqrt())
}
