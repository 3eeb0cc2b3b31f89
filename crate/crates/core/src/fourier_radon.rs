//! Radon profiles, the filtered back-projection filter and pointwise
//! reconstruction.
//!
//! Profiles are produced spectrally from the target's Fourier transform using
//! the slice identity `g_omega^(t) = f^(omega t)`. With the inverse transform
//! normalized as `g(b) = (1/2pi) \int g^(t) e^{itb} dt`, the back-projection
//! multiplier is `|t|^{d-1} / (2 (2pi)^{d-1})`, so that
//! `f(x) = \int_{S^{d-1}} F_omega(omega.x) d omega`.
//!
//! For even `d` the multiplier has a kink at `t = 0` and the discrete sum over
//! the dual grid carries an `O(dt^2)` error that no amount of sample
//! refinement removes. It is cancelled with the generalized Euler-Maclaurin
//! (Navot) expansion, whose coefficients only need the moments of the Radon
//! profile.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::fft::Fft;
use crate::gauss::GaussLegendre;
use crate::interp::cubic_uniform;
use crate::math::{dot, factorial, norm, powi, zeta_negative};
use crate::quadrature::{LineGrid, SphereGrid};
use crate::targets::TargetFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// `R f(omega, .)`
    Radon,
    /// `F_omega = H_d R f(omega, .)`
    Backprojected,
    /// `F_omega^{(j)}`
    Derivative(u32),
}

/// Knobs of the spectral engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    /// Zero-padding factor (power of two); the transform runs on `[-P L, P L)`.
    pub padding: usize,
    /// Fraction of the Nyquist frequency where the high-frequency taper starts.
    pub taper_start: f64,
    /// Number of kink-correction terms kept for even dimensions.
    pub kink_terms: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self { padding: 4, taper_start: 0.8, kink_terms: 3 }
    }
}

impl SpectralOptions {
    fn validate(&self) -> Result<()> {
        if self.padding == 0 || !self.padding.is_power_of_two() {
            return Err(invalid("padding must be a power of two"));
        }
        if !(self.taper_start > 0.0 && self.taper_start <= 1.0) {
            return Err(invalid("taper start must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Samples of a one-dimensional profile along a direction.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeProfile {
    pub direction: Vec<f64>,
    pub grid: LineGrid,
    pub values: Vec<f64>,
    pub kind: ProfileKind,
    /// Relative spectral mass removed by the high-frequency taper.
    pub taper_loss: f64,
}

impl RidgeProfile {
    /// Cubic interpolation of the samples; zero outside the grid.
    pub fn value_at(&self, b: f64) -> f64 {
        cubic_uniform(&self.values, -self.grid.half_width(), self.grid.spacing(), b)
    }
}

/// Normalized back-projection constant `1 / (2 (2pi)^{d-1})`.
pub fn backprojection_constant(d: usize) -> f64 {
    0.5 / (2.0 * PI).powi(d as i32 - 1)
}

fn taper(t: f64, nyquist: f64, start: f64) -> f64 {
    let a = start * nyquist;
    let t = t.abs();
    if t <= a {
        1.0
    } else if t >= nyquist {
        0.0
    } else {
        0.5 * (1.0 + (PI * (t - a) / (nyquist - a)).cos())
    }
}

fn fft_frequency(j: usize, n: usize, dt: f64) -> f64 {
    if j < n / 2 {
        j as f64 * dt
    } else {
        (j as f64 - n as f64) * dt
    }
}

/// Dual frequencies `t_m = m pi / L`, `m = -N/2 .. N/2 - 1`, ascending.
pub fn dual_frequencies(grid: &LineGrid) -> Vec<f64> {
    let n = grid.count() as isize;
    let dt = grid.frequency_spacing();
    (-n / 2..n / 2).map(|m| m as f64 * dt).collect()
}

/// `g_omega^(t_m) = f^(omega t_m)` on the dual frequencies of `grid`.
pub fn radon_slice(f: &TargetFunction, omega: &[f64], grid: &LineGrid) -> Result<Vec<Complex64>> {
    check_direction(f.dim(), omega)?;
    Ok(dual_frequencies(grid).into_iter().map(|t| f.fourier_along(omega, t)).collect())
}

fn check_direction(d: usize, omega: &[f64]) -> Result<()> {
    if omega.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: omega.len() });
    }
    if (norm(omega) - 1.0).abs() > 1e-10 {
        return Err(invalid("direction must be a unit vector"));
    }
    Ok(())
}

/// Spectral multiplier applied on top of the slice.
#[derive(Debug, Clone, Copy)]
enum Multiplier {
    Identity,
    /// `(it)^order |t|^{d-1} / (2 (2pi)^{d-1})`
    Derivative { order: u32, d: usize },
}

impl Multiplier {
    fn eval(self, t: f64) -> Complex64 {
        match self {
            Multiplier::Identity => Complex64::new(1.0, 0.0),
            Multiplier::Derivative { order, d } => {
                let mag = backprojection_constant(d) * t.abs().powi(d as i32 - 1);
                Complex64::new(0.0, t).powu(order) * mag
            }
        }
    }
}

/// Padded transform of one direction.
struct PaddedSpectrum {
    n: usize,
    half_width: f64,
    spacing: f64,
    slice: Vec<Complex64>,
    plan: Fft,
}

impl PaddedSpectrum {
    fn new(f: &TargetFunction, omega: &[f64], grid: &LineGrid, opts: &SpectralOptions) -> Result<Self> {
        opts.validate()?;
        check_direction(f.dim(), omega)?;
        let n = grid.count() * opts.padding;
        let half_width = grid.half_width() * opts.padding as f64;
        let dt = PI / half_width;
        let slice = (0..n).map(|j| f.fourier_along(omega, fft_frequency(j, n, dt))).collect();
        Ok(Self { n, half_width, spacing: grid.spacing(), slice, plan: Fft::new(n)? })
    }

    fn dt(&self) -> f64 {
        PI / self.half_width
    }

    /// Trapezoid sum `(1/2pi) sum_m dt M(t_m) tau(t_m) g^(t_m) e^{i t_m b_n}`
    /// at every padded node, plus the relative taper loss.
    fn synthesize(&self, mult: Multiplier, taper_start: Option<f64>) -> (Vec<f64>, f64) {
        let n = self.n;
        let dt = self.dt();
        let nyquist = PI / self.spacing;
        let scale = 1.0 / (2.0 * self.half_width);
        let mut total = 0.0;
        let mut lost = 0.0;
        let mut buf: Vec<Complex64> = (0..n)
            .map(|j| {
                if j == n / 2 {
                    return Complex64::new(0.0, 0.0);
                }
                let t = fft_frequency(j, n, dt);
                let raw = self.slice[j] * mult.eval(t);
                let tau = taper_start.map_or(1.0, |a| taper(t, nyquist, a));
                total += raw.norm();
                lost += raw.norm() * (1.0 - tau);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                raw * (tau * sign * scale)
            })
            .collect();
        self.plan.inverse(&mut buf);
        let loss = if total > 0.0 { lost / total } else { 0.0 };
        (buf.into_iter().map(|c| c.re).collect(), loss)
    }

    fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing
    }
}

/// Samples of `R f(omega, b_m)` on `grid`.
pub fn radon_transform(
    f: &TargetFunction,
    omega: &[f64],
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<RidgeProfile> {
    if grid.nyquist() < f.bandwidth() {
        log::warn!(
            "grid Nyquist frequency {:.3} is below the target bandwidth {:.3}",
            grid.nyquist(),
            f.bandwidth()
        );
    }
    if grid.half_width() < f.support_radius() {
        log::debug!("line grid half-width is below the target support radius");
    }
    let spec = PaddedSpectrum::new(f, omega, grid, opts)?;
    let (padded, _) = spec.synthesize(Multiplier::Identity, None);
    Ok(RidgeProfile {
        direction: omega.to_vec(),
        grid: *grid,
        values: window(&padded, grid, opts.padding),
        kind: ProfileKind::Radon,
        taper_loss: 0.0,
    })
}

fn window(padded: &[f64], grid: &LineGrid, padding: usize) -> Vec<f64> {
    let offset = (padding - 1) * grid.count() / 2;
    padded[offset..offset + grid.count()].to_vec()
}

/// `F_omega^{(order)}` sampled on `grid`; `order = 0` is the back-projected
/// profile `F_omega` itself.
pub fn filtered_profile(
    f: &TargetFunction,
    omega: &[f64],
    order: u32,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<RidgeProfile> {
    Ok(filtered_profiles(f, omega, &[order], grid, opts)?.remove(0))
}

/// Several derivative orders of `F_omega` from a single slice evaluation.
pub fn filtered_profiles(
    f: &TargetFunction,
    omega: &[f64],
    orders: &[u32],
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<Vec<RidgeProfile>> {
    let d = f.dim();
    let spec = PaddedSpectrum::new(f, omega, grid, opts)?;
    let radon = if d % 2 == 0 && opts.kink_terms > 0 {
        Some(spec.synthesize(Multiplier::Identity, None).0)
    } else {
        None
    };
    orders
        .iter()
        .map(|&order| {
            let mult = Multiplier::Derivative { order, d };
            let (mut padded, taper_loss) = spec.synthesize(mult, Some(opts.taper_start));
            if let Some(radon) = &radon {
                kink_correction(&spec, radon, order, d, opts.kink_terms, &mut padded);
            }
            if taper_loss > 1e-8 {
                log::warn!("high-frequency taper removed {taper_loss:.2e} of the spectral mass");
            }
            Ok(RidgeProfile {
                direction: omega.to_vec(),
                grid: *grid,
                values: window(&padded, grid, opts.padding),
                kind: if order == 0 { ProfileKind::Backprojected } else { ProfileKind::Derivative(order) },
                taper_loss,
            })
        })
        .collect()
}

/// Removes the leading trapezoid errors caused by `|t|^{d-1}` at `t = 0`.
///
/// With `M(t) = c (it)^j |t|^beta`, `beta = d - 1` odd, and
/// `psi(t) = g^(t) e^{itb} = sum_m psi_m t^m`, the dual-grid sum exceeds the
/// integral by `sum_m 2 zeta(-gamma) c i^j psi_m dt^{gamma+1}` with
/// `gamma = beta + j + m` over `m` with `j + m` even.
fn kink_correction(
    spec: &PaddedSpectrum,
    radon: &[f64],
    order: u32,
    d: usize,
    terms: usize,
    out: &mut [f64],
) {
    let beta = d as u32 - 1;
    let j = order;
    let m_first = j % 2;
    let m_max = m_first + 2 * (terms as u32 - 1);
    let dt = spec.dt();
    let c = backprojection_constant(d);

    // g^(p)(0)/p! = (-i)^p mu_p / p!, with mu_p the p-th moment of the profile
    let h = spec.spacing;
    let moments: Vec<f64> = (0..=m_max)
        .map(|p| (0..radon.len()).map(|i| h * powi(spec.node(i), p) * radon[i]).sum())
        .collect();
    let ghat: Vec<Complex64> = moments
        .iter()
        .enumerate()
        .map(|(p, mu)| Complex64::new(0.0, -1.0).powu(p as u32) * (mu / factorial(p as u32)))
        .collect();
    let ij = Complex64::new(0.0, 1.0).powu(j);

    let coeffs: Vec<(u32, f64)> = (m_first..=m_max)
        .step_by(2)
        .map(|m| {
            let gamma = beta + j + m;
            (m, 2.0 * zeta_negative(gamma) * dt.powi(gamma as i32 + 1) * c / (2.0 * PI))
        })
        .collect();

    for (i, v) in out.iter_mut().enumerate() {
        let b = spec.node(i);
        let mut corr = Complex64::new(0.0, 0.0);
        for &(m, k) in &coeffs {
            // psi_m(b) = sum_{p+q=m} ghat_p (ib)^q / q!
            let mut psi = Complex64::new(0.0, 0.0);
            for p in 0..=m {
                let q = m - p;
                psi += ghat[p as usize] * Complex64::new(0.0, b).powu(q) / factorial(q);
            }
            corr += ij * psi * k;
        }
        *v -= corr.re;
    }
}

/// Applies the back-projection multiplier to sampled Radon data as a circular
/// Fourier multiplier on the profile's own grid (no padding, taper included).
pub fn backproject_filter(profile: &RidgeProfile, d: usize, opts: &SpectralOptions) -> Result<RidgeProfile> {
    if profile.kind != ProfileKind::Radon {
        return Err(invalid("back-projection expects a Radon profile"));
    }
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let grid = profile.grid;
    let n = grid.count();
    let plan = Fft::new(n)?;
    let dt = grid.frequency_spacing();
    let nyquist = grid.nyquist();
    let mut buf: Vec<Complex64> = profile.values.iter().map(|v| Complex64::new(*v, 0.0)).collect();
    plan.forward(&mut buf);
    let c = backprojection_constant(d);
    let mut total = 0.0;
    let mut lost = 0.0;
    for (j, z) in buf.iter_mut().enumerate() {
        if j == n / 2 {
            *z = Complex64::new(0.0, 0.0);
            continue;
        }
        let t = fft_frequency(j, n, dt);
        let tau = taper(t, nyquist, opts.taper_start);
        let m = c * t.abs().powi(d as i32 - 1);
        total += (*z * m).norm();
        lost += (*z * m).norm() * (1.0 - tau);
        *z *= m * tau / n as f64;
    }
    plan.inverse(&mut buf);
    Ok(RidgeProfile {
        direction: profile.direction.clone(),
        grid,
        values: buf.into_iter().map(|z| z.re).collect(),
        kind: ProfileKind::Backprojected,
        taper_loss: if total > 0.0 { lost / total } else { 0.0 },
    })
}

/// Hyperplane quadrature of `f` over `{x : omega.x = b}`, clipped to the
/// support ball. `resolution` is the number of Gauss points per axis.
pub fn radon_direct(f: &TargetFunction, omega: &[f64], b: f64, resolution: usize) -> Result<f64> {
    let d = f.dim();
    check_direction(d, omega)?;
    let r = f.support_radius();
    if b.abs() >= r {
        return Ok(0.0);
    }
    let chord = (r * r - b * b).sqrt();
    let gl = GaussLegendre::new(16);
    let panels = resolution.div_ceil(16).max(1);
    let base: Vec<f64> = omega.iter().map(|w| w * b).collect();
    match d {
        1 => Ok(f.evaluate(&base)),
        2 => {
            let perp = [-omega[1], omega[0]];
            Ok(gl
                .composite(-chord, chord, panels)
                .into_iter()
                .map(|(s, w)| w * f.evaluate(&[base[0] + s * perp[0], base[1] + s * perp[1]]))
                .sum())
        }
        3 => {
            let (e1, e2) = orthonormal_complement(omega);
            let radial = gl.composite(0.0, chord, panels);
            let m = resolution.max(8);
            let dphi = 2.0 * PI / m as f64;
            let mut acc = 0.0;
            for (rho, wr) in radial {
                let mut ring = 0.0;
                for k in 0..m {
                    let phi = dphi * k as f64;
                    let (c, s) = (rho * phi.cos(), rho * phi.sin());
                    let x = [
                        base[0] + c * e1[0] + s * e2[0],
                        base[1] + c * e1[1] + s * e2[1],
                        base[2] + c * e1[2] + s * e2[2],
                    ];
                    ring += f.evaluate(&x);
                }
                acc += wr * rho * ring * dphi;
            }
            Ok(acc)
        }
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

fn orthonormal_complement(omega: &[f64]) -> ([f64; 3], [f64; 3]) {
    let pick = if omega[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let proj = dot(&pick, omega);
    let mut e1 = [pick[0] - proj * omega[0], pick[1] - proj * omega[1], pick[2] - proj * omega[2]];
    let n1 = norm(&e1);
    e1.iter_mut().for_each(|v| *v /= n1);
    let e2 = [
        omega[1] * e1[2] - omega[2] * e1[1],
        omega[2] * e1[0] - omega[0] * e1[2],
        omega[0] * e1[1] - omega[1] * e1[0],
    ];
    (e1, e2)
}

/// Filtered back-projection with precomputed per-direction profiles.
#[derive(Debug, Clone)]
pub struct Reconstructor {
    weights: Vec<f64>,
    profiles: Vec<RidgeProfile>,
}

impl Reconstructor {
    pub fn new(
        f: &TargetFunction,
        sphere: &SphereGrid,
        grid: &LineGrid,
        opts: &SpectralOptions,
    ) -> Result<Self> {
        if sphere.dim() != f.dim() {
            return Err(Error::DimensionMismatch { expected: f.dim(), got: sphere.dim() });
        }
        let profiles = sphere
            .nodes()
            .iter()
            .map(|w| filtered_profile(f, w, 0, grid, opts))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { weights: sphere.weights().to_vec(), profiles })
    }

    /// From back-projected profiles computed elsewhere, in sphere order.
    pub fn from_profiles(sphere: &SphereGrid, profiles: Vec<RidgeProfile>) -> Result<Self> {
        if profiles.len() != sphere.len() {
            return Err(invalid("one profile per sphere node is required"));
        }
        if profiles.iter().any(|p| p.kind != ProfileKind::Backprojected) {
            return Err(invalid("reconstruction needs back-projected profiles"));
        }
        Ok(Self { weights: sphere.weights().to_vec(), profiles })
    }

    /// `sum_j w_j F_{omega_j}(omega_j . x)`.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.profiles
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * p.value_at(dot(&p.direction, x)))
            .sum()
    }
}

/// One-shot reconstruction of `f(x)` by filtered back-projection.
pub fn reconstruct(
    f: &TargetFunction,
    x: &[f64],
    sphere: &SphereGrid,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<f64> {
    if x.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: x.len() });
    }
    Ok(Reconstructor::new(f, sphere, grid, opts)?.evaluate(x))
}

/// Sinogram rows `(direction index, b, value)` for a set of directions.
pub fn sinogram(
    f: &TargetFunction,
    sphere: &SphereGrid,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<Vec<(usize, f64, f64)>> {
    let mut rows = Vec::with_capacity(sphere.len() * grid.count());
    for (i, w) in sphere.nodes().iter().enumerate() {
        let p = radon_transform(f, w, grid, opts)?;
        rows.extend(grid.nodes().zip(p.values).map(|(b, v)| (i, b, v)));
    }
    Ok(rows)
}
