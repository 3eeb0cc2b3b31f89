//! Fourier transforms of radial functions supported in the unit ball.
//!
//! For `f(x) = h(|x|)` with `h` vanishing for `r >= 1`, the transform
//! `f^(xi) = \int e^{-i xi.x} f(x) dx` is real and depends on `rho = |xi|` only:
//!
//! * d = 1: `2 \int_0^1 h(r) cos(rho r) dr`
//! * d = 2: `2 pi \int_0^1 h(r) J_0(rho r) r dr`
//! * d = 3: `4 pi \int_0^1 h(r) sin(rho r)/(rho r) r^2 dr`

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gauss::GaussLegendre;
use crate::interp::cubic_uniform;
use crate::math::sphere_area;

fn kernel(d: usize, z: f64) -> f64 {
    match d {
        1 => z.cos(),
        2 => libm::j0(z),
        _ => {
            if z.abs() < 1e-4 {
                1.0 - z * z / 6.0
            } else {
                z.sin() / z
            }
        }
    }
}

/// Nodes/weights in `u = 1 - r` over [0, 1], graded towards `u = 0` where
/// profiles such as `(1 - r)^gamma` are singular.
fn radial_nodes(gl: &GaussLegendre, rho: f64) -> Vec<(f64, f64)> {
    let panels = 4 + (rho / 2.0).ceil() as usize;
    let step = 1.0 / panels as f64;
    let mut out = Vec::new();
    // geometric grading inside the first panel
    let mut hi = step;
    for _ in 0..12 {
        let lo = hi / 4.0;
        out.extend(gl.on_interval(lo, hi));
        hi = lo;
    }
    out.extend(gl.on_interval(0.0, hi));
    out.extend(gl.composite(step, 1.0, panels - 1));
    out
}

/// Direct evaluation of the radial Fourier transform at `rho`.
pub fn radial_fourier(d: usize, rho: f64, h: &impl Fn(f64) -> f64) -> Result<f64> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let gl = GaussLegendre::new(16);
    let sum: f64 = radial_nodes(&gl, rho)
        .into_iter()
        .map(|(u, w)| {
            let r = 1.0 - u;
            w * h(r) * kernel(d, rho * r) * r.powi(d as i32 - 1)
        })
        .sum();
    Ok(sphere_area(d) * sum)
}

/// Tabulated radial transform on `[0, rho_max]`, cubic interpolation in between
/// and zero beyond `rho_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFourierTable {
    d: usize,
    step: f64,
    values: Vec<f64>,
}

impl RadialFourierTable {
    pub fn build(d: usize, rho_max: f64, step: f64, h: impl Fn(f64) -> f64) -> Result<Self> {
        if !(step > 0.0 && rho_max > step) {
            return Err(crate::error::invalid("radial table needs 0 < step < rho_max"));
        }
        let count = (rho_max / step).ceil() as usize + 1;
        let values = (0..count)
            .map(|i| radial_fourier(d, step * i as f64, &h))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { d, step, values })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn rho_max(&self) -> f64 {
        self.step * (self.values.len() - 1) as f64
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let rho = rho.abs();
        if rho > self.rho_max() {
            return 0.0;
        }
        cubic_uniform(&self.values, 0.0, self.step, rho)
    }
}
