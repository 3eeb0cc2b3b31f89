//! Sphere quadrature, symmetric line grids and unit-ball point sets.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};
use crate::gauss::GaussLegendre;
use crate::math::{norm, sphere_area};

/// Quadrature nodes on S^{d-1} with positive weights summing to its area.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    dim: usize,
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl SphereGrid {
    /// Deterministic grid for d <= 3.
    ///
    /// * d = 1: the two points +-1 with unit weights.
    /// * d = 2: `2^level` equispaced angles.
    /// * d = 3: `level + 1` Gauss-Legendre nodes in the polar cosine times
    ///   `2 level + 2` equispaced azimuths, exact up to degree `2 level + 1`.
    pub fn new(d: usize, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(invalid("sphere level must be at least 1"));
        }
        match d {
            1 => Ok(Self {
                dim: 1,
                nodes: vec![vec![1.0], vec![-1.0]],
                weights: vec![1.0, 1.0],
            }),
            2 => {
                if level > 24 {
                    return Err(invalid("circle level above 24 is not supported"));
                }
                let m = 1usize << level;
                let w = 2.0 * PI / m as f64;
                let nodes = (0..m)
                    .map(|j| {
                        let th = 2.0 * PI * j as f64 / m as f64;
                        vec![th.cos(), th.sin()]
                    })
                    .collect();
                Ok(Self { dim: 2, nodes, weights: vec![w; m] })
            }
            3 => {
                let polar = GaussLegendre::new(level as usize + 1);
                let m = 2 * level as usize + 2;
                let dphi = 2.0 * PI / m as f64;
                let mut nodes = Vec::with_capacity(polar.nodes.len() * m);
                let mut weights = Vec::with_capacity(nodes.capacity());
                for (z, wz) in polar.nodes.iter().zip(&polar.weights) {
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    for j in 0..m {
                        let phi = dphi * (j as f64 + 0.5);
                        nodes.push(vec![rho * phi.cos(), rho * phi.sin(), *z]);
                        weights.push(wz * dphi);
                    }
                }
                Ok(Self { dim: 3, nodes, weights })
            }
            _ => Err(Error::UnsupportedDimension(d)),
        }
    }

    /// Equal-weight Monte Carlo directions, usable in any dimension.
    pub fn monte_carlo(d: usize, n: usize, seed: u64) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(invalid("Monte Carlo sphere grid needs d >= 1 and n >= 1"));
        }
        let nodes = sample_directions(d, n, seed);
        let w = sphere_area(d) / n as f64;
        Ok(Self { dim: d, nodes, weights: vec![w; n] })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.nodes.iter().map(Vec::as_slice).zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.iter().map(|(w, wt)| wt * f(w)).sum()
    }
}

/// Uniform grid `b_m = -L + m h`, `h = 2L/N`, on the symmetric interval [-L, L).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineGrid {
    half_width: f64,
    count: usize,
}

impl Default for LineGrid {
    fn default() -> Self {
        Self { half_width: 4.0, count: 2048 }
    }
}

impl LineGrid {
    pub fn new(half_width: f64, count: usize) -> Result<Self> {
        if !(half_width >= 1.0 && half_width.is_finite()) {
            return Err(invalid("line grid half-width must be >= 1"));
        }
        if count < 8 || !count.is_power_of_two() {
            return Err(invalid("line grid count must be a power of two >= 8"));
        }
        Ok(Self { half_width, count })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.count as f64
    }

    pub fn node(&self, m: usize) -> f64 {
        -self.half_width + m as f64 * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |m| self.node(m))
    }

    /// Frequency spacing of the dual grid, `pi / L`.
    pub fn frequency_spacing(&self) -> f64 {
        PI / self.half_width
    }

    pub fn nyquist(&self) -> f64 {
        PI / self.spacing()
    }

    /// One refinement step: halves both the sample spacing and the
    /// frequency spacing (L doubles, N quadruples).
    pub fn refined(&self) -> Self {
        Self { half_width: 2.0 * self.half_width, count: 4 * self.count }
    }

    /// Indices `(lo, hi)` of the nodes at -1 and +1.
    pub fn unit_interval_indices(&self) -> Result<(usize, usize)> {
        let h = self.spacing();
        let lo = (self.half_width - 1.0) / h;
        let hi = (self.half_width + 1.0) / h;
        if (lo - lo.round()).abs() > 1e-9 || (hi - hi.round()).abs() > 1e-9 {
            return Err(invalid("line grid has no nodes at b = -1 and b = +1"));
        }
        Ok((lo.round() as usize, hi.round() as usize))
    }
}

/// `n` i.i.d. uniform directions on S^{d-1}, from normalized Gaussian vectors.
pub fn sample_directions(d: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let r = norm(&v);
        if r > 1e-12 {
            out.push(v.into_iter().map(|x| x / r).collect());
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Shifted Halton points filtered to the ball.
    Lattice,
    /// Uniform rejection sampling from the cube.
    PseudoRandom,
}

/// Point set in the open unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallSampler {
    pub dim: usize,
    pub mode: SampleMode,
    pub count: usize,
    pub seed: u64,
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

impl BallSampler {
    pub fn new(dim: usize, mode: SampleMode, count: usize, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        if mode == SampleMode::Lattice && dim > PRIMES.len() {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(Self { dim, mode, count, seed })
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        match self.mode {
            SampleMode::Lattice => {
                let shift: Vec<f64> = (0..self.dim).map(|_| rng.random::<f64>()).collect();
                let mut i = 1u64;
                while out.len() < self.count {
                    let p: Vec<f64> = (0..self.dim)
                        .map(|l| {
                            let u = (radical_inverse(i, PRIMES[l]) + shift[l]).fract();
                            2.0 * u - 1.0
                        })
                        .collect();
                    i += 1;
                    if norm(&p) < 1.0 {
                        out.push(p);
                    }
                }
            }
            SampleMode::PseudoRandom => {
                while out.len() < self.count {
                    let p: Vec<f64> =
                        (0..self.dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                    if norm(&p) < 1.0 {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}
