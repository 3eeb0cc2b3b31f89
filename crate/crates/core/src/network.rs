//! Shallow ReLU^k networks and their construction from the Peano density.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::fourier_radon::SpectralOptions;
use crate::math::{dot, factorial, norm, powi};
use crate::polynomial::{monomial_exponents, PolynomialPart};
use crate::quadrature::{LineGrid, SphereGrid};
use crate::ridge_density::PeanoDensity;
use crate::targets::TargetFunction;

/// `sigma_k(t) = max(0, t)^k`, with `sigma_0` the step and `sigma_k(0) = 0`.
pub fn activation(k: u32, t: f64) -> f64 {
    if t > 0.0 {
        powi(t, k)
    } else {
        0.0
    }
}

/// `a sigma_k(omega.x - b)`; `b` is stored as the knot.
#[derive(Debug, Clone, PartialEq)]
pub struct Neuron {
    pub a: f64,
    pub omega: Vec<f64>,
    pub b: f64,
}

impl Neuron {
    pub fn new(a: f64, omega: Vec<f64>, b: f64) -> Self {
        Self { a, omega, b }
    }

    pub fn evaluate(&self, k: u32, x: &[f64]) -> f64 {
        self.a * activation(k, dot(&self.omega, x) - self.b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShallowNetwork {
    dim: usize,
    k: u32,
    pub neurons: Vec<Neuron>,
    pub poly: Option<PolynomialPart>,
}

impl ShallowNetwork {
    pub fn new(dim: usize, k: u32) -> Self {
        Self { dim, k, neurons: Vec::new(), poly: None }
    }

    pub fn with_parts(dim: usize, k: u32, neurons: Vec<Neuron>, poly: Option<PolynomialPart>) -> Result<Self> {
        if let Some(n) = neurons.iter().find(|n| n.omega.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: n.omega.len() });
        }
        if let Some(p) = &poly {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
            }
        }
        Ok(Self { dim, k, neurons, poly })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Number of ridge neurons.
    pub fn width(&self) -> usize {
        self.neurons.len()
    }

    /// `poly(x) + sum_i a_i sigma_k(omega_i.x - b_i)`.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.poly.as_ref().map_or(0.0, |p| p.evaluate(x)) + self.ridge_part(x)
    }

    /// Neuron sum without the polynomial part.
    pub fn ridge_part(&self, x: &[f64]) -> f64 {
        self.neurons.iter().map(|n| n.evaluate(self.k, x)).sum()
    }

    /// `sum_i |a_i|` over the neurons.
    pub fn l1_mass(&self) -> f64 {
        self.neurons.iter().map(|n| n.a.abs()).sum()
    }

    /// Whether every neuron is a dictionary element: unit direction and knot
    /// in `[-1, 1]`.
    pub fn in_dictionary(&self) -> bool {
        self.neurons
            .iter()
            .all(|n| (norm(&n.omega) - 1.0).abs() <= 1e-12 && n.b.abs() <= 1.0 + 1e-12)
    }

    /// Replaces the polynomial part by its exact ridge lift.
    pub fn with_lifted_poly(mut self) -> Result<Self> {
        if let Some(p) = self.poly.take() {
            let lift = poly_to_ridge(&p, self.k)?;
            self.neurons.extend(lift.neurons);
        }
        Ok(self)
    }
}

/// Quadrature discretization of the Peano integral on the line-grid knots in
/// `[-1, 1]` (trapezoid rule), with the exact polynomial part attached.
pub fn from_quadrature(
    f: &TargetFunction,
    k: u32,
    sphere: &SphereGrid,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<ShallowNetwork> {
    Ok(quadrature_network(&PeanoDensity::new(f, k, sphere, grid, opts)?))
}

fn lower_hemisphere(omega: &[f64]) -> bool {
    omega.iter().find(|c| c.abs() > 1e-12).is_some_and(|c| *c < 0.0)
}

/// Network from a precomputed density. Directions in the lower hemisphere
/// use the midpoints of the line grid as knots, so the hyperplanes of
/// antipodal directions interleave instead of coinciding.
pub fn quadrature_network(density: &PeanoDensity) -> ShallowNetwork {
    let kf = factorial(density.k);
    let grid = &density.grid;
    let h = grid.spacing();
    let trap = density.unit_trapezoid();
    let mut neurons = Vec::new();
    for ((omega, w), prof) in density.directions.iter().zip(&density.weights).zip(&density.profiles) {
        if lower_hemisphere(omega) {
            for pair in trap.windows(2) {
                let b = grid.node(pair[0].0) + 0.5 * h;
                let v = prof.value_at(b);
                neurons.push(Neuron::new(w * h * v / kf, omega.clone(), b));
            }
        } else {
            for (m, tau) in &trap {
                let v = prof.values[*m];
                neurons.push(Neuron::new(w * tau * v / kf, omega.clone(), grid.node(*m)));
            }
        }
    }
    ShallowNetwork { dim: density.dim, k: density.k, neurons, poly: Some(density.poly.clone()) }
}

/// Quadrature network with `knots` midpoint-rule knots per direction on
/// `[-1, 1]`; the width is `directions * knots`.
pub fn quadrature_network_with_knots(density: &PeanoDensity, knots: usize) -> Result<ShallowNetwork> {
    if knots == 0 {
        return Err(invalid("at least one knot per direction is required"));
    }
    let kf = factorial(density.k);
    let step = 2.0 / knots as f64;
    let mut neurons = Vec::with_capacity(density.directions.len() * knots);
    for ((omega, w), prof) in density.directions.iter().zip(&density.weights).zip(&density.profiles) {
        for i in 0..knots {
            let b = -1.0 + (i as f64 + 0.5) * step;
            neurons.push(Neuron::new(w * step * prof.value_at(b) / kf, omega.clone(), b));
        }
    }
    Ok(ShallowNetwork { dim: density.dim, k: density.k, neurons, poly: Some(density.poly.clone()) })
}

/// Importance-sampled network of width `n`.
pub fn from_sampling(
    f: &TargetFunction,
    k: u32,
    n: usize,
    seed: u64,
    sphere: &SphereGrid,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> Result<ShallowNetwork> {
    sampled_network(&PeanoDensity::new(f, k, sphere, grid, opts)?, n, seed)
}

/// Draws `n` pairs `(omega_j, b_m)` with probability proportional to
/// `w_j tau_m |F_{omega_j}^{(k+1)}(b_m)|` and weights `sign(F) V / n`, so that
/// the expected network is the quadrature network and `sum |a_i| = V`.
pub fn sampled_network(density: &PeanoDensity, n: usize, seed: u64) -> Result<ShallowNetwork> {
    if n == 0 {
        return Err(invalid("network width must be at least 1"));
    }
    let v = density.variation_bound();
    if !(v > 0.0) {
        return Err(Error::ZeroVariation);
    }
    let trap = density.unit_trapezoid();
    let mut cells = Vec::with_capacity(density.profiles.len() * trap.len());
    let mut mass = Vec::with_capacity(cells.capacity());
    for (j, (prof, w)) in density.profiles.iter().zip(&density.weights).enumerate() {
        for (m, tau) in &trap {
            cells.push((j, *m));
            mass.push(w * tau * prof.values[*m].abs());
        }
    }
    let dist = WeightedIndex::new(&mass).map_err(|_| Error::ZeroVariation)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = v / n as f64;
    let neurons = (0..n)
        .map(|_| {
            let (j, m) = cells[dist.sample(&mut rng)];
            let sign = density.profiles[j].values[m].signum();
            Neuron::new(sign * a, density.directions[j].clone(), density.grid.node(m))
        })
        .collect();
    Ok(ShallowNetwork { dim: density.dim, k: density.k, neurons, poly: Some(density.poly.clone()) })
}

/// Exact ridge representation of a polynomial of degree `<= k`.
///
/// For `k >= 1`, `D = C(d+k, k)` generic powers `(omega_i.x - b_i)^k` span the
/// polynomials of degree `<= k`, and each splits as
/// `sigma_k(omega.x - b) + (-1)^k sigma_k(-omega.x + b)`. For `k = 0` the
/// constant is `c (sigma_0(x_1 + 2) + sigma_0(-x_1 - 2))`, exact off the
/// hyperplane `x_1 = -2`. Knots of the lift may lie outside `[-1, 1]`.
pub fn poly_to_ridge(p: &PolynomialPart, k: u32) -> Result<ShallowNetwork> {
    let d = p.dim();
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    if p.degree() > k {
        return Err(Error::DegreeTooHigh { degree: p.degree(), k });
    }
    let mut net = ShallowNetwork::new(d, k);
    if p.is_zero() {
        return Ok(net);
    }
    if k == 0 {
        let c = p.coefficient(&vec![0; d]);
        let mut e1 = vec![0.0; d];
        e1[0] = 1.0;
        let m1: Vec<f64> = e1.iter().map(|v| -v).collect();
        net.neurons.push(Neuron::new(c, e1, -2.0));
        net.neurons.push(Neuron::new(c, m1, 2.0));
        return Ok(net);
    }

    let exps = monomial_exponents(d, k);
    let dim = exps.len();
    let atoms = lift_atoms(d, dim);
    // column i: monomial coefficients of (omega_i.x - b_i)^k
    let mut mat = vec![vec![0.0; dim]; dim];
    for (i, (omega, b)) in atoms.iter().enumerate() {
        let lin = PolynomialPart::affine(-b, omega);
        let pk = &lin.powers(k)[k as usize];
        for (r, e) in exps.iter().enumerate() {
            mat[r][i] = pk.coefficient(e);
        }
    }
    let rhs: Vec<f64> = exps.iter().map(|e| p.coefficient(e)).collect();
    let c = solve(mat, rhs)?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    for ((omega, b), ci) in atoms.into_iter().zip(c) {
        let neg: Vec<f64> = omega.iter().map(|v| -v).collect();
        net.neurons.push(Neuron::new(ci, omega, b));
        net.neurons.push(Neuron::new(sign * ci, neg, -b));
    }
    Ok(net)
}

/// Deterministic, well-spread directions and knots for the polynomial lift.
fn lift_atoms(d: usize, count: usize) -> Vec<(Vec<f64>, f64)> {
    let golden = 0.5 * (5.0f64.sqrt() - 1.0);
    (0..count)
        .map(|i| {
            let u = (i as f64 + 0.5) / count as f64;
            let b = 0.9 * (2.0 * ((i as f64 * golden) % 1.0) - 1.0);
            let omega = match d {
                1 => vec![1.0],
                2 => {
                    let th = PI * u;
                    vec![th.cos(), th.sin()]
                }
                _ => {
                    let mut v: Vec<f64> = (0..d)
                        .map(|c| {
                            let phase = ((i + 1) as f64 * (c as f64 + 1.0) * golden) % 1.0;
                            (2.0 * PI * phase).cos() + if c == 0 { 1.5 } else { 0.0 }
                        })
                        .collect();
                    let r = norm(&v);
                    v.iter_mut().for_each(|x| *x /= r);
                    v
                }
            };
            (omega, b)
        })
        .collect()
}

/// Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Result<Vec<f64>> {
    let n = rhs.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty");
        if a[piv][col].abs() <= 1e-13 * scale {
            return Err(Error::Singular);
        }
        a.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor != 0.0 {
                for c in col..n {
                    a[r][c] -= factor * a[col][c];
                }
                rhs[r] -= factor * rhs[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (rhs[r] - s) / a[r][r];
    }
    Ok(x)
}
