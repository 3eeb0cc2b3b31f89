//! Independent quadrature oracles shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;

/// Composite Simpson rule with `panels` (even) subintervals.
pub fn simpson(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    assert!(panels % 2 == 0);
    let h = (b - a) / panels as f64;
    let mut s = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Tensor trapezoid nodes with spacing `h` on `[-r, r]^d`; spectrally
/// accurate for integrands that decay to zero at the box edge.
pub fn box_nodes(d: usize, r: f64, h: f64) -> Vec<(Vec<f64>, f64)> {
    let m = (r / h).ceil() as i64;
    let axis: Vec<f64> = (-m..=m).map(|i| i as f64 * h).collect();
    let mut out = vec![(Vec::new(), 1.0)];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|(p, w)| {
                axis.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(*x);
                    (q, w * h)
                })
            })
            .collect();
    }
    out
}

/// `\int g(x) e^{-i xi.x} dx` from precomputed node values.
pub fn fourier_sum(nodes: &[(Vec<f64>, f64)], values: &[f64], xi: &[f64]) -> Complex64 {
    nodes
        .iter()
        .zip(values)
        .map(|((x, w), v)| {
            let phase: f64 = x.iter().zip(xi).map(|(a, b)| a * b).sum();
            Complex64::from_polar(w * v, -phase)
        })
        .sum()
}

/// `Gamma(n / 2)` for positive integers `n`.
pub fn gamma_half(n: u32) -> f64 {
    match n {
        1 => std::f64::consts::PI.sqrt(),
        2 => 1.0,
        _ => (n as f64 / 2.0 - 1.0) * gamma_half(n - 2),
    }
}

/// Closed-form `\int_{S^{d-1}} prod x_i^{a_i}`.
pub fn sphere_moment(exps: &[u32]) -> f64 {
    if exps.iter().any(|a| a % 2 == 1) {
        return 0.0;
    }
    let d = exps.len() as u32;
    let total: u32 = exps.iter().sum();
    2.0 * exps.iter().map(|a| gamma_half(a + 1)).product::<f64>() / gamma_half(total + d)
}

pub fn unit(theta: f64) -> Vec<f64> {
    vec![theta.cos(), theta.sin()]
}
