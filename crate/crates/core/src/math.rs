//! Small numeric helpers shared across modules.

use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial_exact(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * f64::from(n - i) / f64::from(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * f64::from(i))
}

/// Surface area of the unit sphere S^{d-1} in R^d (counting measure for d = 1).
pub fn sphere_area(d: usize) -> f64 {
    match d {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI / (d as f64 - 2.0) * sphere_area(d - 2),
    }
}

/// Lebesgue volume of the unit ball in R^d.
pub fn ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / d as f64 * ball_volume(d - 2),
    }
}

/// Bernoulli numbers B_0..=B_n (B_1 = -1/2 convention).
pub fn bernoulli(n: usize) -> alloc::vec::Vec<f64> {
    let mut b = alloc::vec![0.0; n + 1];
    b[0] = 1.0;
    for m in 1..=n {
        let mut s = 0.0;
        for (j, bj) in b.iter().enumerate().take(m) {
            s += binomial(m as u32 + 1, j as u32) * bj;
        }
        b[m] = -s / (m as f64 + 1.0);
    }
    b
}

/// Riemann zeta at a negative integer, zeta(-n) = -B_{n+1}/(n+1) for n >= 1.
pub fn zeta_negative(n: u32) -> f64 {
    let b = bernoulli(n as usize + 1);
    let v = -b[n as usize + 1] / (f64::from(n) + 1.0);
    // even arguments are trivial zeros; the recurrence leaves tiny residue there
    if n % 2 == 0 {
        0.0
    } else {
        v
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn powi(x: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= x;
    }
    acc
}
