//! Cubic interpolation on uniform grids.

#[allow(unused_imports)]
use num_traits::Float;

/// Four-point Lagrange interpolation of samples `values[i] = v(x0 + i h)`.
///
/// Near the ends the stencil is shifted inward. Points outside the sampled
/// interval evaluate to zero.
pub fn cubic_uniform(values: &[f64], x0: f64, h: f64, x: f64) -> f64 {
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    let s = (x - x0) / h;
    let last = (n - 1) as f64;
    if !(s >= -1e-12 && s <= last + 1e-12) {
        return 0.0;
    }
    if n < 4 {
        // linear fallback for tiny tables
        let i = (s.floor() as usize).min(n.saturating_sub(2));
        if n == 1 {
            return values[0];
        }
        let t = s - i as f64;
        return values[i] * (1.0 - t) + values[i + 1] * t;
    }
    let i = (s.floor() as isize).clamp(1, n as isize - 3) as usize;
    let t = s - i as f64;
    let (p0, p1, p2, p3) = (values[i - 1], values[i], values[i + 1], values[i + 2]);
    // nodes at t = -1, 0, 1, 2
    let l0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    let l1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    let l2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    let l3 = (t + 1.0) * t * (t - 1.0) / 6.0;
    p0 * l0 + p1 * l1 + p2 * l2 + p3 * l3
}
