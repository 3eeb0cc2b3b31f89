//! Sampled `L_p` errors on the unit ball and log-log rate fits.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Result};
use crate::math::ball_volume;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L2,
    Sup,
}

impl Norm {
    pub fn from_p(p: &str) -> Result<Self> {
        match p.trim() {
            "2" => Ok(Norm::L2),
            "inf" | "infinity" | "∞" => Ok(Norm::Sup),
            other => Err(invalid(alloc::format!("unsupported norm index p = {other}"))),
        }
    }
}

/// `(|B_1| mean |f - g|^2)^{1/2}` or `max |f - g|` over `points`.
pub fn lp_error(f: impl Fn(&[f64]) -> f64, g: impl Fn(&[f64]) -> f64, p: Norm, points: &[Vec<f64>]) -> Result<f64> {
    let diffs: Vec<f64> = points.iter().map(|x| (f(x) - g(x)).abs()).collect();
    lp_from_differences(&diffs, p, points.first().map_or(0, |x| x.len()))
}

/// The same functional from precomputed pointwise differences in dimension `d`.
pub fn lp_from_differences(diffs: &[f64], p: Norm, d: usize) -> Result<f64> {
    if diffs.is_empty() {
        return Err(invalid("no sample points"));
    }
    Ok(match p {
        Norm::L2 => {
            let mean = diffs.iter().map(|v| v * v).sum::<f64>() / diffs.len() as f64;
            (ball_volume(d) * mean).sqrt()
        }
        Norm::Sup => diffs.iter().fold(0.0, |m, v| m.max(v.abs())),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Abscissa {
    Width,
    Scale,
}

/// `(abscissa, error)` pairs with strictly monotone abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSeries {
    pub kind: Abscissa,
    pub norm: Norm,
    pub points: Vec<(f64, f64)>,
}

impl ErrorSeries {
    pub fn new(kind: Abscissa, norm: Norm, points: Vec<(f64, f64)>) -> Result<Self> {
        if points.iter().any(|(a, e)| !(a.is_finite() && *a > 0.0) || !(*e >= 0.0)) {
            return Err(invalid("abscissae must be positive and errors nonnegative"));
        }
        let up = points.windows(2).all(|w| w[1].0 > w[0].0);
        let down = points.windows(2).all(|w| w[1].0 < w[0].0);
        if !(up || down) {
            return Err(invalid("abscissae must be strictly monotone"));
        }
        Ok(Self { kind, norm, points })
    }
}

/// Least-squares line through `(log a, log e)`: `e ~ exp(intercept) a^slope`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

pub fn rate_fit(series: &ErrorSeries) -> Result<RateFit> {
    let pts = &series.points;
    if pts.len() < 3 {
        return Err(invalid("rate fit needs at least three points"));
    }
    if pts.iter().any(|(_, e)| !(*e > 0.0)) {
        return Err(invalid("rate fit needs strictly positive errors"));
    }
    let n = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|(a, _)| a.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|(_, e)| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(RateFit { slope, intercept, residual: (ss / n).sqrt() })
}
