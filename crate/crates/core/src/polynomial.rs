//! Multivariate polynomials in the monomial basis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::powi;

/// `sum_alpha c_alpha x^alpha`, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolynomialPart {
    dim: usize,
    coeffs: BTreeMap<Vec<u32>, f64>,
}

impl PolynomialPart {
    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(vec![0; dim], c).expect("exponent length matches");
        p
    }

    /// `c + sum_i a_i x_i`.
    pub fn affine(c: f64, a: &[f64]) -> Self {
        let dim = a.len();
        let mut p = Self::constant(dim, c);
        for (i, ai) in a.iter().enumerate() {
            let mut e = vec![0; dim];
            e[i] = 1;
            p.add_term(e, *ai).expect("exponent length matches");
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, f64)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: f64) -> Result<()> {
        if exponents.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: exponents.len() });
        }
        *self.coeffs.entry(exponents).or_insert(0.0) += c;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total degree of the highest monomial with a nonzero coefficient.
    pub fn degree(&self) -> u32 {
        self.coeffs
            .iter()
            .filter(|(_, c)| **c != 0.0)
            .map(|(e, _)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| *c == 0.0)
    }

    pub fn coefficient(&self, exponents: &[u32]) -> f64 {
        self.coeffs.get(exponents).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.coeffs.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(p, xi)| powi(*xi, *p)).product::<f64>())
            .sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { dim: self.dim, coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Self, s: f64) {
        debug_assert_eq!(self.dim, other.dim);
        for (e, c) in &other.coeffs {
            *self.coeffs.entry(e.clone()).or_insert(0.0) += s * c;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *out.coeffs.entry(e).or_insert(0.0) += ca * cb;
            }
        }
        out
    }

    /// Powers `self^0 ..= self^n`.
    pub fn powers(&self, n: u32) -> Vec<Self> {
        let mut out = vec![Self::constant(self.dim, 1.0)];
        for i in 0..n as usize {
            let next = out[i].mul(self);
            out.push(next);
        }
        out
    }
}

/// All exponent vectors of total degree `<= k` in `d` variables, graded.
pub fn monomial_exponents(d: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=k {
        let mut cur = vec![0u32; d];
        push_compositions(&mut out, &mut cur, 0, total);
    }
    out
}

fn push_compositions(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for v in (0..=left).rev() {
        cur[i] = v;
        push_compositions(out, cur, i + 1, left - v);
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::binomial;

    #[test]
    fn affine_power_expands_binomially() {
        let p = PolynomialPart::affine(1.0, &[2.0]);
        let cube = &p.powers(3)[3];
        for j in 0..=3u32 {
            assert_eq!(cube.coefficient(&[j]), binomial(3, j) * powi(2.0, j));
        }
        assert!((cube.evaluate(&[0.3]) - powi(1.6, 3)).abs() < 1e-14);
    }

    #[test]
    fn exponent_count_matches_dimension_of_polynomial_space() {
        assert_eq!(monomial_exponents(2, 3).len(), 10);
        assert_eq!(monomial_exponents(3, 2).len(), 10);
        assert_eq!(monomial_exponents(1, 4).len(), 5);
    }

    #[test]
    fn degree_ignores_zero_coefficients() {
        let mut p = PolynomialPart::zero(2);
        p.add_term(vec![2, 1], 0.0).unwrap();
        p.add_term(vec![1, 0], 3.0).unwrap();
        assert_eq!(p.degree(), 1);
        assert!(p.add_term(vec![1], 1.0).is_err());
    }
}
