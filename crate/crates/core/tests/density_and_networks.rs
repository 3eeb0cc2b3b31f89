mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use common::simpson;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ridge_core::network::{activation, from_quadrature, from_sampling, poly_to_ridge, sampled_network};
use ridge_core::polynomial::monomial_exponents;
use ridge_core::ridge_density::{
    derivative_profile, polynomial_part, sobolev_seminorm, variation_upper_bound, PeanoDensity,
};
use ridge_core::targets::make_gaussian;
use ridge_core::{
    BallSampler, GaussianSpec, LineGrid, Neuron, PolynomialPart, SampleMode, ShallowNetwork, SpectralOptions,
    SphereGrid, TargetFunction,
};

fn gaussian(d: usize, width: f64) -> TargetFunction {
    make_gaussian(GaussianSpec::centered(d, width, 1.0)).unwrap()
}

fn grid() -> LineGrid {
    LineGrid::new(4.0, 2048).unwrap()
}

fn ball(d: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    BallSampler::new(d, SampleMode::PseudoRandom, n, seed).unwrap().points()
}

fn sup_error(net: &ShallowNetwork, f: &TargetFunction, pts: &[Vec<f64>]) -> f64 {
    pts.iter().map(|x| (net.evaluate(x) - f.evaluate(x)).abs()).fold(0.0, f64::max)
}

#[test]
fn one_dimensional_derivative_profile() {
    let opts = SpectralOptions::default();
    let f = make_gaussian(GaussianSpec { center: vec![0.1], width: 0.4, amplitude: 1.0 }).unwrap();
    let df = |x: f64| -(x - 0.1) / 0.4 * f.evaluate(&[x]);
    let g = grid();
    let (lo, hi) = g.unit_interval_indices().unwrap();
    for omega in [1.0, -1.0] {
        let p = derivative_profile(&f, &[omega], 0, &g, &opts).unwrap();
        for m in lo..=hi {
            let u = g.node(m);
            assert!((p.values[m] - omega * df(omega * u) / 2.0).abs() < 1e-6);
        }
    }
    let zero = derivative_profile(&TargetFunction::zero(1), &[1.0], 2, &g, &opts).unwrap();
    assert!(zero.values.iter().all(|v| *v == 0.0));
}

#[test]
fn odd_order_profiles_of_centered_targets_are_even() {
    let opts = SpectralOptions::default();
    let g = grid();
    let f = gaussian(2, 0.5);
    for k in [1u32, 3] {
        let p = derivative_profile(&f, &[0.6, 0.8], k, &g, &opts).unwrap();
        let n = g.count();
        for m in 1..n / 2 {
            assert!((p.values[n / 2 + m] - p.values[n / 2 - m]).abs() < 1e-10);
        }
    }
}

#[test]
fn variation_bound_examples() {
    let opts = SpectralOptions::default();
    let s1 = SphereGrid::new(1, 1).unwrap();
    let v = variation_upper_bound(&gaussian(1, 1.0), 0, &s1, &grid(), &opts).unwrap();
    assert!((v - 2.0 * (1.0 - (-0.5f64).exp())).abs() < 1e-5, "{v}");
    assert_eq!(variation_upper_bound(&TargetFunction::zero(1), 0, &s1, &grid(), &opts).unwrap(), 0.0);

    let s2 = SphereGrid::new(2, 5).unwrap();
    let f = make_gaussian(GaussianSpec { center: vec![0.2, 0.1], width: 0.5, amplitude: 1.0 }).unwrap();
    let base = variation_upper_bound(&f, 1, &s2, &grid(), &opts).unwrap();
    let scaled = variation_upper_bound(&f.scaled(-2.5), 1, &s2, &grid(), &opts).unwrap();
    assert_relative_eq!(scaled, 2.5 * base, max_relative = 1e-12);
}

#[test]
fn variation_bound_converges_in_the_line_grid() {
    let opts = SpectralOptions::default();
    let sphere = SphereGrid::new(2, 5).unwrap();
    let f = gaussian(2, 1.0);
    let a = variation_upper_bound(&f, 1, &sphere, &LineGrid::new(4.0, 2048).unwrap(), &opts).unwrap();
    let b = variation_upper_bound(&f, 1, &sphere, &LineGrid::new(4.0, 4096).unwrap(), &opts).unwrap();
    assert!(((a - b) / a).abs() < 1e-4);
}

#[test]
fn variation_bound_of_radial_targets_ignores_the_sphere_grid() {
    let opts = SpectralOptions::default();
    let f = gaussian(2, 0.5);
    let d = PeanoDensity::new(&f, 0, &SphereGrid::new(2, 4).unwrap(), &grid(), &opts).unwrap();
    let rule = d.unit_trapezoid();
    let per: Vec<f64> = d.profiles.iter().map(|p| rule.iter().map(|(m, t)| t * p.values[*m].abs()).sum()).collect();
    for v in &per {
        assert!((v - per[0]).abs() < 1e-8);
    }
    let coarse = d.variation_bound();
    let fine = variation_upper_bound(&f, 0, &SphereGrid::new(2, 5).unwrap(), &grid(), &opts).unwrap();
    assert!((coarse - fine).abs() < 1e-8);
}

#[test]
fn one_dimensional_polynomial_part() {
    let opts = SpectralOptions::default();
    let f = make_gaussian(GaussianSpec { center: vec![0.3], width: 0.6, amplitude: 1.0 }).unwrap();
    let df = |x: f64| -(x - 0.3) / 0.6 * f.evaluate(&[x]);
    let p = polynomial_part(&f, 1, &SphereGrid::new(1, 1).unwrap(), &grid(), &opts).unwrap();
    for x in [-0.9, -0.2, 0.0, 0.5, 1.0] {
        let expected: f64 = [1.0f64, -1.0]
            .iter()
            .map(|w| f.evaluate(&[-w]) / 2.0 + w / 2.0 * df(-w) * (w * x + 1.0))
            .sum();
        assert!((p.evaluate(&[x]) - expected).abs() < 1e-6);
    }
    let zero = polynomial_part(&TargetFunction::zero(2), 2, &SphereGrid::new(2, 3).unwrap(), &grid(), &opts).unwrap();
    assert!(zero.is_zero());
}

#[test]
fn seminorm_matches_physical_space_quadrature() {
    let f = gaussian(1, 1.0);
    // |f|_{W^1} = ||f'||_2 and |f|_{W^0} = ||f||_2
    let d1 = simpson(-10.0, 10.0, 4000, |x| (x * (-x * x / 2.0).exp()).powi(2)).sqrt();
    let d0 = simpson(-10.0, 10.0, 4000, |x| (-x * x).exp()).sqrt();
    assert_relative_eq!(sobolev_seminorm(&f, 1.0).unwrap(), d1, max_relative = 1e-8);
    assert_relative_eq!(d1, (PI.sqrt() / 2.0).sqrt(), max_relative = 1e-10);
    assert_relative_eq!(sobolev_seminorm(&f, 0.0).unwrap(), d0, max_relative = 1e-8);
    assert_relative_eq!(sobolev_seminorm(&f.scaled(-3.0), 1.5).unwrap(), 3.0 * sobolev_seminorm(&f, 1.5).unwrap(), max_relative = 1e-12);

    // d = 2: ||grad f||_2^2 = pi for the unit Gaussian
    let f2 = gaussian(2, 1.0);
    assert_relative_eq!(sobolev_seminorm(&f2, 1.0).unwrap(), PI.sqrt(), max_relative = 1e-8);
}

#[test]
fn activation_and_evaluation_examples() {
    assert_eq!(activation(2, 0.5), 0.25);
    for k in 0..5 {
        assert_eq!(activation(k, -1.0), 0.0);
        assert_eq!(activation(k, 0.0), 0.0);
    }
    assert_eq!(activation(0, 0.1), 1.0);
    assert!((activation(1, -0.3) + activation(1, 0.3) - 0.3).abs() < 1e-15);

    let empty = ShallowNetwork::new(2, 1);
    assert_eq!(empty.evaluate(&[0.4, -0.7]), 0.0);
    let one = ShallowNetwork::with_parts(2, 2, vec![Neuron::new(1.0, vec![1.0, 0.0], 0.0)], None).unwrap();
    assert_eq!(one.evaluate(&[0.5, 0.0]), 0.25);
    let abs = ShallowNetwork::with_parts(
        2,
        1,
        vec![Neuron::new(1.0, vec![1.0, 0.0], 0.0), Neuron::new(1.0, vec![-1.0, 0.0], 0.0)],
        None,
    )
    .unwrap();
    assert!((abs.evaluate(&[-0.3, 0.0]) - 0.3).abs() < 1e-15);
}

#[test]
fn quadrature_networks_reproduce_targets() {
    let opts = SpectralOptions::default();
    let s1 = SphereGrid::new(1, 1).unwrap();
    let zero = from_quadrature(&TargetFunction::zero(1), 1, &s1, &grid(), &opts).unwrap();
    assert!(zero.neurons.iter().all(|n| n.a == 0.0));
    assert_eq!(zero.evaluate(&[0.3]), 0.0);

    let f = gaussian(1, 1.0);
    let pts = ball(1, 200, 4);
    let net = from_quadrature(&f, 1, &s1, &grid(), &opts).unwrap();
    assert!(sup_error(&net, &f, &pts) <= 1e-3);
    assert!(net.in_dictionary());

    // second-order trapezoid convergence in the knot spacing
    let fine = from_quadrature(&f, 1, &s1, &LineGrid::new(4.0, 4096).unwrap(), &opts).unwrap();
    let coarse = from_quadrature(&f, 1, &s1, &LineGrid::new(4.0, 1024).unwrap(), &opts).unwrap();
    let (e0, e1, e2) = (sup_error(&coarse, &f, &pts), sup_error(&net, &f, &pts), sup_error(&fine, &f, &pts));
    assert!((e0 / e1).log2() >= 1.8 && (e1 / e2).log2() >= 1.8, "{e0:e} {e1:e} {e2:e}");
}

#[test]
fn dictionary_neurons_are_bounded_on_the_ball() {
    let opts = SpectralOptions::default();
    let f = gaussian(2, 0.5);
    let pts = ball(2, 2000, 8);
    for k in 0..3u32 {
        let net = from_quadrature(&f, k, &SphereGrid::new(2, 4).unwrap(), &LineGrid::new(4.0, 256).unwrap(), &opts)
            .unwrap();
        assert!(net.in_dictionary());
        let bound = 2f64.powi(k as i32);
        for n in &net.neurons {
            for x in &pts {
                let t: f64 = n.omega.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - n.b;
                assert!(activation(k, t) <= bound);
            }
        }
    }
}

#[test]
fn sampled_networks_carry_the_variation_mass() {
    let opts = SpectralOptions::default();
    let f = gaussian(2, 1.0);
    let density = PeanoDensity::new(&f, 1, &SphereGrid::new(2, 5).unwrap(), &grid(), &opts).unwrap();
    let v = density.variation_bound();
    for n in [1usize, 7, 64] {
        let net = sampled_network(&density, n, 99).unwrap();
        assert_eq!(net.width(), n);
        assert!((net.l1_mass() - v).abs() <= 1e-12 * v);
        assert!(net.neurons.iter().all(|nr| (nr.a.abs() - v / n as f64).abs() <= 1e-15 * v));
        assert_eq!(net, sampled_network(&density, n, 99).unwrap());
    }
    assert!(sampled_network(&density, 0, 1).is_err());
    let z = from_sampling(&TargetFunction::zero(2), 1, 4, 1, &SphereGrid::new(2, 3).unwrap(), &grid(), &opts);
    assert!(z.is_err());
}

#[test]
fn sampling_is_unbiased_for_the_quadrature_network() {
    let opts = SpectralOptions::default();
    let f = make_gaussian(GaussianSpec { center: vec![0.1, -0.1], width: 0.8, amplitude: 1.0 }).unwrap();
    let sphere = SphereGrid::new(2, 6).unwrap();
    let density = PeanoDensity::new(&f, 1, &sphere, &grid(), &opts).unwrap();
    let reference = from_quadrature(&f, 1, &sphere, &grid(), &opts).unwrap();
    for x in [[0.3, -0.2], [-0.6, 0.5]] {
        let vals: Vec<f64> = (0..100).map(|s| sampled_network(&density, 64, s).unwrap().evaluate(&x)).collect();
        let mean = vals.iter().sum::<f64>() / 100.0;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 99.0;
        let se = (var / 100.0).sqrt();
        let target = reference.evaluate(&x);
        assert!((mean - target).abs() <= 3.0 * se, "{mean} vs {target} (se {se})");
    }
}

#[test]
fn polynomial_lift_examples() {
    let square = PolynomialPart::from_terms(1, [(vec![2], 1.0)]).unwrap();
    let lift = poly_to_ridge(&square, 2).unwrap();
    assert!((lift.evaluate(&[-0.5]) - 0.25).abs() < 1e-14);
    assert!(lift.poly.is_none());

    let c = PolynomialPart::constant(2, 1.75);
    let lift = poly_to_ridge(&c, 0).unwrap();
    for x in [[0.0, 0.0], [1.9, -1.5], [-1.99, 3.0]] {
        assert_eq!(lift.evaluate(&x), 1.75);
    }
    assert!(poly_to_ridge(&square, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polynomial_lift_is_exact(k in 0u32..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms: Vec<(Vec<u32>, f64)> =
            monomial_exponents(2, k).into_iter().map(|e| (e, rng.random_range(-1.0..1.0))).collect();
        let p = PolynomialPart::from_terms(2, terms).unwrap();
        let lift = poly_to_ridge(&p, k).unwrap();
        for x in ball(2, 1000, seed) {
            prop_assert!((lift.evaluate(&x) - p.evaluate(&x)).abs() <= 1e-10);
        }
    }
}

#[test]
fn lifted_networks_match_their_polynomial_form() {
    let opts = SpectralOptions::default();
    let f = gaussian(2, 1.0);
    let net = from_quadrature(&f, 2, &SphereGrid::new(2, 4).unwrap(), &LineGrid::new(4.0, 512).unwrap(), &opts)
        .unwrap();
    let lifted = net.clone().with_lifted_poly().unwrap();
    assert!(lifted.poly.is_none());
    for x in ball(2, 50, 3) {
        assert!((lifted.evaluate(&x) - net.evaluate(&x)).abs() < 1e-10);
    }
}
