//! Randomized invariants over the public API.

use proptest::prelude::*;

use radharm_core::harmonic::{phi0_numeric, phi1};
use radharm_core::topology::volume_bounds;
use radharm_core::{derivative, integrate, DerivativeOrder, Interval, SpaceModel};

const MODELS: [&str; 16] = [
    "S2", "S3", "S5", "CP2", "CP3", "HP2", "OP2", "hS2", "hS3", "hS5", "hCP2", "hCP3", "hHP2", "hOP2",
    "E2", "E3",
];

fn model() -> impl Strategy<Value = SpaceModel> {
    prop::sample::select(&MODELS[..]).prop_map(|id| id.parse().unwrap())
}

/// Radius as a fraction of the usable domain.
fn radius(m: SpaceModel, t: f64) -> f64 {
    let d = m.domain_end().min(3.0);
    d * (0.1 + 0.8 * t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadrature_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, hi in 0.5f64..4.0) {
        let iv = Interval::closed(0.0, hi).unwrap();
        let f = |x: f64| x.sin();
        let g = |x: f64| (x * x).exp() * 0.1;
        let lhs = integrate(|x| a * f(x) + b * g(x), iv, 1e-12).unwrap().value;
        let rhs = a * integrate(f, iv, 1e-12).unwrap().value + b * integrate(g, iv, 1e-12).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
    }

    #[test]
    fn quadrature_is_additive(c in 0.2f64..1.8) {
        let f = |x: f64| 1.0 / (1.0 + x * x);
        let whole = integrate(f, Interval::closed(0.0, 2.0).unwrap(), 1e-13).unwrap().value;
        let left = integrate(f, Interval::closed(0.0, c).unwrap(), 1e-13).unwrap().value;
        let right = integrate(f, Interval::closed(c, 2.0).unwrap(), 1e-13).unwrap().value;
        prop_assert!((whole - left - right).abs() < 1e-11);
        prop_assert!((whole - 2f64.atan()).abs() < 1e-11);
    }

    #[test]
    fn theta_positive_and_phi1_reciprocal(m in model(), t in 0.0f64..1.0) {
        let r = radius(m, t);
        let th = m.theta(r).unwrap();
        prop_assert!(th > 0.0);
        let p = phi1(m, r).unwrap();
        prop_assert!((p * th - 1.0).abs() < 1e-14);
    }

    #[test]
    fn log_derivative_matches_difference(m in model(), t in 0.0f64..1.0) {
        let r = radius(m, t);
        let dom = m.domain();
        let d = derivative(|s| m.theta(s).unwrap().ln(), r, DerivativeOrder::First, 1e-5, &dom).unwrap();
        let exact = m.log_derivative_theta(r).unwrap();
        prop_assert!((d - exact).abs() <= 1e-6 * (1.0 + exact.abs()));
    }

    #[test]
    fn phi0_is_increasing(m in model(), t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        prop_assume!((t1 - t2).abs() > 1e-3);
        let (lo, hi) = (radius(m, t1.min(t2)), radius(m, t1.max(t2)));
        let r_ref = radius(m, 0.5);
        let a = phi0_numeric(m, lo, r_ref).unwrap();
        let b = phi0_numeric(m, hi, r_ref).unwrap();
        prop_assert!(a < b);
    }

    #[test]
    fn phi0_diverges_at_the_origin(m in model()) {
        prop_assume!(m.dimension() >= 3);
        let r_ref = radius(m, 0.5);
        let near = phi0_numeric(m, 1e-6, r_ref).unwrap();
        let far = phi0_numeric(m, 1e-3, r_ref).unwrap();
        prop_assert!(near < far - 1.0);
    }
}

#[test]
fn signature_bound_dominates_gauss_bonnet() {
    for id in ["hS2", "hS4", "hS6", "hCP2", "hCP3", "hCP4", "hHP2", "hHP3", "hOP2"] {
        let m: SpaceModel = id.parse().unwrap();
        let r = volume_bounds(m, true).unwrap();
        if let Some(sig) = r.sig_bound {
            assert!(sig >= r.gb_bound * (1.0 - 1e-15), "{id}: {sig} < {}", r.gb_bound);
        }
    }
}
