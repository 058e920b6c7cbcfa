use std::sync::Arc;

use cki_core::cardinal::{CardinalCoefficients, CardinalInterpolant};
use cki_core::grid::{fit_polynomial, scale, GridInterpolant, GridSamples, EXTENDED_CAP, STANDARD_CAP};
use cki_core::kernel::{Kernel, MomentTable};
use cki_core::poly::Polynomial;
use cki_core::{Error, Extended, Real};
use proptest::prelude::*;

const TOL: f64 = 1e-13;

fn coeffs<R: Real>(n: usize) -> Arc<CardinalCoefficients<R>> {
    let t = MomentTable::build_default(&Kernel::gaussian(), n).unwrap();
    Arc::new(CardinalCoefficients::build_triangular(&t, n).unwrap())
}

fn interpolant(values: Vec<f64>) -> (GridSamples<f64>, GridInterpolant<f64>) {
    let s = GridSamples::new(values).unwrap();
    let g = GridInterpolant::build(&s, coeffs(s.n()), TOL).unwrap();
    (s, g)
}

fn test_functions() -> [(&'static str, fn(f64) -> f64); 4] {
    [
        ("sin", |x| (std::f64::consts::PI * x).sin()),
        ("exp", f64::exp),
        ("runge", |x| 1.0 / (1.0 + 25.0 * (x - 0.5) * (x - 0.5))),
        ("abs", |x| (x - 0.4).abs()),
    ]
}

#[test]
fn quadratic_fit_on_three_nodes() {
    let p = fit_polynomial(&GridSamples::new(vec![0.0, 1.0, 4.0]).unwrap()).unwrap();
    assert_eq!(p.degree(), 2);
    assert!((p.coeff(2) - 4.0).abs() < 1e-14);
    assert!(p.coeff(1).abs() < 1e-14 && p.coeff(0).abs() < 1e-14);
}

#[test]
fn constant_fit() {
    let p = fit_polynomial(&GridSamples::new(vec![3.0, 3.0]).unwrap()).unwrap();
    assert_eq!(p, Polynomial::constant(3.0));
}

#[test]
fn quintic_fit_recovers_monomial() {
    let p = fit_polynomial(&GridSamples::from_fn(5, |x: f64| x.powi(5)).unwrap()).unwrap();
    for i in 0..=5 {
        let expected = if i == 5 { 1.0 } else { 0.0 };
        assert!((p.coeff(i) - expected).abs() <= 1e-10, "i = {i}");
    }
}

#[test]
fn scaling_examples() {
    assert_eq!(scale(&Polynomial::monomial(2), 2), Polynomial::new(vec![0.0, 0.0, 0.25]));
    assert_eq!(scale(&Polynomial::constant(1.0), 7), Polynomial::constant(1.0));
    let scaled = scale(&Polynomial::new(vec![0.0, 0.0, 4.0]), 2);
    assert_eq!(scaled, Polynomial::monomial(2));
    for (i, v) in [0.0, 1.0, 4.0].iter().enumerate() {
        assert_eq!(scaled.eval(i as f64), *v);
    }
}

#[test]
fn sample_validation() {
    assert!(GridSamples::new(vec![1.0]).is_err());
    assert!(GridSamples::new(vec![1.0, f64::NAN]).is_err());
    let too_many = GridSamples::new(vec![0.0; STANDARD_CAP + 2]).unwrap();
    assert_eq!(fit_polynomial(&too_many).unwrap_err(), Error::ConditioningCap { n: STANDARD_CAP + 1, cap: STANDARD_CAP });
    let extended = GridSamples::new(vec![Extended::lit(0.0); EXTENDED_CAP + 2]).unwrap();
    assert!(matches!(fit_polynomial(&extended), Err(Error::ConditioningCap { .. })));
}

#[test]
fn constant_samples_everywhere() {
    for n in [1, 3, 6, 12] {
        let (s, g) = interpolant(vec![1.0; n + 1]);
        for i in 0..=n {
            let e = g.evaluate(s.node(i)).unwrap();
            assert!((e.value - 1.0).abs() <= 1e-9, "n = {n}, i = {i}");
        }
    }
}

#[test]
fn identity_samples_on_quarter_grid() {
    let s = GridSamples::from_fn(4, |x: f64| x).unwrap();
    let g = GridInterpolant::build(&s, coeffs(4), TOL).unwrap();
    for i in 0..=4 {
        let x = i as f64 / 4.0;
        assert!((g.evaluate(x).unwrap().value - x).abs() <= 1e-9);
    }
}

#[test]
fn sine_samples_on_eighth_grid() {
    let s = GridSamples::from_fn(8, |x: f64| (std::f64::consts::PI * x).sin()).unwrap();
    let g = GridInterpolant::build(&s, coeffs(8), TOL).unwrap();
    for i in 0..=8 {
        let x = i as f64 / 8.0;
        assert!((g.evaluate(x).unwrap().value - (std::f64::consts::PI * x).sin()).abs() <= 1e-7, "i = {i}");
    }
}

#[test]
fn node_values_within_budget() {
    let (s, g) = interpolant(vec![0.5, -1.0, 2.0, 0.25]);
    for i in 0..=3 {
        let e = g.evaluate(s.node(i)).unwrap();
        assert!(!e.extrapolated);
        assert!((e.value - s.values()[i]).abs() <= e.budget + 1e-13);
    }
}

#[test]
fn constant_between_nodes() {
    let (_, g) = interpolant(vec![2.5; 5]);
    let e = g.evaluate(0.5).unwrap();
    assert!((e.value - 2.5).abs() <= e.budget + 1e-13);
}

#[test]
fn grid_path_equals_cardinal_path() {
    let s = GridSamples::from_fn(4, |x: f64| x * x).unwrap();
    let c = coeffs(4);
    let g = GridInterpolant::build(&s, c.clone(), TOL).unwrap();
    let direct = CardinalInterpolant::new(c, scale(&fit_polynomial(&s).unwrap(), 4), TOL).unwrap();
    let a = g.evaluate(0.3).unwrap().value;
    let b = direct.evaluate(1.2).unwrap().value;
    assert!((a - b).abs() <= 1e-14);
}

#[test]
fn extrapolation_is_flagged() {
    let (_, g) = interpolant(vec![0.0, 1.0, 0.0]);
    assert!(g.evaluate(-0.1).unwrap().extrapolated);
    assert!(g.evaluate(1.5).unwrap().extrapolated);
    assert!(!g.evaluate(1.0).unwrap().extrapolated);
}

#[test]
fn standard_precision_reproduction() {
    for n in 1..=STANDARD_CAP {
        for (name, f) in test_functions() {
            let s = GridSamples::from_fn(n, f).unwrap();
            let g = GridInterpolant::build(&s, coeffs(n), TOL).unwrap();
            let size = s.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let worst = (0..=n).map(|i| (g.evaluate(s.node(i)).unwrap().value - s.values()[i]).abs()).fold(0.0, f64::max);
            assert!(worst <= 1e-7 * (1.0 + size), "{name}, n = {n}: {worst:e}");
        }
    }
}

#[test]
fn extended_precision_reproduction() {
    let c = coeffs::<Extended>(EXTENDED_CAP);
    let tol = Extended::lit(1e-20);
    for n in [13, 16, EXTENDED_CAP] {
        for (name, f) in test_functions() {
            let s = GridSamples::new((0..=n).map(|i| Extended::lit(f(i as f64 / n as f64))).collect()).unwrap();
            let g = GridInterpolant::build(&s, c.clone(), tol).unwrap();
            let size = s.values().iter().fold(0.0f64, |m, v| m.max(v.as_f64().abs()));
            let worst = (0..=n)
                .map(|i| (g.evaluate(s.node(i)).unwrap().value - s.values()[i]).as_f64().abs())
                .fold(0.0, f64::max);
            assert!(worst <= 1e-7 * (1.0 + size), "{name}, n = {n}: {worst:e}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_samples_are_fitted_exactly(coefficients in prop::collection::vec(-9i32..=9, 1..=13)) {
        let n = 12;
        let g = Polynomial::new(coefficients.iter().map(|&c| Extended::from_int(c as i64)).collect());
        let samples = GridSamples::from_fn(n, |x| g.eval(x)).unwrap();
        let fitted = fit_polynomial(&samples).unwrap();
        for i in 0..=n {
            let expected = g.coeff(i).as_f64();
            let got = fitted.coeff(i).as_f64();
            prop_assert!((got - expected).abs() <= 1e-9 * expected.abs().max(1.0), "coefficient {}", i);
        }
    }

    #[test]
    fn doubling_the_radius_stays_within_budget(
        values in prop::collection::vec(-5.0f64..5.0, 2..=9),
        x in 0.0f64..1.0,
    ) {
        let (_, g) = interpolant(values);
        let certified = g.evaluate(x).unwrap();
        let wide = g.evaluate_with_radius(x, Some(60)).unwrap();
        prop_assert!((certified.value - wide.value).abs() <= certified.budget);
    }
}
