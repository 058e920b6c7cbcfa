use cki_core::cardinal::{CardinalCoefficients, Route};
use cki_core::kernel::{Kernel, MomentTable};
use cki_core::oracle::{
    adjudicate, polynomial_targets, solve_toeplitz, CoefficientSequence, ToeplitzProblem, DEFAULT_HALF_WIDTH,
    DEFAULT_PAD,
};
use cki_core::spectral::{spectral_interpolate, PeriodizedSymbol};
use cki_core::Error;
use proptest::prelude::*;

fn kernel() -> Kernel<f64> {
    Kernel::gaussian()
}

fn solve(k: i32, half_width: usize, pad: usize) -> ToeplitzProblem {
    solve_toeplitz(&kernel(), &polynomial_targets(|x| x.powi(k), half_width), half_width, pad).unwrap()
}

fn table(n: usize) -> MomentTable<f64> {
    MomentTable::build_default(&kernel(), n).unwrap()
}

/// Triangular, both recursions and the spectral route for `p_k` on `|j| ≤ 40`.
fn routes(k: usize) -> Vec<CoefficientSequence> {
    const REACH: i64 = 40;
    const Z_MAX: usize = 64;
    let t = table(k);
    let sample = |route: Route, label: &str| {
        let c = CardinalCoefficients::build(&t, k, route).unwrap();
        CoefficientSequence::from_fn(label, -REACH, REACH, |j| c.poly(k).eval(j as f64))
    };
    let reciprocal = PeriodizedSymbol::periodize(&kernel(), 4096).unwrap().reciprocal_coefficients(Z_MAX).unwrap();
    let start = -(REACH + Z_MAX as i64);
    let data: Vec<f64> = (start..=-start).map(|j| (j as f64).powi(k as i32)).collect();
    let spectral = spectral_interpolate(&reciprocal, start, &data).unwrap();
    vec![
        sample(Route::Triangular, "triangular"),
        sample(Route::QHe, "q-he"),
        sample(Route::QNe, "q-ne"),
        CoefficientSequence::from_fn("spectral", -REACH, REACH, |j| spectral.coefficient(j).unwrap()),
    ]
}

#[test]
fn constant_targets_give_reciprocal_mass() {
    let p = solve(0, DEFAULT_HALF_WIDTH, DEFAULT_PAD);
    let m0 = table(0).value(0);
    for j in -5..=5 {
        assert!((p.coefficient(j).unwrap() - 1.0 / m0).abs() <= 1e-9, "j = {j}");
    }
    assert!(p.residual() <= 1e-12);
}

#[test]
fn linear_targets_give_scaled_identity() {
    let p = solve(1, DEFAULT_HALF_WIDTH, DEFAULT_PAD);
    let m0 = table(0).value(0);
    for j in -5..=5 {
        assert!((p.coefficient(j).unwrap() - j as f64 / m0).abs() <= 1e-9, "j = {j}");
    }
}

#[test]
fn short_sections_only_approximate_the_infinite_system() {
    let short = solve(0, 10, 10);
    let wide = solve(0, DEFAULT_HALF_WIDTH, DEFAULT_PAD);
    let drift = short.central(5).max_deviation(&wide.central(5), 5).unwrap();
    assert!(drift > 1e-9);
    assert!(drift < 0.1);
}

#[test]
fn zero_targets() {
    let p = solve_toeplitz(&kernel(), &[0.0; 41], 20, 5).unwrap();
    assert!(p.coefficients().iter().all(|&c| c == 0.0));
    assert_eq!(p.residual(), 0.0);
}

#[test]
fn window_geometry() {
    let p = solve(2, 10, 4);
    assert_eq!(p.first_index(), -14);
    assert_eq!(p.coefficients().len(), 29);
    assert_eq!(p.target(-10), Some(100.0));
    assert_eq!(p.target(11), None);
    assert_eq!(p.coefficient(15), None);
    assert!(p.condition() >= 1.0 && p.condition().is_finite());
}

#[test]
fn malformed_problems_are_rejected() {
    assert!(matches!(solve_toeplitz(&kernel(), &[1.0; 4], 10, 10), Err(Error::InvalidInput(_))));
    assert!(matches!(solve_toeplitz(&kernel(), &[1.0; 21], 10, 0), Err(Error::InvalidInput(_))));
}

#[test]
fn flat_kernel_is_numerically_singular() {
    let flat = Kernel::<f64>::custom("flat", |x| (-x * x / 2000.0).exp(), |_| f64::INFINITY);
    assert!(matches!(
        solve_toeplitz(&flat, &[1.0; 41], 20, 10),
        Err(Error::NumericallySingular { .. })
    ));
}

#[test]
fn quartic_ranking() {
    let problem = solve(4, DEFAULT_HALF_WIDTH, DEFAULT_PAD);
    let report = adjudicate(&kernel(), &routes(4), &problem, 5).unwrap();
    assert_eq!(report.len(), 4);
    assert!(report.windows(2).all(|w| w[0].residual <= w[1].residual));
    let triangular = report.iter().find(|r| r.label == "triangular").unwrap();
    assert!(triangular.residual <= 1e-9);
    assert_eq!(report.last().unwrap().label, "q-ne");
}

#[test]
fn oracle_copy_has_no_deviation() {
    let problem = solve(3, 40, 10);
    let copy = CoefficientSequence::new("copy", problem.first_index(), problem.coefficients().to_vec());
    let report = adjudicate(&kernel(), &[copy], &problem, 5).unwrap();
    assert_eq!(report[0].deviation, 0.0);
}

#[test]
fn constant_routes_all_interpolate() {
    let problem = solve(0, DEFAULT_HALF_WIDTH, DEFAULT_PAD);
    let report = adjudicate(&kernel(), &routes(0), &problem, 5).unwrap();
    for r in &report {
        assert!(r.residual <= 1e-8, "{}: {:e}", r.label, r.residual);
    }
}

#[test]
fn central_coefficients_stable_under_wider_sections() {
    for k in 0..=6 {
        let a = solve(k, DEFAULT_HALF_WIDTH, DEFAULT_PAD).central(5);
        let b = solve(k, 120, 30).central(5);
        let scale = b.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        assert!(a.max_deviation(&b, 5).unwrap() <= 1e-10 * scale, "k = {k}");
    }
}

#[test]
fn sequence_helpers() {
    let s = CoefficientSequence::from_fn("sq", -3, 3, |j| (j * j) as f64);
    assert_eq!(s.end(), 3);
    assert_eq!(s.get(-3), Some(9.0));
    assert_eq!(s.get(4), None);
    assert_eq!(s.max_deviation(&s, 3), Some(0.0));
    assert_eq!(s.max_deviation(&s, 4), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn parity_of_targets_is_inherited(k in 0i32..=6) {
        let p = solve(k, 60, 15);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let scale = p.coefficients().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for j in 0..=75i64 {
            let (left, right) = (p.coefficient(-j).unwrap(), p.coefficient(j).unwrap());
            prop_assert!((left - sign * right).abs() <= 1e-12 * scale, "j = {}", j);
        }
    }
}
