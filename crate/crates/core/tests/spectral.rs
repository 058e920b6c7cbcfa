use cki_core::cardinal::CardinalCoefficients;
use cki_core::kernel::{Kernel, MomentTable};
use cki_core::spectral::{
    spectral_interpolate, symbol_with_zero, verify_poisson, PeriodizedSymbol, ReciprocalCoefficients, DEFAULT_SAMPLES,
    DEFAULT_Z_MAX,
};
use cki_core::Error;
use proptest::prelude::*;

fn psi(x: f64) -> f64 {
    (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn symbol(m: usize) -> PeriodizedSymbol<f64> {
    PeriodizedSymbol::periodize(&Kernel::gaussian(), m).unwrap()
}

fn reciprocal(z_max: usize) -> ReciprocalCoefficients<f64> {
    symbol(DEFAULT_SAMPLES).reciprocal_coefficients(z_max).unwrap()
}

fn alternating_sum() -> f64 {
    (-20i64..=20).map(|j| if j % 2 == 0 { psi(j as f64) } else { -psi(j as f64) }).sum()
}

fn direct_symbol(t: f64) -> f64 {
    (-40i64..=40).map(|j| psi(j as f64) * (2.0 * std::f64::consts::PI * j as f64 * t).cos()).sum()
}

fn m0() -> f64 {
    MomentTable::<f64>::build_default(&Kernel::gaussian(), 0).unwrap().value(0)
}

#[test]
fn symbol_at_origin_is_the_mass() {
    for m in [64, 1024, DEFAULT_SAMPLES] {
        assert!((symbol(m).sample(0).re - m0()).abs() <= 1e-15);
    }
}

#[test]
fn symbol_at_half_is_the_alternating_sum() {
    let s = symbol(DEFAULT_SAMPLES);
    let half = s.sample(DEFAULT_SAMPLES / 2).re;
    assert!((half - alternating_sum()).abs() <= 1e-15);
    assert!((half - 0.014_383_766_711_652_731).abs() <= 1e-15);
    assert!(half > 0.0);
}

#[test]
fn symbol_is_real_and_reflection_symmetric() {
    let s = symbol(256);
    for r in 1..256 {
        assert_eq!(s.sample(r).im, 0.0);
        assert!((s.sample(r).re - s.sample(256 - r).re).abs() <= 1e-15);
        assert!(s.sample(r).re > 0.0);
    }
}

#[test]
fn samples_match_direct_cosine_sums() {
    let s = symbol(512);
    for r in (0..512).step_by(7) {
        assert!((s.sample(r).re - direct_symbol(r as f64 / 512.0)).abs() <= 1e-14);
    }
}

#[test]
fn sample_count_must_be_a_large_power_of_two() {
    assert!(PeriodizedSymbol::<f64>::periodize(&Kernel::gaussian(), 32).is_err());
    assert!(PeriodizedSymbol::<f64>::periodize(&Kernel::gaussian(), 96).is_err());
}

#[test]
fn gaussian_satisfies_the_wiener_condition() {
    let report = symbol(DEFAULT_SAMPLES).check_wiener();
    assert!(report.holds);
    assert!((report.min_modulus - alternating_sum()).abs() <= 1e-15);
    assert_eq!(report.argmin, 0.5);
}

#[test]
fn injected_zero_is_detected() {
    let s = symbol_with_zero::<f64>(128, 40).unwrap();
    let report = s.check_wiener();
    assert!(!report.holds);
    assert!(report.min_modulus <= 1e-15);
    assert_eq!(report.argmin, 40.0 / 128.0);
    assert!(matches!(s.reciprocal_coefficients(8), Err(Error::WienerViolated { .. })));
}

#[test]
fn wiener_verdict_is_stable_under_refinement() {
    let coarse = symbol(64).check_wiener();
    let fine = symbol(4096).check_wiener();
    assert_eq!(coarse.holds, fine.holds);
    assert!((coarse.min_modulus - fine.min_modulus).abs() <= 1e-10);
}

/// `a_0 = ∫_0^1 dt / ψ̃(t)`, trapezoid rule on 8192 points with directly summed cosines.
#[test]
fn zeroth_reciprocal_coefficient_against_quadrature() {
    const M: usize = 8192;
    let quadrature: f64 = (0..M).map(|r| 1.0 / direct_symbol(r as f64 / M as f64)).sum::<f64>() / M as f64;
    let a0 = reciprocal(DEFAULT_Z_MAX).get(0);
    assert!((a0 - quadrature).abs() <= 1e-10 * quadrature);
    assert!((a0 - 13.269_773_506_920_06).abs() <= 1e-9);
}

#[test]
fn reciprocal_coefficients_are_even() {
    let a = reciprocal(DEFAULT_Z_MAX);
    for z in 1..=DEFAULT_Z_MAX as i64 {
        assert!((a.get(z) - a.get(-z)).abs() <= 1e-14 * a.get(0));
    }
    assert_eq!(a.get(DEFAULT_Z_MAX as i64 + 1), 0.0);
}

#[test]
fn coefficients_alternate_in_sign() {
    let a = reciprocal(DEFAULT_Z_MAX);
    for z in 0..DEFAULT_Z_MAX as i64 {
        assert!(a.get(z) * a.get(z + 1) < 0.0, "z = {z}");
    }
}

#[test]
fn convolution_with_the_kernel_is_a_delta() {
    let a = reciprocal(64);
    for k in -5i64..=5 {
        assert!(a.delta_defect(&Kernel::gaussian(), k).abs() <= 1e-10, "k = {k}");
    }
}

#[test]
fn delta_defect_at_default_truncation_is_set_by_the_dropped_tail() {
    let a = reciprocal(DEFAULT_Z_MAX);
    let worst = (-5i64..=5).map(|k| a.delta_defect(&Kernel::gaussian(), k).abs()).fold(0.0, f64::max);
    assert!(worst <= 2.0 * a.tail_estimate());
}

#[test]
fn reconstruction_converges_with_truncation() {
    let s = symbol(DEFAULT_SAMPLES);
    let coarse = s.reciprocal_coefficients(DEFAULT_Z_MAX).unwrap().residual();
    let fine = s.reciprocal_coefficients(64).unwrap().residual();
    assert!(fine < coarse * 1e-5);
    assert!(fine <= 1e-9);
}

#[test]
fn geometric_decay_beyond_four() {
    let a = reciprocal(DEFAULT_Z_MAX);
    assert!(a.decay_ratio(4) < 0.9);
    assert!(a.power_law_constant(6).is_finite());
}

#[test]
fn weighted_partial_sums_are_monotone_and_flatten() {
    let a = reciprocal(64);
    for k in 0..=4 {
        let sums = a.partial_sums(k);
        assert!(sums.windows(2).all(|w| w[1] >= w[0]), "k = {k}");
        let last = sums[sums.len() - 1];
        let increment = last - sums[sums.len() - 2];
        assert!(increment <= 1e-6 * last, "k = {k}");
    }
}

#[test]
fn delta_data_returns_the_reciprocal_coefficients() {
    let a = reciprocal(DEFAULT_Z_MAX);
    let mut data = vec![0.0; 21];
    data[10] = 1.0;
    let c = spectral_interpolate(&a, -10, &data).unwrap();
    for j in -(DEFAULT_Z_MAX as i64)..=DEFAULT_Z_MAX as i64 {
        assert_eq!(c.coefficient(j).unwrap(), a.get(j));
    }
}

#[test]
fn quadratic_data_on_a_short_window_within_its_budget() {
    let a = reciprocal(DEFAULT_Z_MAX);
    let kernel = Kernel::gaussian();
    let data: Vec<f64> = (-15i64..=15).map(|l| (l * l) as f64).collect();
    let c = spectral_interpolate(&a, -15, &data).unwrap();
    for ell in -5i64..=5 {
        let error = (c.reproduce(&kernel, ell) - (ell * ell) as f64).abs();
        assert!(error <= c.boundary_budget(&kernel, ell).unwrap(), "ell = {ell}");
    }
}

#[test]
fn quadratic_data_on_a_wide_window_matches_the_cardinal_route() {
    let a = reciprocal(64);
    let kernel = Kernel::gaussian();
    let data: Vec<f64> = (-80i64..=80).map(|l| (l * l) as f64).collect();
    let c = spectral_interpolate(&a, -80, &data).unwrap();
    let t = MomentTable::build_default(&kernel, 2).unwrap();
    let a2 = CardinalCoefficients::build_triangular(&t, 2).unwrap().poly(2).clone();
    for ell in -5i64..=5 {
        assert!((c.reproduce(&kernel, ell) - (ell * ell) as f64).abs() <= 1e-8, "ell = {ell}");
        assert!((c.coefficient(ell).unwrap() - a2.eval(ell as f64)).abs() <= 1e-7, "j = {ell}");
    }
}

#[test]
fn constant_data_gives_reciprocal_mass() {
    let a = reciprocal(64);
    let data = vec![1.0; 161];
    let c = spectral_interpolate(&a, -80, &data).unwrap();
    for j in -5i64..=5 {
        assert!((c.coefficient(j).unwrap() - 1.0 / m0()).abs() <= 1e-9, "j = {j}");
    }
}

#[test]
fn constant_data_on_a_short_window_within_its_budget() {
    let a = reciprocal(DEFAULT_Z_MAX);
    let kernel = Kernel::gaussian();
    let c = spectral_interpolate(&a, -20, &[1.0; 41]).unwrap();
    for ell in -5i64..=5 {
        assert!((c.reproduce(&kernel, ell) - 1.0).abs() <= c.boundary_budget(&kernel, ell).unwrap());
    }
}

#[test]
fn data_must_be_finite_and_nonempty() {
    let a = reciprocal(8);
    assert!(spectral_interpolate(&a, 0, &[]).is_err());
    assert!(spectral_interpolate(&a, 0, &[1.0, f64::INFINITY]).is_err());
}

#[test]
fn poisson_identity_at_origin() {
    let check = verify_poisson(&Kernel::<f64>::gaussian(), 0.0).unwrap();
    let dual: f64 = (-3i32..=3).map(|z| (-2.0 * std::f64::consts::PI.powi(2) * (z * z) as f64).exp()).sum();
    assert!((check.lhs - m0()).abs() <= 1e-15);
    assert!((check.rhs - dual).abs() <= 1e-15);
    assert!(check.holds(1e-14));
}

#[test]
fn poisson_identity_at_half_and_quarter() {
    for x in [0.5, 0.25] {
        let check = verify_poisson(&Kernel::<f64>::gaussian(), x).unwrap();
        assert!((check.lhs - direct_symbol(x)).abs() <= 1e-15);
        assert!(check.holds(1e-13), "x = {x}");
    }
}

#[test]
fn poisson_identity_needs_a_transform() {
    let k = Kernel::<f64>::custom("plain", psi, |_| 1.0);
    assert!(matches!(verify_poisson(&k, 0.1), Err(Error::Unsupported(_))));
}

#[test]
fn poisson_identity_on_sixty_four_points() {
    for r in 0..64 {
        let check = verify_poisson(&Kernel::<f64>::gaussian(), r as f64 / 64.0).unwrap();
        assert!(check.holds(1e-12), "r = {r}");
    }
}

proptest! {
    #[test]
    fn poisson_identity_anywhere(x in 0.0f64..1.0) {
        let check = verify_poisson(&Kernel::<f64>::gaussian(), x).unwrap();
        prop_assert!(check.holds(1e-12));
    }

    #[test]
    fn symbol_stays_above_its_minimum(r in 0usize..DEFAULT_SAMPLES) {
        let s = symbol(DEFAULT_SAMPLES);
        prop_assert!(s.sample(r).re >= alternating_sum() - 1e-15);
    }
}
