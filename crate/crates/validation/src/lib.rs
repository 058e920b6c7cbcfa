//! End-to-end acceptance criteria, each returning a verdict and a one-line summary.

use std::sync::Arc;

use cki_core::cardinal::{
    singular_value_extremes, uniqueness_matrix, verify_corollary, verify_discpolyconv, verify_th_interp,
};
use cki_core::grid::{GridInterpolant, GridSamples};
use cki_core::kernel::{continuous_moment, discrete_moment, Kernel, MomentTable};
use cki_core::oracle::{adjudicate, polynomial_targets, solve_toeplitz, CoefficientSequence};
use cki_core::poly::{hermite_he, hermite_ne, umbral_he_sum, umbral_ne_sum, Polynomial};
use cki_core::spectral::{spectral_interpolate, verify_poisson, PeriodizedSymbol};
use cki_core::{CardinalCoefficients, CardinalInterpolant, Extended, Real, Route};

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn psi(x: f64) -> f64 {
    (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Gaussian moments `k ≤ 12` at tolerance `1e-12`: even entries within `1e-7` of `(k-1)!!`,
/// odd entries exactly zero, `M_0 - 1` in `(4e-9, 7e-9)`.
pub fn moment_certification() -> Outcome {
    let kernel = Kernel::<f64>::gaussian();
    let mut worst_even = 0.0f64;
    let mut worst_k = 0;
    let mut odd_exact = true;
    let mut m0 = 0.0;
    for k in 0..=12u32 {
        let m = discrete_moment(&kernel, k, 1e-12).expect("certifiable");
        if k % 2 == 1 {
            odd_exact &= m.value == 0.0;
        } else {
            let dev = (m.value - continuous_moment::<f64>(k)).abs();
            if dev > worst_even {
                worst_even = dev;
                worst_k = k;
            }
        }
        if k == 0 {
            m0 = m.value;
        }
    }
    let excess = m0 - 1.0;
    let even_ok = worst_even <= 1e-7;
    let m0_ok = excess > 4e-9 && excess < 7e-9;
    outcome(
        even_ok && odd_exact && m0_ok,
        format!(
            "even |M_k - (k-1)!!| max {worst_even:.3e} at k={worst_k} (limit 1e-7: {}); odd exact zero: {odd_exact}; M_0 - 1 = {excess:.4e} (in (4e-9, 7e-9): {m0_ok})",
            if even_ok { "ok" } else { "exceeded" }
        ),
    )
}

/// `|I[p_k](ℓ) - ℓ^k| ≤ 1e-9 max(1, |ℓ|^k)` for `k ≤ 10`, `|ℓ| ≤ 5`, extended precision.
pub fn interpolation_at_integers() -> Outcome {
    let table = MomentTable::<Extended>::build_default(&Kernel::gaussian(), 10).unwrap();
    let coeffs = Arc::new(CardinalCoefficients::build_triangular(&table, 10).unwrap());
    let tol = Extended::lit(1e-12);
    let mut worst = 0.0f64;
    for k in 0..=10usize {
        let interp = CardinalInterpolant::monomial(coeffs.clone(), k, tol).unwrap();
        for ell in -5i64..=5 {
            let e = interp.evaluate(Extended::from_int(ell)).unwrap();
            let exact = Extended::from_int(ell).powu(k as u32);
            let scale = exact.as_f64().abs().max(1.0);
            worst = worst.max((e.value - exact).as_f64().abs() / scale);
        }
    }
    outcome(worst <= 1e-9, format!("max scaled error {worst:.3e} (limit 1e-9), k <= 10, |l| <= 5, extended"))
}

/// Coefficients of `x^k - Σ C(k,i) M_{k-i} a_i` within `1e-12 max M_i` for `k ≤ 10`.
pub fn triangular_identity() -> Outcome {
    let table = MomentTable::<f64>::build_default(&Kernel::gaussian(), 10).unwrap();
    let coeffs = CardinalCoefficients::build_triangular(&table, 10).unwrap();
    let limit = 1e-12 * table.scale();
    let worst = (0..=10).map(|k| coeffs.triangular_residual(k)).fold(0.0, f64::max);
    outcome(worst <= limit, format!("max residual coefficient {worst:.3e} (limit {limit:.3e})"))
}

/// `Σ_j j^k ψ(j-ℓ) = Σ_i C(k,i) M_{k-i} ℓ^i` within `1e-10` for `k ≤ 8`, `|ℓ| ≤ 4`.
pub fn discrete_convolution() -> Outcome {
    let table = MomentTable::<f64>::build_default(&Kernel::gaussian(), 8).unwrap();
    let mut worst = 0.0f64;
    for k in 0..=8 {
        for ell in -4..=4 {
            worst = worst.max(verify_discpolyconv(&table, k, ell).unwrap().deviation());
        }
    }
    outcome(worst <= 1e-10, format!("max |lhs - rhs| {worst:.3e} (limit 1e-10), k <= 8, |l| <= 4"))
}

/// Shifted-moment expansion and its error-function form within `1e-8` at 25 points of `[-3, 3]`, `k ≤ 6`.
pub fn interpolation_theorem_and_corollary() -> Outcome {
    let table = MomentTable::<f64>::build_default(&Kernel::gaussian(), 6).unwrap();
    let coeffs = Arc::new(CardinalCoefficients::build_triangular(&table, 6).unwrap());
    let (mut theorem, mut corollary) = (0.0f64, 0.0f64);
    for i in 0..25 {
        let x = -3.0 + 6.0 * i as f64 / 24.0;
        for k in 0..=6 {
            theorem = theorem.max(verify_th_interp(&coeffs, k, x, 1e-13).unwrap().deviation());
            corollary = corollary.max(verify_corollary(&coeffs, k, x, 1e-13).unwrap().deviation());
        }
    }
    outcome(
        theorem <= 1e-8 && corollary <= 1e-8,
        format!("theorem max {theorem:.3e}, corollary max {corollary:.3e} (limit 1e-8), 25 points in [-3,3], k <= 6"),
    )
}

/// Umbral identities exact to `1e-12` for `k ≤ 20` (extended); Gaussian convolutions of `He_k`
/// and `y^k` by quadrature within `1e-9` relative at 5 points, `k ≤ 10`.
pub fn umbral_and_quadrature() -> Outcome {
    let mut umbral = 0.0f64;
    for k in 0..=20usize {
        let target = Polynomial::<Extended>::monomial(k);
        let parity = if k % 2 == 0 { Extended::lit(1.0) } else { -Extended::lit(1.0) };
        umbral = umbral.max((&umbral_he_sum::<Extended>(k) - &target.scale(parity)).max_abs_coeff().as_f64());
        umbral = umbral.max((&umbral_ne_sum::<Extended>(k) - &target).max_abs_coeff().as_f64());
    }
    let mut quad = 0.0f64;
    for x in [-2.0, -1.0, 0.0, 0.5, 3.0] {
        for k in 0..=10usize {
            let he = hermite_he::<f64>(k);
            let ne = hermite_ne::<f64>(k);
            let parity = if k % 2 == 0 { 1.0 } else { -1.0 };
            let he_int = quadrature::integrate(|y| he.eval(y) * psi(y - x), x - 12.0, x + 12.0, 1e-14).integral;
            let ne_int =
                quadrature::integrate(|y| y.powi(k as i32) * psi(y - x), x - 12.0, x + 12.0, 1e-14).integral;
            let target = x.powi(k as i32);
            quad = quad.max((he_int - parity * target).abs() / target.abs().max(1.0));
            quad = quad.max((ne_int - ne.eval(x)).abs() / ne.eval(x).abs().max(1.0));
        }
    }
    outcome(
        umbral <= 1e-12 && quad <= 1e-9,
        format!(
            "umbral max coefficient error {umbral:.3e} (limit 1e-12, k <= 20, extended; He form carries (-1)^k); quadrature max relative {quad:.3e} (limit 1e-9)"
        ),
    )
}

/// Triangular, `H̃e` recursion, spectral and finite-section coefficients agree on `|j| ≤ 5`
/// within `1e-7` for `p_0..p_6`; the triangular interpolation residual is at most `1e-9`.
pub fn route_equivalence() -> Outcome {
    const DEGREE: usize = 6;
    const INTERIOR: i64 = 5;
    const REACH: i64 = 45;
    const Z_MAX: usize = 128;
    let kernel = Kernel::<Extended>::gaussian();
    let table = MomentTable::build_default(&kernel, DEGREE).unwrap();
    let triangular = CardinalCoefficients::build_triangular(&table, DEGREE).unwrap();
    let q_he = CardinalCoefficients::build_q(&table, DEGREE, Route::QHe).unwrap();
    let q_ne = CardinalCoefficients::build_q(&table, DEGREE, Route::QNe).unwrap();
    let symbol = PeriodizedSymbol::periodize(&kernel, 1024).unwrap();
    let reciprocal = symbol.reciprocal_coefficients(Z_MAX).unwrap();
    let f64_kernel = Kernel::<f64>::gaussian();

    let mut worst = 0.0f64;
    let mut worst_at = 0;
    let mut triangular_residual = 0.0f64;
    let mut rankings = Vec::new();
    for k in 0..=DEGREE {
        let sample = |c: &CardinalCoefficients<Extended>, label: &str| {
            CoefficientSequence::from_fn(label, -REACH, REACH, |j| c.poly(k).eval(Extended::from_int(j)).as_f64())
        };
        let data_start = -(REACH + Z_MAX as i64);
        let data: Vec<Extended> =
            (data_start..=-data_start).map(|j| Extended::from_int(j).powu(k as u32)).collect();
        let spectral = spectral_interpolate(&reciprocal, data_start, &data).unwrap();
        let spectral_seq =
            CoefficientSequence::from_fn("spectral", -REACH, REACH, |j| spectral.coefficient(j).unwrap().as_f64());

        let targets = polynomial_targets(|x| x.powi(k as i32), oracle_width());
        let problem = solve_toeplitz(&f64_kernel, &targets, oracle_width(), oracle_pad()).unwrap();
        let routes =
            [sample(&triangular, "triangular"), sample(&q_he, "q-he"), spectral_seq, sample(&q_ne, "q-ne")];
        let oracle = problem.central(INTERIOR as usize);
        let compared = [&routes[0], &routes[1], &routes[2], &oracle];
        for a in compared {
            for b in compared {
                let d = a.max_deviation(b, INTERIOR as usize).unwrap();
                if d > worst {
                    worst = d;
                    worst_at = k;
                }
            }
        }
        let report = adjudicate(&f64_kernel, &routes, &problem, INTERIOR as usize).unwrap();
        let tri = report.iter().find(|r| r.label == "triangular").unwrap();
        triangular_residual = triangular_residual.max(tri.residual);
        if k == 4 {
            rankings = report.iter().map(|r| format!("{} {:.1e}", r.label, r.residual)).collect();
        }
    }
    outcome(
        worst <= 1e-7 && triangular_residual <= 1e-9,
        format!(
            "max pairwise deviation {worst:.3e} at p_{worst_at} (limit 1e-7) over triangular, q-he, spectral, oracle; triangular residual {triangular_residual:.3e} (limit 1e-9); p_4 ranking [{}]",
            rankings.join(", ")
        ),
    )
}

fn oracle_width() -> usize {
    cki_core::oracle::DEFAULT_HALF_WIDTH
}

fn oracle_pad() -> usize {
    cki_core::oracle::DEFAULT_PAD
}

/// Node reproduction within `1e-7 (1 + max|f_i|)` for `n ∈ {1,2,4,8,12}` and four test functions.
pub fn grid_pipeline() -> Outcome {
    let table = MomentTable::<f64>::build_default(&Kernel::gaussian(), 12).unwrap();
    let coeffs = Arc::new(CardinalCoefficients::build_triangular(&table, 12).unwrap());
    let functions: [(&str, fn(f64) -> f64); 4] =
        [("1", |_| 1.0), ("x", |x| x), ("x^2", |x| x * x), ("sin(pi x)", |x| (std::f64::consts::PI * x).sin())];
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    for n in [1usize, 2, 4, 8, 12] {
        for (name, f) in functions {
            let samples = GridSamples::from_fn(n, f).unwrap();
            let interp = GridInterpolant::build(&samples, coeffs.clone(), 1e-13).unwrap();
            let scale = 1.0 + samples.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let r = interp.node_residual(&samples).unwrap() / scale;
            if r > worst {
                worst = r;
                worst_case = format!("n={n}, f={name}");
            }
        }
    }
    outcome(worst <= 1e-7, format!("max scaled node residual {worst:.3e} ({worst_case}) (limit 1e-7)"))
}

/// Symbol minimum equals the alternating sum to `1e-10`, Poisson identity to `1e-12` at 64 points,
/// reciprocal reconstruction within `1e-9` at `z_max = 32`.
pub fn wiener_poisson_reciprocal() -> Outcome {
    let kernel = Kernel::<f64>::gaussian();
    let symbol = PeriodizedSymbol::periodize(&kernel, 4096).unwrap();
    let report = symbol.check_wiener();
    let alternating: f64 = (-20i32..=20).map(|j| if j % 2 == 0 { psi(j as f64) } else { -psi(j as f64) }).sum();
    let wiener_ok = report.holds && (report.min_modulus - alternating).abs() <= 1e-10;

    let poisson = (0..64)
        .map(|r| verify_poisson(&kernel, r as f64 / 64.0).unwrap().deviation())
        .fold(0.0, f64::max);
    let poisson_ok = poisson <= 1e-12;

    let reciprocal = symbol.reciprocal_coefficients(32).unwrap();
    let residual = reciprocal.residual();
    let reconstruction_ok = residual <= 1e-9;
    outcome(
        wiener_ok && poisson_ok && reconstruction_ok,
        format!(
            "Wiener holds {} with min {:.15e} at t={} vs alternating sum {alternating:.15e}; Poisson max {poisson:.3e} (limit 1e-12); reconstruction residual {residual:.3e} with z_max=32 (limit 1e-9), |a_32| = {:.2e}",
            report.holds,
            report.min_modulus,
            report.argmin,
            reciprocal.get(32).abs()
        ),
    )
}

/// `σ_min / σ_max > 1e-12` for the monomial-to-sequence matrix, `N ≤ 10`.
pub fn uniqueness() -> Outcome {
    let kernel = Kernel::<f64>::gaussian();
    let mut worst_centred = f64::INFINITY;
    let mut worst_left = f64::INFINITY;
    for n in 0..=10usize {
        let centred: Vec<i64> = (-(n as i64 / 2)..=(n as i64 + 1) / 2).collect();
        let left: Vec<i64> = (0..=n as i64).collect();
        let (lo, hi) = singular_value_extremes(&uniqueness_matrix(&kernel, n, &centred, 1e-15).unwrap());
        worst_centred = worst_centred.min(lo / hi);
        let (lo, hi) = singular_value_extremes(&uniqueness_matrix(&kernel, n, &left, 1e-15).unwrap());
        worst_left = worst_left.min(lo / hi);
    }
    outcome(
        worst_centred > 1e-12,
        format!(
            "min sigma_min/sigma_max {worst_centred:.3e} on centred nodes (limit 1e-12); nodes 0..N give {worst_left:.3e}, N <= 10"
        ),
    )
}

/// The criteria in order, with short names.
pub const CRITERIA: [(&str, fn() -> Outcome); 10] = [
    ("moment certification", moment_certification),
    ("interpolation at integers", interpolation_at_integers),
    ("triangular moment identity", triangular_identity),
    ("discrete polynomial convolution", discrete_convolution),
    ("interpolation theorem and error corollary", interpolation_theorem_and_corollary),
    ("umbral composition and Gaussian convolution", umbral_and_quadrature),
    ("route equivalence", route_equivalence),
    ("grid pipeline", grid_pipeline),
    ("Wiener, Poisson and reciprocal symbol", wiener_poisson_reciprocal),
    ("uniqueness", uniqueness),
];
