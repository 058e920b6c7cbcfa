use std::sync::Arc;

use cki_core::cardinal::{
    error_functions, verify_corollary, verify_discpolyconv, verify_th_interp, CardinalCoefficients, CardinalInterpolant,
};
use cki_core::grid::{GridInterpolant, GridSamples};
use cki_core::oracle::{polynomial_targets, solve_toeplitz, DEFAULT_HALF_WIDTH, DEFAULT_PAD};
use cki_core::spectral::{spectral_interpolate, symbol_with_zero, verify_poisson, PeriodizedSymbol, DEFAULT_SAMPLES};
use cki_core::{Error, Extended, Kernel, MomentTable, Polynomial, Real, Route};

use crate::output::{Cell, Table};
use crate::{Failure, KernelChoice};

/// Degrees beyond this overflow the exact binomial table.
pub const MAX_DEGREE: usize = 60;

/// Reciprocal-symbol resolution for the spectral route (always extended).
const SPECTRAL_SAMPLES: usize = 1024;
const SPECTRAL_Z_MAX: usize = 128;

fn gaussian<R: Real>(choice: KernelChoice, what: &str) -> Result<Kernel<R>, Failure> {
    match choice {
        KernelChoice::Gaussian => Ok(Kernel::gaussian()),
        KernelChoice::SyntheticZero => Err(Failure::Core(Error::Unsupported(format!(
            "the synthetic-zero kernel is a symbol only; {what} needs the Gaussian"
        )))),
    }
}

fn check_degree(n: usize) -> Result<(), Failure> {
    if n > MAX_DEGREE {
        return Err(Failure::Input(format!("max degree {n} exceeds the cap {MAX_DEGREE}")));
    }
    Ok(())
}

fn table<R: Real>(kernel: &Kernel<R>, n: usize, tol: R) -> Result<MomentTable<R>, Failure> {
    MomentTable::build(kernel, n, tol).map_err(|e| match e {
        Error::TailNotCertifiable { degree, .. } => Failure::Input(format!("certification failed at k={degree}: {e}")),
        other => Failure::Core(other),
    })
}

pub fn moments<R: Real>(choice: KernelChoice, n: usize, tol: R) -> Result<Vec<Table>, Failure> {
    check_degree(n)?;
    let kernel = gaussian::<R>(choice, "moments")?;
    let t = table(&kernel, n, tol)?;
    let mut out = Table::new("moments", ["k", "value", "radius", "tail"]);
    for (k, m) in t.entries().iter().enumerate() {
        out.push(vec![Cell::int(k as i64), Cell::real(m.value), Cell::int(m.radius as i64), Cell::real(m.tail_bound)]);
    }
    Ok(vec![out])
}

/// `a_k` for `k = 0..=n`, recovered from central sequence values for the
/// sequence routes.
fn route_polys<R: Real>(t: &MomentTable<R>, n: usize, route: Route) -> Result<Vec<Polynomial<R>>, Failure> {
    match route {
        Route::Triangular | Route::QHe | Route::QNe => {
            Ok(CardinalCoefficients::build(t, n, route).map_err(Failure::Core)?.polys().to_vec())
        }
        Route::Spectral => {
            let kernel = Kernel::<Extended>::gaussian();
            let reciprocal = PeriodizedSymbol::periodize(&kernel, SPECTRAL_SAMPLES)
                .and_then(|s| s.reciprocal_coefficients(SPECTRAL_Z_MAX))
                .map_err(Failure::Core)?;
            (0..=n)
                .map(|k| {
                    let (lo, hi) = node_window(k);
                    let start = lo - SPECTRAL_Z_MAX as i64;
                    let end = hi + SPECTRAL_Z_MAX as i64;
                    let data: Vec<Extended> = (start..=end).map(|j| Extended::from_int(j).powu(k as u32)).collect();
                    let c = spectral_interpolate(&reciprocal, start, &data).map_err(Failure::Core)?;
                    let values: Vec<R> = (lo..=hi).map(|j| R::lit(c.coefficient(j).unwrap().as_f64())).collect();
                    Ok(Polynomial::interpolate_integer_nodes(lo, &values))
                })
                .collect()
        }
        Route::Toeplitz => {
            let kernel = Kernel::<f64>::gaussian();
            (0..=n)
                .map(|k| {
                    let targets = polynomial_targets(|x| x.powi(k as i32), DEFAULT_HALF_WIDTH);
                    let p = solve_toeplitz(&kernel, &targets, DEFAULT_HALF_WIDTH, DEFAULT_PAD).map_err(Failure::Core)?;
                    let (lo, hi) = node_window(k);
                    let values: Vec<R> = (lo..=hi).map(|j| R::lit(p.coefficient(j).unwrap())).collect();
                    Ok(Polynomial::interpolate_integer_nodes(lo, &values))
                })
                .collect()
        }
    }
}

/// `k + 1` integer nodes centred on the origin.
fn node_window(k: usize) -> (i64, i64) {
    let lo = -(k as i64 / 2);
    (lo, lo + k as i64)
}

pub fn coeffs<R: Real>(choice: KernelChoice, n: usize, tol: R, routes: &[Route]) -> Result<Vec<Table>, Failure> {
    check_degree(n)?;
    let kernel = gaussian::<R>(choice, "coefficient construction")?;
    let t = table(&kernel, n, tol)?;
    let mut columns = vec!["route".to_string(), "k".to_string()];
    columns.extend((0..=n).map(|i| format!("c{i}")));
    let mut out = Table::new("coefficients", columns);
    let mut families = Vec::new();
    for &route in routes {
        let polys = route_polys(&t, n, route)?;
        for (k, p) in polys.iter().enumerate() {
            let mut row = vec![Cell::text(route.name()), Cell::int(k as i64)];
            row.extend((0..=n).map(|i| Cell::real(p.coeff(i))));
            out.push(row);
        }
        families.push((route, polys));
    }
    if routes.len() == 1 {
        return Ok(vec![out]);
    }
    let mut deviations = Table::new("deviations", ["route_a", "route_b", "max_deviation"]);
    for (i, (ra, pa)) in families.iter().enumerate() {
        for (rb, pb) in &families[i + 1..] {
            let d = pa.iter().zip(pb).map(|(a, b)| (a - b).max_abs_coeff().as_f64()).fold(0.0, f64::max);
            deviations.push(vec![Cell::text(ra.name()), Cell::text(rb.name()), Cell::float(d)]);
        }
    }
    Ok(vec![out, deviations])
}

pub fn interp<R: Real>(
    choice: KernelChoice,
    values: &[f64],
    n: Option<usize>,
    points: usize,
    tol: R,
) -> Result<Vec<Table>, Failure> {
    let rows = values.len() - 1;
    if let Some(n) = n {
        if n != rows {
            return Err(Failure::Input(format!("--n {n} does not match the {} samples in the file", values.len())));
        }
    }
    if points == 0 {
        return Err(Failure::Input("--points must be at least 1".into()));
    }
    let kernel = gaussian::<R>(choice, "grid interpolation")?;
    let samples = GridSamples::new(values.iter().map(|&v| R::lit(v)).collect()).map_err(Failure::Core)?;
    cki_core::grid::fit_polynomial(&samples).map_err(Failure::Core)?;
    let t = table(&kernel, rows, tol)?;
    let coeffs = Arc::new(CardinalCoefficients::build_triangular(&t, rows).map_err(Failure::Core)?);
    let g = GridInterpolant::build(&samples, coeffs, tol).map_err(Failure::Core)?;

    let mut evals = Table::new("evaluations", ["x", "value", "budget", "extrapolated"]);
    for r in 0..=points {
        let x = R::from_uint(r as u64) / R::from_uint(points as u64);
        let e = g.evaluate(x).map_err(Failure::Core)?;
        evals.push(vec![Cell::real(x), Cell::real(e.value), Cell::real(e.budget), Cell::flag(e.extrapolated)]);
    }
    let mut nodes = Table::new("nodes", ["i", "x", "sample", "value", "residual"]);
    for (i, &f) in samples.values().iter().enumerate() {
        let x = samples.node(i);
        // integer node directly, so n·(i/n) rounding does not enter the residual
        let e = g.cardinal().evaluate(R::from_uint(i as u64)).map_err(Failure::Core)?;
        nodes.push(vec![
            Cell::int(i as i64),
            Cell::real(x),
            Cell::real(f),
            Cell::real(e.value),
            Cell::real((e.value - f).abs()),
        ]);
    }
    Ok(vec![evals, nodes])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Identity {
    All,
    Triangular,
    Interpolation,
    Discpolyconv,
    ThInterp,
    Corollary,
    Poisson,
    Wiener,
}

impl Identity {
    const SUITE: [Identity; 7] = [
        Identity::Triangular,
        Identity::Interpolation,
        Identity::Discpolyconv,
        Identity::ThInterp,
        Identity::Corollary,
        Identity::Poisson,
        Identity::Wiener,
    ];

    fn name(self) -> &'static str {
        match self {
            Identity::All => "all",
            Identity::Triangular => "triangular",
            Identity::Interpolation => "interpolation",
            Identity::Discpolyconv => "discpolyconv",
            Identity::ThInterp => "th-interp",
            Identity::Corollary => "corollary",
            Identity::Poisson => "poisson",
            Identity::Wiener => "wiener",
        }
    }
}

/// Cases checked, failures, and the largest deviation seen.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    worst: f64,
}

impl Tally {
    fn record<R: Real>(&mut self, deviation: R, allowed: R) {
        self.cases += 1;
        let d = deviation.as_f64();
        self.worst = self.worst.max(d);
        if !(deviation <= allowed) {
            self.failures += 1;
        }
    }
}

/// Points in `[-3, 3]` for the shifted-moment identities.
fn spread<R: Real>(points: usize) -> Vec<R> {
    let m = points.max(2);
    (0..m)
        .map(|r| R::lit(-3.0) + R::lit(6.0) * R::from_uint(r as u64) / R::from_uint(m as u64 - 1))
        .collect()
}

fn relative<R: Real>(scale: R, rel: f64) -> R {
    R::lit(rel) * scale.abs().max(R::one())
}

pub struct VerifyReport {
    pub tables: Vec<Table>,
    pub all_pass: bool,
}

pub fn verify<R: Real>(
    choice: KernelChoice,
    n: usize,
    tol: R,
    identity: Identity,
    points: usize,
) -> Result<VerifyReport, Failure> {
    check_degree(n)?;
    if points == 0 {
        return Err(Failure::Input("--points must be at least 1".into()));
    }
    let selected: Vec<Identity> = match (identity, choice) {
        (Identity::All, KernelChoice::Gaussian) => Identity::SUITE.to_vec(),
        (Identity::All, KernelChoice::SyntheticZero) | (Identity::Wiener, _) => vec![Identity::Wiener],
        (one, KernelChoice::Gaussian) => vec![one],
        (one, KernelChoice::SyntheticZero) => {
            return Err(Failure::Core(Error::Unsupported(format!(
                "identity '{}' needs the Gaussian kernel",
                one.name()
            ))))
        }
    };

    let mut out = Table::new("identities", ["identity", "cases", "failures", "max_deviation", "pass"]);
    let mut all_pass = true;
    let mut coeffs: Option<Arc<CardinalCoefficients<R>>> = None;
    for id in selected {
        let mut tally = Tally::default();
        if id != Identity::Wiener && id != Identity::Poisson && coeffs.is_none() {
            let kernel = gaussian::<R>(choice, "verification")?;
            let t = table(&kernel, n, tol)?;
            coeffs = Some(Arc::new(CardinalCoefficients::build_triangular(&t, n).map_err(Failure::Core)?));
        }
        match id {
            Identity::Triangular => {
                let c = coeffs.as_ref().unwrap();
                let scale = c.moments().scale();
                for k in 0..=n {
                    tally.record(c.triangular_residual(k), R::lit(1e-12) * scale);
                }
            }
            Identity::Interpolation => {
                let c = coeffs.as_ref().unwrap();
                for k in 0..=n {
                    let interp = CardinalInterpolant::monomial(c.clone(), k, tol).map_err(Failure::Core)?;
                    for ell in -5i64..=5 {
                        let x = R::from_int(ell);
                        let e = interp.evaluate(x).map_err(Failure::Core)?;
                        let exact = x.powu(k as u32);
                        tally.record((e.value - exact).abs(), e.budget + relative(exact, 1e-9));
                    }
                }
            }
            Identity::Discpolyconv => {
                let c = coeffs.as_ref().unwrap();
                for k in 0..=n {
                    for ell in -4i64..=4 {
                        let check = verify_discpolyconv(c.moments(), k, ell).map_err(Failure::Core)?;
                        tally.record(check.deviation(), check.budget + relative(check.rhs, 1e-10));
                    }
                }
            }
            Identity::ThInterp | Identity::Corollary => {
                let c = coeffs.as_ref().unwrap();
                for k in 0..=n {
                    for x in spread::<R>(points) {
                        let check = if id == Identity::ThInterp {
                            verify_th_interp(c, k, x, tol)
                        } else {
                            verify_corollary(c, k, x, tol)
                        }
                        .map_err(Failure::Core)?;
                        let scale = error_functions(c, k, x, tol).map_err(Failure::Core)?.moment.value.abs() + c.moments().value(k).abs();
                        tally.record(check.deviation(), check.budget + relative(scale, 1e-8));
                    }
                }
            }
            Identity::Poisson => {
                let kernel = gaussian::<R>(choice, "the Poisson identity")?;
                for r in 0..points {
                    let x = R::from_uint(r as u64) / R::from_uint(points as u64);
                    let check = verify_poisson(&kernel, x).map_err(Failure::Core)?;
                    tally.record(check.deviation(), R::lit(1e-12));
                }
            }
            Identity::Wiener => {
                let symbol = match choice {
                    KernelChoice::Gaussian => {
                        PeriodizedSymbol::<R>::periodize(&Kernel::gaussian(), wiener_samples::<R>())
                    }
                    KernelChoice::SyntheticZero => symbol_with_zero::<R>(wiener_samples::<R>(), wiener_samples::<R>() / 4),
                }
                .map_err(Failure::Core)?;
                let report = symbol.check_wiener();
                // the deviation column carries the minimum modulus
                tally.cases = 1;
                tally.worst = report.min_modulus.as_f64();
                tally.failures = usize::from(!report.holds);
            }
            Identity::All => unreachable!("expanded above"),
        }
        let pass = tally.failures == 0;
        all_pass &= pass;
        out.push(vec![
            Cell::text(id.name()),
            Cell::int(tally.cases as i64),
            Cell::int(tally.failures as i64),
            Cell::float(tally.worst),
            Cell::flag(pass),
        ]);
    }
    Ok(VerifyReport { tables: vec![out], all_pass })
}

fn wiener_samples<R: Real>() -> usize {
    match R::PRECISION {
        cki_core::Precision::Standard => DEFAULT_SAMPLES,
        cki_core::Precision::Extended => SPECTRAL_SAMPLES,
    }
}
