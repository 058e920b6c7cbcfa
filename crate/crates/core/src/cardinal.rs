//! Coefficient polynomials `a_k` with `I[p_k](x) = Σ_j a_k(j) ψ(x - j)`, their
//! evaluation with error budgets, and the lattice identities tying them to the
//! moments.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::kernel::{search_radius, truncation_radius, Kernel, MomentTable};
use crate::poly::{binomial_real, discrete_he, discrete_ne, hermite_ne, Polynomial};
use crate::real::Real;

/// How a family of coefficient polynomials (or sequences) was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Forward substitution in `x^k = Σ C(k,i) M_{k-i} a_i(x)`.
    Triangular,
    /// Gaussian recursion seeded with the discrete alternating family `H̃e_k`.
    QHe,
    /// The same recursion seeded with the continuous `Ne_k` (comparison only).
    QNe,
    /// Convolution of samples with the reciprocal-symbol coefficients.
    Spectral,
    /// Finite-section least squares.
    Toeplitz,
}

impl Route {
    pub const ALL: [Route; 5] = [Route::Triangular, Route::QHe, Route::QNe, Route::Spectral, Route::Toeplitz];

    pub fn name(self) -> &'static str {
        match self {
            Route::Triangular => "triangular",
            Route::QHe => "q-he",
            Route::QNe => "q-ne",
            Route::Spectral => "spectral",
            Route::Toeplitz => "toeplitz",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| format!("unknown route '{s}'"))
    }
}

/// `a_0..a_N` for one kernel, immutable once built.
#[derive(Debug, Clone)]
pub struct CardinalCoefficients<R> {
    moments: MomentTable<R>,
    polys: Vec<Polynomial<R>>,
    route: Route,
}

impl<R: Real> CardinalCoefficients<R> {
    /// `a_k = (x^k - Σ_{i<k} C(k,i) M_{k-i} a_i) / M_0`.
    pub fn build_triangular(moments: &MomentTable<R>, max_degree: usize) -> Result<Self> {
        moments.require(max_degree)?;
        let m0 = moments.value(0);
        if m0.is_zero() {
            return Err(Error::SingularSystem("M_0 = 0".into()));
        }
        let mut polys: Vec<Polynomial<R>> = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let mut acc = Polynomial::monomial(k);
            for (i, a_i) in polys.iter().enumerate() {
                let weight = binomial_real::<R>(k, i) * moments.value(k - i);
                acc = &acc - &a_i.scale(weight);
            }
            polys.push(acc.scale(R::one() / m0));
        }
        Ok(CardinalCoefficients { moments: moments.clone(), polys, route: Route::Triangular })
    }

    /// `Q_k = (B_k - Σ_{i≥1} c_{k,i} Q_{k-4i}) / M_0²` with
    /// `c_{k,i} = Σ_{m=0}^{2i} (-1)^m C(k,2m) C(k-2m,4i-2m) M_{2m} M_{4i-2m}`.
    ///
    /// `B_k = H̃e_k` ([`Route::QHe`]) makes the lattice convolution of `B_k`
    /// equal `M_0² ℓ^k + Σ c_{k,i} ℓ^{k-4i}`, so the recursion is exact.
    /// `B_k = Ne_k` ([`Route::QNe`]) is kept for comparison.
    pub fn build_q(moments: &MomentTable<R>, max_degree: usize, route: Route) -> Result<Self> {
        if !matches!(route, Route::QHe | Route::QNe) {
            return Err(Error::Unsupported(format!("{route} is not a recursion route")));
        }
        if !moments.is_symmetric() {
            return Err(Error::Unsupported(format!(
                "{route} needs a symmetric kernel; use the triangular route"
            )));
        }
        moments.require(max_degree)?;
        let m0 = moments.value(0);
        if m0.is_zero() {
            return Err(Error::SingularSystem("M_0 = 0".into()));
        }
        let inv_m0_sq = R::one() / (m0 * m0);
        let mut polys: Vec<Polynomial<R>> = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let mut acc = match route {
                Route::QHe => discrete_he(k, moments)?,
                _ => hermite_ne(k),
            };
            for i in 1..=k / 4 {
                acc = &acc - &polys[k - 4 * i].scale(correction_weight(moments, k, i));
            }
            polys.push(acc.scale(inv_m0_sq));
        }
        Ok(CardinalCoefficients { moments: moments.clone(), polys, route })
    }

    /// Dispatches on a polynomial route.
    pub fn build(moments: &MomentTable<R>, max_degree: usize, route: Route) -> Result<Self> {
        match route {
            Route::Triangular => Self::build_triangular(moments, max_degree),
            Route::QHe | Route::QNe => Self::build_q(moments, max_degree, route),
            other => Err(Error::Unsupported(format!(
                "{other} yields coefficient sequences, not polynomials"
            ))),
        }
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn moments(&self) -> &MomentTable<R> {
        &self.moments
    }

    pub fn kernel(&self) -> &Kernel<R> {
        self.moments.kernel()
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, k: usize) -> &Polynomial<R> {
        &self.polys[k]
    }

    pub fn polys(&self) -> &[Polynomial<R>] {
        &self.polys
    }

    /// `a_p = Σ_k c_k a_k` for `p = Σ_k c_k x^k`.
    pub fn combine(&self, target: &Polynomial<R>) -> Result<Polynomial<R>> {
        let degree = target.degree().max(0) as usize;
        if degree > self.max_degree() {
            return Err(Error::MomentTableTooShort { needed: degree, available: self.max_degree() });
        }
        Ok(target
            .coeffs()
            .iter()
            .zip(&self.polys)
            .fold(Polynomial::zero(), |acc, (&c, a)| &acc + &a.scale(c)))
    }

    /// Coefficient residual of `x^k - Σ_{i≤k} C(k,i) M_{k-i} a_i(x)`.
    pub fn triangular_residual(&self, k: usize) -> R {
        let mut acc = Polynomial::monomial(k);
        for i in 0..=k {
            let weight = binomial_real::<R>(k, i) * self.moments.value(k - i);
            acc = &acc - &self.polys[i].scale(weight);
        }
        acc.max_abs_coeff()
    }

    /// Largest coefficient-wise difference against another family.
    pub fn max_deviation(&self, other: &Self) -> R {
        self.polys
            .iter()
            .zip(&other.polys)
            .map(|(a, b)| (a - b).max_abs_coeff())
            .fold(R::zero(), R::max)
    }
}

fn correction_weight<R: Real>(moments: &MomentTable<R>, k: usize, i: usize) -> R {
    (0..=2 * i).fold(R::zero(), |acc, m| {
        let sign = if m % 2 == 0 { R::one() } else { -R::one() };
        acc + sign
            * binomial_real::<R>(k, 2 * m)
            * binomial_real::<R>(k - 2 * m, 4 * i - 2 * m)
            * moments.value(2 * m)
            * moments.value(4 * i - 2 * m)
    })
}

/// A value with a non-negative error budget (certified tail plus rounding estimate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<R> {
    pub value: R,
    pub budget: R,
}

/// Two sides of an identity, each computed independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck<R> {
    pub lhs: R,
    pub rhs: R,
    pub budget: R,
}

impl<R: Real> IdentityCheck<R> {
    pub fn deviation(&self) -> R {
        (self.lhs - self.rhs).abs()
    }

    pub fn holds(&self, tol: R) -> bool {
        self.deviation() <= tol
    }
}

/// `I[p](x) = Σ_j a_p(j) ψ(x - j)` for a fixed target polynomial `p`.
#[derive(Debug, Clone)]
pub struct CardinalInterpolant<R> {
    coeffs: Arc<CardinalCoefficients<R>>,
    target: Polynomial<R>,
    combined: Polynomial<R>,
    tol: R,
}

impl<R: Real> CardinalInterpolant<R> {
    pub fn new(coeffs: Arc<CardinalCoefficients<R>>, target: Polynomial<R>, tol: R) -> Result<Self> {
        if !(tol > R::zero()) {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        let combined = coeffs.combine(&target)?;
        Ok(CardinalInterpolant { coeffs, target, combined, tol })
    }

    /// Interpolant of `x^k`.
    pub fn monomial(coeffs: Arc<CardinalCoefficients<R>>, k: usize, tol: R) -> Result<Self> {
        Self::new(coeffs, Polynomial::monomial(k), tol)
    }

    pub fn target(&self) -> &Polynomial<R> {
        &self.target
    }

    pub fn coefficient_polynomial(&self) -> &Polynomial<R> {
        &self.combined
    }

    pub fn coefficients(&self) -> &CardinalCoefficients<R> {
        &self.coeffs
    }

    pub fn tol(&self) -> R {
        self.tol
    }

    /// Sums over `|j - round(x)| ≤ R`, with `R` certified so the dropped shifts
    /// contribute at most `tol`.
    pub fn evaluate(&self, x: R) -> Result<Evaluation<R>> {
        self.evaluate_with_radius(x, None)
    }

    /// As [`CardinalInterpolant::evaluate`], optionally forcing a wider radius.
    pub fn evaluate_with_radius(&self, x: R, min_radius: Option<u32>) -> Result<Evaluation<R>> {
        let kernel = self.coeffs.kernel();
        let centre = x.round();
        let centre_int = centre.to_i64().ok_or_else(|| Error::InvalidInput("evaluation point out of range".into()))?;
        let degree = self.combined.degree().max(0) as u32;

        // |a_p(c+m)| ≤ B |m|^d for |m| ≥ 1
        let weight = polynomial_weight(&self.combined, centre);
        let certified = search_radius(degree, self.tol, |r| weight * kernel.shifted_tail_bound(r, degree))?;
        let radius = certified.max(min_radius.unwrap_or(0));
        let tail = weight * kernel.shifted_tail_bound(radius, degree);

        let mut value = R::zero();
        let mut magnitude = R::zero();
        for m in -(radius as i64)..=radius as i64 {
            let j = R::from_int(centre_int + m);
            let psi = kernel.eval(x - j);
            value = value + self.combined.eval(j) * psi;
            magnitude = magnitude + self.combined.eval_abs(j) * psi.abs();
        }
        let ops = R::from_uint(2 * radius as u64 + degree as u64 + 3);
        Ok(Evaluation { value, budget: tail + ops * R::unit_roundoff() * magnitude })
    }
}

/// `Σ |α_i| (1 + |c|)^i`, so that `|p(c + m)| ≤ B |m|^deg p` whenever `|m| ≥ 1`.
fn polynomial_weight<R: Real>(p: &Polynomial<R>, centre: R) -> R {
    p.eval_abs(R::one() + centre.abs())
}

/// `Σ_j (j - x)^k ψ(j - x)` with its tail and rounding budget.
pub fn shifted_moment<R: Real>(kernel: &Kernel<R>, k: u32, x: R, tol: R) -> Result<Evaluation<R>> {
    let centre = x.round();
    let centre_int = centre.to_i64().ok_or_else(|| Error::InvalidInput("evaluation point out of range".into()))?;
    // |m - δ| ≤ 3/2 |m| for |m| ≥ 1
    let weight = R::lit(1.5).powu(k);
    let radius = search_radius(k, tol, |r| weight * kernel.shifted_tail_bound(r, k))?;
    let tail = weight * kernel.shifted_tail_bound(radius, k);
    let mut value = R::zero();
    let mut magnitude = R::zero();
    for m in -(radius as i64)..=radius as i64 {
        let d = R::from_int(centre_int + m) - x;
        let term = d.powu(k) * kernel.eval(d);
        value = value + term;
        magnitude = magnitude + term.abs();
    }
    let ops = R::from_uint(2 * radius as u64 + k as u64 + 3);
    Ok(Evaluation { value, budget: tail + ops * R::unit_roundoff() * magnitude })
}

/// `Σ_j j^k ψ(j - ℓ)` against `Σ_i C(k,i) M_{k-i} ℓ^i`.
pub fn verify_discpolyconv<R: Real>(moments: &MomentTable<R>, k: usize, shift: i64) -> Result<IdentityCheck<R>> {
    moments.require(k)?;
    let kernel = moments.kernel();
    let tol = moments.tol();
    let ell = R::from_int(shift);

    // j = ℓ + m, |ℓ + m|^k ≤ (1 + |ℓ|)^k |m|^k
    let weight = (R::one() + ell.abs()).powu(k as u32);
    let radius = search_radius(k as u32, tol, |r| weight * kernel.tail_bound(r, k as u32))?;
    let mut lhs = R::zero();
    let mut magnitude = R::zero();
    for m in -(radius as i64)..=radius as i64 {
        let term = R::from_int(shift + m).powu(k as u32) * kernel.eval_at(m);
        lhs = lhs + term;
        magnitude = magnitude + term.abs();
    }
    let lhs_budget = weight * kernel.tail_bound(radius, k as u32)
        + R::from_uint(2 * radius as u64 + k as u64 + 3) * R::unit_roundoff() * magnitude;

    let mut rhs = R::zero();
    let mut rhs_budget = R::zero();
    for i in 0..=k {
        let weight = binomial_real::<R>(k, i) * ell.powu(i as u32);
        rhs = rhs + weight * moments.value(k - i);
        rhs_budget = rhs_budget + weight.abs() * moments.entry(k - i).error_bound();
    }
    Ok(IdentityCheck { lhs, rhs, budget: lhs_budget + rhs_budget })
}

/// `Σ_j (j-x)^k ψ(j-x)` against `Σ_i C(k,i) q_i(-x) I[p_{k-i}](x)`.
pub fn verify_th_interp<R: Real>(
    coeffs: &Arc<CardinalCoefficients<R>>,
    k: usize,
    x: R,
    tol: R,
) -> Result<IdentityCheck<R>> {
    let lhs = shifted_moment(coeffs.kernel(), k as u32, x, tol)?;
    let mut rhs = R::zero();
    let mut budget = lhs.budget;
    for i in 0..=k {
        let q = discrete_ne(i, coeffs.moments())?.eval(-x);
        let interp = CardinalInterpolant::monomial(coeffs.clone(), k - i, tol)?.evaluate(x)?;
        let weight = binomial_real::<R>(k, i) * q;
        rhs = rhs + weight * interp.value;
        budget = budget + weight.abs() * interp.budget;
    }
    Ok(IdentityCheck { lhs: lhs.value, rhs, budget })
}

/// `E_k(x) = I[p_k](x) - x^k` and `χ_k(x) = Σ_j (j-x)^k ψ(j-x) - M_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorFunctions<R> {
    pub interpolation: Evaluation<R>,
    pub moment: Evaluation<R>,
}

pub fn error_functions<R: Real>(
    coeffs: &Arc<CardinalCoefficients<R>>,
    k: usize,
    x: R,
    tol: R,
) -> Result<ErrorFunctions<R>> {
    let interp = CardinalInterpolant::monomial(coeffs.clone(), k, tol)?.evaluate(x)?;
    let power = x.powu(k as u32);
    let interpolation = Evaluation {
        value: interp.value - power,
        budget: interp.budget + R::unit_roundoff() * power.abs(),
    };
    let shifted = shifted_moment(coeffs.kernel(), k as u32, x, tol)?;
    let m_k = coeffs.moments().entry(k);
    let moment = Evaluation { value: shifted.value - m_k.value, budget: shifted.budget + m_k.error_bound() };
    Ok(ErrorFunctions { interpolation, moment })
}

/// `χ_k(x)` against `Σ_i C(k,i) q_i(-x) E_{k-i}(x)`.
pub fn verify_corollary<R: Real>(
    coeffs: &Arc<CardinalCoefficients<R>>,
    k: usize,
    x: R,
    tol: R,
) -> Result<IdentityCheck<R>> {
    let lhs = error_functions(coeffs, k, x, tol)?.moment;
    let mut rhs = R::zero();
    let mut budget = lhs.budget;
    for i in 0..=k {
        let q = discrete_ne(i, coeffs.moments())?.eval(-x);
        let e = error_functions(coeffs, k - i, x, tol)?.interpolation;
        let weight = binomial_real::<R>(k, i) * q;
        rhs = rhs + weight * e.value;
        budget = budget + weight.abs() * e.budget;
    }
    Ok(IdentityCheck { lhs: lhs.value, rhs, budget })
}

/// Rows `ℓ ∈ nodes`, columns `i = 0..=degree`: `Σ_j j^i ψ(j - ℓ)`, the map from
/// the monomial coefficients of `r` to the sequence `ℓ ↦ Σ_j r(j) ψ(j - ℓ)`.
pub fn uniqueness_matrix(kernel: &Kernel<f64>, degree: usize, nodes: &[i64], tol: f64) -> Result<DMatrix<f64>> {
    let mut matrix = DMatrix::zeros(nodes.len(), degree + 1);
    for i in 0..=degree {
        let radius = truncation_radius(kernel, i as u32, tol)? as i64 + nodes.iter().map(|l| l.abs()).max().unwrap_or(0);
        for (row, &ell) in nodes.iter().enumerate() {
            matrix[(row, i)] = (-radius..=radius)
                .map(|m| ((ell + m) as f64).powi(i as i32) * kernel.eval_at(m))
                .sum();
        }
    }
    Ok(matrix)
}

/// `(σ_min, σ_max)` of a dense matrix.
pub fn singular_value_extremes(matrix: &DMatrix<f64>) -> (f64, f64) {
    let values = matrix.singular_values();
    let max = values.iter().cloned().fold(0.0, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    (min, max)
}
