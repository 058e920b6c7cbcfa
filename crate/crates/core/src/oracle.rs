//! Finite-section ground truth: minimum-norm least squares for
//! `Σ_j c_j ψ(j - ℓ) = t_ℓ`, `|ℓ| ≤ L`, `|j| ≤ L + pad`, in `f64`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::kernel::Kernel;

/// Window used for route adjudication: wide enough that the centre of the
/// finite section matches the infinite system to about `1e-9` for degree 6.
pub const DEFAULT_HALF_WIDTH: usize = 100;
pub const DEFAULT_PAD: usize = 20;

/// Reciprocal condition numbers below this are treated as singular.
const SINGULAR_RCOND: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct ToeplitzProblem {
    half_width: usize,
    pad: usize,
    targets: Vec<f64>,
    coefficients: Vec<f64>,
    residual: f64,
    condition: f64,
}

/// Solves `c = Aᵀ (A Aᵀ)^{-1} t` with `A_{ℓ,j} = ψ(j - ℓ)`.
pub fn solve_toeplitz(kernel: &Kernel<f64>, targets: &[f64], half_width: usize, pad: usize) -> Result<ToeplitzProblem> {
    let rows = 2 * half_width + 1;
    if targets.len() != rows {
        return Err(Error::InvalidInput(format!("expected {rows} targets, got {}", targets.len())));
    }
    if pad == 0 {
        return Err(Error::InvalidInput("pad must be at least 1".into()));
    }
    let cols = rows + 2 * pad;
    let l0 = -(half_width as i64);
    let j0 = l0 - pad as i64;
    let a = DMatrix::from_fn(rows, cols, |r, c| kernel.eval_at((j0 + c as i64) - (l0 + r as i64)));
    let gram = &a * a.transpose();

    let eigen = gram.clone().symmetric_eigenvalues();
    let lambda_max = eigen.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lambda_min = eigen.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = if lambda_min > 0.0 { lambda_max / lambda_min } else { f64::INFINITY };
    if !(lambda_min > SINGULAR_RCOND * lambda_max) {
        return Err(Error::NumericallySingular { condition });
    }
    let t = DVector::from_column_slice(targets);
    let chol = gram.cholesky().ok_or(Error::NumericallySingular { condition })?;
    let c = a.transpose() * chol.solve(&t);
    let residual = (&a * &c - &t).amax();
    Ok(ToeplitzProblem {
        half_width,
        pad,
        targets: targets.to_vec(),
        coefficients: c.iter().cloned().collect(),
        residual,
        condition,
    })
}

/// Targets `p(ℓ)` for `|ℓ| ≤ half_width`.
pub fn polynomial_targets(p: impl Fn(f64) -> f64, half_width: usize) -> Vec<f64> {
    let h = half_width as i64;
    (-h..=h).map(|l| p(l as f64)).collect()
}

impl ToeplitzProblem {
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn pad(&self) -> usize {
        self.pad
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn target(&self, ell: i64) -> Option<f64> {
        let idx = ell + self.half_width as i64;
        (idx >= 0 && (idx as usize) < self.targets.len()).then(|| self.targets[idx as usize])
    }

    /// `max_ℓ |Σ_j c_j ψ(j-ℓ) - t_ℓ|`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `λ_max / λ_min` of `A Aᵀ`.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn first_index(&self) -> i64 {
        -((self.half_width + self.pad) as i64)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: i64) -> Option<f64> {
        let idx = j - self.first_index();
        (idx >= 0 && (idx as usize) < self.coefficients.len()).then(|| self.coefficients[idx as usize])
    }

    /// `c_j` for `|j| ≤ radius`.
    pub fn central(&self, radius: usize) -> CoefficientSequence {
        let r = radius as i64;
        CoefficientSequence::new(
            "toeplitz",
            -r,
            (-r..=r).map(|j| self.coefficient(j).expect("radius inside the window")).collect(),
        )
    }
}

/// Coefficients `c_j` for consecutive `j` starting at `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    pub label: String,
    pub start: i64,
    pub values: Vec<f64>,
}

impl CoefficientSequence {
    pub fn new(label: impl Into<String>, start: i64, values: Vec<f64>) -> Self {
        CoefficientSequence { label: label.into(), start, values }
    }

    /// Samples `f(j)` for `j = start..=end`.
    pub fn from_fn(label: impl Into<String>, start: i64, end: i64, f: impl Fn(i64) -> f64) -> Self {
        Self::new(label, start, (start..=end).map(f).collect())
    }

    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, j: i64) -> Option<f64> {
        let idx = j - self.start;
        (idx >= 0 && (idx as usize) < self.values.len()).then(|| self.values[idx as usize])
    }

    /// `Σ_j c_j ψ(j - ℓ)` over the stored window.
    pub fn apply(&self, kernel: &Kernel<f64>, ell: i64) -> f64 {
        self.values.iter().enumerate().map(|(i, c)| c * kernel.eval_at(self.start + i as i64 - ell)).sum()
    }

    /// `max_{|j|≤radius} |c_j - d_j|`; `None` if either window is too short.
    pub fn max_deviation(&self, other: &CoefficientSequence, radius: usize) -> Option<f64> {
        let r = radius as i64;
        (-r..=r).try_fold(0.0f64, |worst, j| Some(worst.max((self.get(j)? - other.get(j)?).abs())))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteReport {
    pub label: String,
    /// Largest `|c_j - c_j^oracle|` over the interior.
    pub deviation: f64,
    /// Largest `|Σ_j c_j ψ(j-ℓ) - t_ℓ|` over the interior.
    pub residual: f64,
}

/// Interior comparison against the oracle, sorted by residual (then deviation).
pub fn adjudicate(
    kernel: &Kernel<f64>,
    routes: &[CoefficientSequence],
    problem: &ToeplitzProblem,
    interior: usize,
) -> Result<Vec<RouteReport>> {
    let oracle = problem.central(interior);
    let r = interior as i64;
    let mut reports = Vec::with_capacity(routes.len());
    for route in routes {
        let deviation = route.max_deviation(&oracle, interior).ok_or_else(|| {
            Error::InvalidInput(format!("route '{}' does not cover |j| ≤ {interior}", route.label))
        })?;
        let mut residual = 0.0f64;
        for ell in -r..=r {
            let target = problem
                .target(ell)
                .ok_or_else(|| Error::InvalidInput("interior exceeds the oracle window".into()))?;
            residual = residual.max((route.apply(kernel, ell) - target).abs());
        }
        reports.push(RouteReport { label: route.label.clone(), deviation, residual });
    }
    reports.sort_by(|a, b| a.residual.total_cmp(&b.residual).then(a.deviation.total_cmp(&b.deviation)));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_targets_give_zero_solution() {
        let p = solve_toeplitz(&Kernel::gaussian(), &[0.0; 21], 10, 10).unwrap();
        assert!(p.coefficients().iter().all(|&c| c == 0.0));
        assert_eq!(p.residual(), 0.0);
    }

    #[test]
    fn target_length_is_checked() {
        assert!(solve_toeplitz(&Kernel::gaussian(), &[1.0; 5], 10, 10).is_err());
        assert!(solve_toeplitz(&Kernel::gaussian(), &[1.0; 21], 10, 0).is_err());
    }

    #[test]
    fn identical_route_has_zero_deviation() {
        let kernel = Kernel::gaussian();
        let p = solve_toeplitz(&kernel, &polynomial_targets(|_| 1.0, 30), 30, 10).unwrap();
        let copy = CoefficientSequence::new("copy", p.first_index(), p.coefficients().to_vec());
        let report = adjudicate(&kernel, &[copy], &p, 5).unwrap();
        assert_eq!(report[0].deviation, 0.0);
        assert!(report[0].residual < 1e-12);
    }

    #[test]
    fn short_routes_are_rejected() {
        let kernel = Kernel::gaussian();
        let p = solve_toeplitz(&kernel, &polynomial_targets(|_| 1.0, 10), 10, 5).unwrap();
        let short = CoefficientSequence::new("short", -2, vec![1.0; 5]);
        assert!(adjudicate(&kernel, &[short], &p, 5).is_err());
    }
}
