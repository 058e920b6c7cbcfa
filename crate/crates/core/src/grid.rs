//! Interpolation of samples on `{0, 1/n, ..., 1}`: fit the degree-`n`
//! polynomial, rescale it to the integer nodes `0..n`, then interpolate the
//! rescaled polynomial cardinally and evaluate at `n x`.

use std::sync::Arc;

use crate::cardinal::{CardinalCoefficients, CardinalInterpolant, Evaluation};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::real::{Precision, Real};

/// Largest `n` fitted in standard precision.
pub const STANDARD_CAP: usize = 12;
/// Largest `n` fitted at all.
pub const EXTENDED_CAP: usize = 20;

/// Cap on `n` for the working precision.
pub fn conditioning_cap<R: Real>() -> usize {
    match R::PRECISION {
        Precision::Standard => STANDARD_CAP,
        Precision::Extended => EXTENDED_CAP,
    }
}

/// Values `f(i/n)`, `i = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples<R> {
    values: Vec<R>,
}

impl<R: Real> GridSamples<R> {
    pub fn new(values: Vec<R>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("need at least two samples (n ≥ 1)".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("sample {i} is not finite")));
        }
        Ok(GridSamples { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(R) -> R) -> Result<Self> {
        let n_real = R::from_uint(n as u64);
        Self::new((0..=n).map(|i| f(R::from_uint(i as u64) / n_real)).collect())
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn node(&self, i: usize) -> R {
        R::from_uint(i as u64) / R::from_uint(self.n() as u64)
    }
}

fn check_cap<R: Real>(n: usize) -> Result<()> {
    let cap = conditioning_cap::<R>();
    if n > cap {
        Err(Error::ConditioningCap { n, cap })
    } else {
        Ok(())
    }
}

/// The unique `P` of degree `≤ n` with `P(i/n) = f_i`.
pub fn fit_polynomial<R: Real>(samples: &GridSamples<R>) -> Result<Polynomial<R>> {
    check_cap::<R>(samples.n())?;
    let on_integers = Polynomial::interpolate_integer_nodes(0, samples.values());
    Ok(on_integers.compose_scale(R::from_uint(samples.n() as u64)))
}

/// `x ↦ p(x/n)`: coefficient `c_k ↦ c_k / n^k`.
pub fn scale<R: Real>(p: &Polynomial<R>, n: usize) -> Polynomial<R> {
    p.compose_scale(R::one() / R::from_uint(n as u64))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridEvaluation<R> {
    pub value: R,
    pub budget: R,
    /// `x` lies outside `[0, 1]`; no accuracy claim attaches.
    pub extrapolated: bool,
}

#[derive(Debug, Clone)]
pub struct GridInterpolant<R> {
    n: usize,
    fitted: Polynomial<R>,
    scaled: Polynomial<R>,
    interpolant: CardinalInterpolant<R>,
}

impl<R: Real> GridInterpolant<R> {
    pub fn build(samples: &GridSamples<R>, coeffs: Arc<CardinalCoefficients<R>>, tol: R) -> Result<Self> {
        let n = samples.n();
        check_cap::<R>(n)?;
        let fitted = fit_polynomial(samples)?;
        // rescaling straight from the integer-node fit avoids a round trip through n^k
        let scaled = Polynomial::interpolate_integer_nodes(0, samples.values());
        let interpolant = CardinalInterpolant::new(coeffs, scaled.clone(), tol)?;
        Ok(GridInterpolant { n, fitted, scaled, interpolant })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `P_n` in the monomial basis on `[0, 1]`.
    pub fn fitted(&self) -> &Polynomial<R> {
        &self.fitted
    }

    /// `P_n(x / n)`, the polynomial interpolated on the integers.
    pub fn scaled(&self) -> &Polynomial<R> {
        &self.scaled
    }

    pub fn cardinal(&self) -> &CardinalInterpolant<R> {
        &self.interpolant
    }

    /// `I_n[f](x) = I[P_n(·/n)](n x)`.
    pub fn evaluate(&self, x: R) -> Result<GridEvaluation<R>> {
        self.evaluate_with_radius(x, None)
    }

    pub fn evaluate_with_radius(&self, x: R, min_radius: Option<u32>) -> Result<GridEvaluation<R>> {
        let Evaluation { value, budget } =
            self.interpolant.evaluate_with_radius(x * R::from_uint(self.n as u64), min_radius)?;
        Ok(GridEvaluation { value, budget, extrapolated: x < R::zero() || x > R::one() })
    }

    /// `max_i |I_n[f](i/n) - f_i|` over the nodes.
    pub fn node_residual(&self, samples: &GridSamples<R>) -> Result<R> {
        let mut worst = R::zero();
        for (i, &f) in samples.values().iter().enumerate() {
            let e = self.interpolant.evaluate(R::from_uint(i as u64))?;
            worst = worst.max((e.value - f).abs());
        }
        Ok(worst)
    }
}
