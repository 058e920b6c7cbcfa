//! Dense univariate polynomials in the monomial basis.

mod hermite;

pub use hermite::{
    discrete_he, discrete_he_with, discrete_ne, discrete_ne_even, discrete_ne_with, hermite_he,
    hermite_ne, hermite_ne_from_moments, umbral_he_sum, umbral_ne_sum,
};

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::real::Real;

const PASCAL_ROWS: usize = 65;

fn pascal() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(PASCAL_ROWS);
        for n in 0..PASCAL_ROWS {
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    })
}

/// Exact `C(n, k)` for `n ≤ 64`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    assert!(n < PASCAL_ROWS, "binomial table covers n ≤ 64");
    pascal()[n][k]
}

/// `C(n, k)` in working precision; exact table up to 64, multiplicative beyond.
pub fn binomial_real<R: Real>(n: usize, k: usize) -> R {
    if k > n {
        return R::zero();
    }
    if n < PASCAL_ROWS {
        return R::from_uint(binomial(n, k));
    }
    let k = k.min(n - k);
    (0..k).fold(R::one(), |acc, i| acc * R::from_uint((n - i) as u64) / R::from_uint(i as u64 + 1))
}

/// `n!! = n (n-2) (n-4) ...`, with `0!! = (-1)!! = 1`.
pub fn double_factorial<R: Real>(n: u32) -> R {
    (1..=n).rev().step_by(2).fold(R::one(), |acc, i| acc * R::from_uint(i as u64))
}

/// Coefficients `c_0..c_d` in ascending degree. The leading coefficient is
/// nonzero unless the polynomial is zero, whose degree is reported as `-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Real> Polynomial<R> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = R::one();
        Polynomial { coeffs }
    }

    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).copied().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> R {
        self.coeffs.last().copied().unwrap_or_else(R::zero)
    }

    /// Horner's rule.
    pub fn eval(&self, x: R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, &c| acc * x + c)
    }

    /// `Σ |c_i| |x|^i`, the magnitude scale for rounding estimates.
    pub fn eval_abs(&self, x: R) -> R {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(R::zero(), |acc, &c| acc * ax + c.abs())
    }

    pub fn scale(&self, s: R) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `p(s x)`.
    pub fn compose_scale(&self, s: R) -> Self {
        let mut power = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * power);
            power = power * s;
        }
        Self::new(out)
    }

    /// `p(x + 1)`, via `Σ_i c_i (x+1)^i = Σ_m (Σ_{i≥m} C(i,m) c_i) x^m`.
    pub fn compose_shift(&self) -> Self {
        let n = self.coeffs.len();
        let out = (0..n)
            .map(|m| (m..n).fold(R::zero(), |acc, i| acc + binomial_real::<R>(i, m) * self.coeffs[i]))
            .collect();
        Self::new(out)
    }

    /// `Δp(x) = p(x+1) - p(x)`.
    pub fn forward_difference(&self) -> Self {
        &self.compose_shift() - self
    }

    pub fn max_abs_coeff(&self) -> R {
        self.coeffs.iter().map(|c| c.abs()).fold(R::zero(), R::max)
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        Polynomial::new(self.coeffs.iter().map(|c| c.as_f64()).collect())
    }

    /// The unique polynomial of degree `≤ values.len() - 1` with
    /// `p(start + i) = values[i]`, built from Newton forward differences.
    pub fn interpolate_integer_nodes(start: i64, values: &[R]) -> Self {
        let n = values.len();
        let mut diffs = values.to_vec();
        let mut leading = Vec::with_capacity(n);
        for level in 0..n {
            leading.push(diffs[0]);
            for i in 0..n - level - 1 {
                diffs[i] = diffs[i + 1] - diffs[i];
            }
        }

        // basis_k(s) = Π_{i<k} (s - start - i) / k!
        let mut result = Polynomial::zero();
        let mut basis = Polynomial::constant(R::one());
        for (k, delta) in leading.into_iter().enumerate() {
            result = &result + &basis.scale(delta);
            let root = R::from_int(start + k as i64);
            let factor = Polynomial::new(vec![-root, R::one()]);
            basis = (&basis * &factor).scale(R::one() / R::from_uint(k as u64 + 1));
        }
        result
    }
}

impl<R: Real> Add for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn add(self, rhs: Self) -> Polynomial<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<R: Real> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn sub(self, rhs: Self) -> Polynomial<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<R: Real> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn mul(self, rhs: Self) -> Polynomial<R> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl<R: Real> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn neg(self) -> Polynomial<R> {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl<R: Real> Add for Polynomial<R> {
    type Output = Polynomial<R>;

    fn add(self, rhs: Self) -> Polynomial<R> {
        &self + &rhs
    }
}

impl<R: Real> Sub for Polynomial<R> {
    type Output = Polynomial<R>;

    fn sub(self, rhs: Self) -> Polynomial<R> {
        &self - &rhs
    }
}

impl<R: Real> Mul for Polynomial<R> {
    type Output = Polynomial<R>;

    fn mul(self, rhs: Self) -> Polynomial<R> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[f64]) -> Polynomial<f64> {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn shift_expands_binomially() {
        assert_eq!(p(&[0.0, 0.0, 1.0]).compose_shift(), p(&[1.0, 2.0, 1.0]));
    }

    #[test]
    fn cancellation_yields_zero_polynomial() {
        let z = &p(&[0.0, 1.0]) + &p(&[0.0, -1.0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), -1);
    }

    #[test]
    fn product_of_conjugates() {
        assert_eq!(&p(&[1.0, 1.0]) * &p(&[-1.0, 1.0]), p(&[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn forward_differences() {
        assert_eq!(p(&[0.0, 0.0, 1.0]).forward_difference(), p(&[1.0, 2.0]));
        assert!(p(&[5.0]).forward_difference().is_zero());
        assert_eq!(p(&[0.0, 0.0, 0.0, 1.0]).forward_difference(), p(&[1.0, 3.0, 3.0]));
    }

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial_real::<f64>(70, 2), 2415.0);
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial::<f64>(0), 1.0);
        assert_eq!(double_factorial::<f64>(7), 105.0);
        assert_eq!(double_factorial::<f64>(8), 384.0);
    }

    #[test]
    fn integer_node_interpolation_recovers_cubic() {
        let cubic = p(&[2.0, -1.0, 0.5, 3.0]);
        let values: Vec<f64> = (-2..2).map(|s| cubic.eval(s as f64)).collect();
        let fitted = Polynomial::interpolate_integer_nodes(-2, &values);
        for i in 0..4 {
            assert!((fitted.coeff(i) - cubic.coeff(i)).abs() < 1e-12);
        }
    }

    fn small_poly() -> impl Strategy<Value = Polynomial<f64>> {
        prop::collection::vec(-8i32..=8, 0..8)
            .prop_map(|c| Polynomial::new(c.into_iter().map(f64::from).collect()))
    }

    proptest! {
        #[test]
        fn repeated_differences_annihilate(poly in small_poly()) {
            let mut q = poly.clone();
            for _ in 0..=poly.degree().max(0) {
                q = q.forward_difference();
            }
            prop_assert!(q.is_zero());
        }

        #[test]
        fn difference_drops_degree_by_one(poly in small_poly()) {
            prop_assume!(poly.degree() >= 1);
            prop_assert_eq!(poly.forward_difference().degree(), poly.degree() - 1);
        }

        #[test]
        fn shift_agrees_with_evaluation(poly in small_poly(), x in -3.0f64..3.0) {
            let lhs = poly.compose_shift().eval(x);
            let rhs = poly.eval(x + 1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
        }

        #[test]
        fn multiplication_is_evaluation_homomorphic(a in small_poly(), b in small_poly(), x in -2.0f64..2.0) {
            let lhs = (&a * &b).eval(x);
            prop_assert!((lhs - a.eval(x) * b.eval(x)).abs() <= 1e-9 * (1.0 + lhs.abs()));
        }
    }
}
