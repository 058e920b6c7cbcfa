//! Hermite-type families built from continuous and discrete Gaussian moments.
//!
//! `He_k` follows the Rodrigues form `e^{x²/2} (d/dx)^k e^{-x²/2}` without the
//! customary `(-1)^k`, so `He_1(x) = -x`. `Ne_k` is the all-positive companion,
//! `Ne_k(x) = ∫ y^k ψ(y - x) dy`. The discrete families replace the continuous
//! moments `C_{2i}` by lattice moments `M_{2i}`.

use super::{binomial_real, double_factorial, Polynomial};
use crate::error::Result;
use crate::kernel::{continuous_moment, MomentTable};
use crate::real::Real;

/// `k! / (i! (k-2i)! 2^i) = C(k, 2i) (2i-1)!!`.
fn pairing_weight<R: Real>(k: usize, i: usize) -> R {
    let odd = if i == 0 { R::one() } else { double_factorial::<R>(2 * i as u32 - 1) };
    binomial_real::<R>(k, 2 * i) * odd
}

fn alternating<R: Real>(i: usize) -> R {
    if i % 2 == 0 {
        R::one()
    } else {
        -R::one()
    }
}

/// `He_k(x) = Σ_i (-1)^{k-i} k!/(i!(k-2i)!) x^{k-2i}/2^i`.
pub fn hermite_he<R: Real>(k: usize) -> Polynomial<R> {
    let mut coeffs = vec![R::zero(); k + 1];
    for i in 0..=k / 2 {
        coeffs[k - 2 * i] = alternating::<R>(k - i) * pairing_weight(k, i);
    }
    Polynomial::new(coeffs)
}

/// `Ne_k(x) = Σ_i k!/(i!(k-2i)!) x^{k-2i}/2^i`.
pub fn hermite_ne<R: Real>(k: usize) -> Polynomial<R> {
    let mut coeffs = vec![R::zero(); k + 1];
    for i in 0..=k / 2 {
        coeffs[k - 2 * i] = pairing_weight(k, i);
    }
    Polynomial::new(coeffs)
}

/// `Ne_k(x) = Σ_i C(k, 2i) C_{2i} x^{k-2i}` with Gaussian continuous moments.
pub fn hermite_ne_from_moments<R: Real>(k: usize) -> Polynomial<R> {
    discrete_ne_with(k, |m| continuous_moment::<R>(m as u32))
}

/// `Σ_i (-1)^i C(k, 2i) μ_{2i} x^{k-2i}` for an arbitrary moment sequence `μ`.
pub fn discrete_he_with<R: Real>(k: usize, moment: impl Fn(usize) -> R) -> Polynomial<R> {
    let mut coeffs = vec![R::zero(); k + 1];
    for i in 0..=k / 2 {
        coeffs[k - 2 * i] = alternating::<R>(i) * binomial_real::<R>(k, 2 * i) * moment(2 * i);
    }
    Polynomial::new(coeffs)
}

/// `Σ_m μ_{k-m} C(k, m) x^m`, all moments (odd ones included).
pub fn discrete_ne_with<R: Real>(k: usize, moment: impl Fn(usize) -> R) -> Polynomial<R> {
    Polynomial::new((0..=k).map(|m| moment(k - m) * binomial_real::<R>(k, m)).collect())
}

/// Discrete He-type polynomial `H̃e_k` from lattice moments.
pub fn discrete_he<R: Real>(k: usize, moments: &MomentTable<R>) -> Result<Polynomial<R>> {
    moments.require(k)?;
    Ok(discrete_he_with(k, |m| moments.value(m)))
}

/// `q_k(x) = Σ_m M_{k-m} C(k, m) x^m`, the lattice analogue of `Ne_k`.
///
/// For symmetric kernels this coincides exactly with [`discrete_ne_even`]; for
/// non-symmetric kernels the two differ and this all-moment form is the one
/// that enters the interpolation identities.
pub fn discrete_ne<R: Real>(k: usize, moments: &MomentTable<R>) -> Result<Polynomial<R>> {
    moments.require(k)?;
    Ok(discrete_ne_with(k, |m| moments.value(m)))
}

/// `Σ_i C(k, 2i) M_{2i} x^{k-2i}` (even moments only).
pub fn discrete_ne_even<R: Real>(k: usize, moments: &MomentTable<R>) -> Result<Polynomial<R>> {
    moments.require(k)?;
    let mut coeffs = vec![R::zero(); k + 1];
    for i in 0..=k / 2 {
        coeffs[k - 2 * i] = binomial_real::<R>(k, 2 * i) * moments.value(2 * i);
    }
    Ok(Polynomial::new(coeffs))
}

/// `Σ_i k!/(i!(k-2i)!2^i) He_{k-2i}`. With the sign convention above this is
/// `(-1)^k x^k`.
pub fn umbral_he_sum<R: Real>(k: usize) -> Polynomial<R> {
    (0..=k / 2).fold(Polynomial::zero(), |acc, i| &acc + &hermite_he::<R>(k - 2 * i).scale(pairing_weight(k, i)))
}

/// `Σ_i (-1)^i k!/(i!(k-2i)!2^i) Ne_{k-2i}`, which equals `x^k`.
pub fn umbral_ne_sum<R: Real>(k: usize) -> Polynomial<R> {
    (0..=k / 2).fold(Polynomial::zero(), |acc, i| {
        &acc + &hermite_ne::<R>(k - 2 * i).scale(alternating::<R>(i) * pairing_weight(k, i))
    })
}
