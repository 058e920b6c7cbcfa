//! The periodized symbol `ψ̃(t) = Σ_z ψ(z) e^{2πizt}`, the Fourier coefficients
//! of its reciprocal, and interpolation of lattice data by convolution with them.

use num_complex::Complex;

use crate::cardinal::IdentityCheck;
use crate::error::{Error, Result};
use crate::fft::Direction;
use crate::kernel::{search_radius, truncation_radius, Kernel};
use crate::real::Real;

pub const DEFAULT_SAMPLES: usize = 4096;
pub const DEFAULT_Z_MAX: usize = 32;

/// Samples of `ψ̃` at `t_r = r/m`.
#[derive(Debug, Clone)]
pub struct PeriodizedSymbol<R> {
    samples: Vec<Complex<R>>,
    tail: R,
    rounding: R,
    radius: Option<u32>,
}

impl<R: Real> PeriodizedSymbol<R> {
    /// Sums `|z| ≤ R` with the tail certified to the working-precision series
    /// tolerance. Frequencies are folded modulo `m`, which is exact on the grid.
    pub fn periodize(kernel: &Kernel<R>, m: usize) -> Result<Self> {
        if m < 64 || !m.is_power_of_two() {
            return Err(Error::InvalidInput(format!("sample count {m} must be a power of two ≥ 64")));
        }
        let radius = truncation_radius(kernel, 0, R::series_tol())?;
        let tail = kernel.tail_bound(radius, 0);
        let mut buf = vec![Complex::new(R::zero(), R::zero()); m];
        let mut mass = R::zero();
        for z in -(radius as i64)..=radius as i64 {
            let slot = z.rem_euclid(m as i64) as usize;
            let v = kernel.eval_at(z);
            buf[slot].re = buf[slot].re + v;
            mass = mass + v.abs();
        }
        R::dft(&mut buf, Direction::Inverse);
        if kernel.is_symmetric() {
            for s in &mut buf {
                s.im = R::zero();
            }
        }
        let log_m = R::from_uint(m.trailing_zeros() as u64);
        let rounding = R::from_uint(4) * log_m * R::unit_roundoff() * mass;
        Ok(PeriodizedSymbol { samples: buf, tail, rounding, radius: Some(radius) })
    }

    /// A symbol given directly by its samples (no kernel behind it).
    pub fn from_samples(samples: Vec<Complex<R>>) -> Result<Self> {
        let m = samples.len();
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::InvalidInput(format!("sample count {m} must be a power of two")));
        }
        let scale = samples.iter().map(|s| s.norm()).fold(R::zero(), R::max);
        Ok(PeriodizedSymbol { samples, tail: R::zero(), rounding: R::unit_roundoff() * scale, radius: None })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex<R>] {
        &self.samples
    }

    pub fn sample(&self, r: usize) -> Complex<R> {
        self.samples[r]
    }

    pub fn tail_bound(&self) -> R {
        self.tail
    }

    pub fn radius(&self) -> Option<u32> {
        self.radius
    }

    /// Sample spacing `1/m`; the minimum is only certified on the sample grid.
    pub fn spacing(&self) -> R {
        R::one() / R::from_uint(self.len() as u64)
    }

    pub fn check_wiener(&self) -> WienerReport<R> {
        let (argmin, min_modulus) = self
            .samples
            .iter()
            .map(|s| s.norm())
            .enumerate()
            .fold((0, R::infinity()), |best, (r, v)| if v < best.1 { (r, v) } else { best });
        let threshold = R::from_uint(10) * (self.tail + self.rounding);
        WienerReport {
            holds: min_modulus > threshold,
            min_modulus,
            argmin: R::from_uint(argmin as u64) / R::from_uint(self.len() as u64),
            threshold,
        }
    }

    /// `a_z = (1/m) Σ_r e^{-2πizr/m} / ψ̃(t_r)` for `|z| ≤ z_max`.
    pub fn reciprocal_coefficients(&self, z_max: usize) -> Result<ReciprocalCoefficients<R>> {
        let wiener = self.check_wiener();
        if !wiener.holds {
            return Err(Error::WienerViolated { min_modulus: wiener.min_modulus.as_f64() });
        }
        let m = self.len();
        if 2 * z_max + 1 > m {
            return Err(Error::InvalidInput(format!("z_max = {z_max} needs more than {m} samples")));
        }
        let one = Complex::new(R::one(), R::zero());
        let mut buf: Vec<Complex<R>> = self.samples.iter().map(|s| one / *s).collect();
        let reciprocal = buf.clone();
        R::dft(&mut buf, Direction::Forward);
        let inv_m = R::one() / R::from_uint(m as u64);
        let values: Vec<R> = (-(z_max as i64)..=z_max as i64)
            .map(|z| buf[z.rem_euclid(m as i64) as usize].re * inv_m)
            .collect();

        // reconstruction at every sample
        let mut series = vec![Complex::new(R::zero(), R::zero()); m];
        for (i, &a) in values.iter().enumerate() {
            let z = i as i64 - z_max as i64;
            series[z.rem_euclid(m as i64) as usize].re = a;
        }
        R::dft(&mut series, Direction::Inverse);
        let mut residual = R::zero();
        let mut series_residual = R::zero();
        for ((s, sym), rec) in series.iter().zip(&self.samples).zip(&reciprocal) {
            residual = residual.max((*s * *sym - one).norm());
            series_residual = series_residual.max((*s - *rec).norm());
        }
        Ok(ReciprocalCoefficients { z_max, values, residual, series_residual })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WienerReport<R> {
    pub holds: bool,
    pub min_modulus: R,
    pub argmin: R,
    /// `10 ×` (certified tail + rounding); the minimum must exceed it.
    pub threshold: R,
}

/// `a_{-z_max}..a_{z_max}` with reconstruction diagnostics.
#[derive(Debug, Clone)]
pub struct ReciprocalCoefficients<R> {
    z_max: usize,
    values: Vec<R>,
    residual: R,
    series_residual: R,
}

impl<R: Real> ReciprocalCoefficients<R> {
    pub fn z_max(&self) -> usize {
        self.z_max
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    /// `a_z`, zero outside the computed range.
    pub fn get(&self, z: i64) -> R {
        if z.unsigned_abs() as usize > self.z_max {
            R::zero()
        } else {
            self.values[(z + self.z_max as i64) as usize]
        }
    }

    /// `max_r |Σ_{|z|≤z_max} a_z e^{2πizt_r} ψ̃(t_r) - 1|`.
    pub fn residual(&self) -> R {
        self.residual
    }

    /// `max_r |Σ_{|z|≤z_max} a_z e^{2πizt_r} - 1/ψ̃(t_r)|`.
    pub fn series_residual(&self) -> R {
        self.series_residual
    }

    /// `S_k(Z) = Σ_{|z|≤Z} |a_z| |z|^k` for `Z = 0..=z_max`.
    pub fn partial_sums(&self, k: u32) -> Vec<R> {
        let mut acc = self.get(0).abs() * if k == 0 { R::one() } else { R::zero() };
        let mut out = vec![acc];
        for z in 1..=self.z_max as i64 {
            let w = R::from_int(z).powu(k);
            acc = acc + (self.get(z).abs() + self.get(-z).abs()) * w;
            out.push(acc);
        }
        out
    }

    /// Largest `|a_{z+1}| / |a_z|` over `from ≤ z < z_max`.
    pub fn decay_ratio(&self, from: usize) -> R {
        (from..self.z_max)
            .map(|z| self.get(z as i64 + 1).abs() / self.get(z as i64).abs())
            .fold(R::zero(), R::max)
    }

    /// Smallest `c` with `|a_z| ≤ c |z|^{-power}` over `1 ≤ |z| ≤ z_max`.
    pub fn power_law_constant(&self, power: u32) -> R {
        (1..=self.z_max as i64)
            .map(|z| self.get(z).abs().max(self.get(-z).abs()) * R::from_int(z).powu(power))
            .fold(R::zero(), R::max)
    }

    /// Geometric estimate of `Σ_{|z|>z_max} |a_z|` from the last computed ratio.
    pub fn tail_estimate(&self) -> R {
        let last = self.get(self.z_max as i64).abs();
        let ratio = self.decay_ratio(self.z_max.saturating_sub(4));
        if ratio >= R::one() {
            return R::infinity();
        }
        R::from_uint(2) * last * ratio / (R::one() - ratio)
    }

    /// `(a * ψ)(k) - δ_k = Σ_z a_z ψ(k - z) - δ_k`.
    pub fn delta_defect(&self, kernel: &Kernel<R>, k: i64) -> R {
        let sum = (-(self.z_max as i64)..=self.z_max as i64)
            .map(|z| self.get(z) * kernel.eval_at(k - z))
            .fold(R::zero(), |a, b| a + b);
        if k == 0 {
            sum - R::one()
        } else {
            sum
        }
    }
}

/// Coefficients `c_j = Σ_{|z|≤z_max} a_z d(j - z)` for data `d` supported on a
/// window and extended by zero.
#[derive(Debug, Clone)]
pub struct SpectralInterpolation<R> {
    start: i64,
    coefficients: Vec<R>,
    data_start: i64,
    data: Vec<R>,
    coefficient_tail: R,
}

pub fn spectral_interpolate<R: Real>(
    reciprocal: &ReciprocalCoefficients<R>,
    data_start: i64,
    data: &[R],
) -> Result<SpectralInterpolation<R>> {
    if data.is_empty() {
        return Err(Error::InvalidInput("empty data window".into()));
    }
    if let Some(i) = data.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("data entry {i} is not finite")));
    }
    let z_max = reciprocal.z_max() as i64;
    let start = data_start - z_max;
    let len = data.len() + 2 * z_max as usize;
    let coefficients = (0..len as i64)
        .map(|offset| {
            let j = start + offset;
            (-z_max..=z_max).fold(R::zero(), |acc, z| {
                let idx = j - z - data_start;
                if idx < 0 || idx >= data.len() as i64 {
                    acc
                } else {
                    acc + reciprocal.get(z) * data[idx as usize]
                }
            })
        })
        .collect();
    Ok(SpectralInterpolation {
        start,
        coefficients,
        data_start,
        data: data.to_vec(),
        coefficient_tail: reciprocal.tail_estimate(),
    })
}

impl<R: Real> SpectralInterpolation<R> {
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn coefficients(&self) -> &[R] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: i64) -> Option<R> {
        let idx = j - self.start;
        (idx >= 0 && (idx as usize) < self.coefficients.len()).then(|| self.coefficients[idx as usize])
    }

    /// `Σ_j c_j ψ(ℓ - j)` over the coefficient window.
    pub fn reproduce(&self, kernel: &Kernel<R>, ell: i64) -> R {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| c * kernel.eval_at(ell - self.start - i as i64))
            .fold(R::zero(), |a, b| a + b)
    }

    /// Distance from `ℓ` to the nearest edge of the data window.
    pub fn edge_distance(&self, ell: i64) -> i64 {
        let last = self.data_start + self.data.len() as i64 - 1;
        (ell - self.data_start).min(last - ell)
    }

    /// Estimated reproduction error at an interior `ℓ`: the dropped reciprocal
    /// coefficients times the data size, scaled by `ψ̃(0)`, plus the kernel mass
    /// beyond the coefficient window.
    pub fn boundary_budget(&self, kernel: &Kernel<R>, ell: i64) -> Result<R> {
        let data_max = self.data.iter().map(|v| v.abs()).fold(R::zero(), R::max);
        let coeff_max = self.coefficients.iter().map(|v| v.abs()).fold(R::zero(), R::max);
        let mass: R = (-40..=40).map(|j| kernel.eval_at(j)).fold(R::zero(), |a, b| a + b);
        let reach = (ell - self.start).min(self.start + self.coefficients.len() as i64 - 1 - ell);
        let edge = if reach >= 2 { kernel.tail_bound(reach as u32 - 1, 0) } else { mass };
        Ok(mass * self.coefficient_tail * data_max + coeff_max * edge)
    }
}

/// `Σ_z ψ(z) e^{2πizx}` against `Σ_z ψ̂(x + z)` (real parts; the transform is real).
pub fn verify_poisson<R: Real>(kernel: &Kernel<R>, x: R) -> Result<IdentityCheck<R>> {
    if !kernel.has_transform() {
        return Err(Error::Unsupported(format!("kernel '{}' has no known transform", kernel.name())));
    }
    let tol = R::series_tol();
    let radius = truncation_radius(kernel, 0, tol)?;
    let two_pi = R::from_uint(2) * R::PI();
    let mut lhs = R::zero();
    let mut lhs_mass = R::zero();
    for z in -(radius as i64)..=radius as i64 {
        let v = kernel.eval_at(z);
        lhs = lhs + v * (two_pi * R::from_int(z) * x).cos();
        lhs_mass = lhs_mass + v.abs();
    }
    let lhs_budget = kernel.tail_bound(radius, 0) + R::from_uint(4 * radius as u64 + 4) * R::unit_roundoff() * lhs_mass;

    let z_radius = search_radius(0, tol, |z| kernel.transform_tail_bound(z).unwrap_or_else(R::infinity))?;
    let mut rhs = R::zero();
    let mut rhs_mass = R::zero();
    for z in -(z_radius as i64)..=z_radius as i64 {
        let v = kernel.transform(x + R::from_int(z)).unwrap_or_else(R::zero);
        rhs = rhs + v;
        rhs_mass = rhs_mass + v.abs();
    }
    let rhs_budget = kernel.transform_tail_bound(z_radius).unwrap_or_else(R::infinity)
        + R::from_uint(2 * z_radius as u64 + 4) * R::unit_roundoff() * rhs_mass;
    Ok(IdentityCheck { lhs, rhs, budget: lhs_budget + rhs_budget })
}

/// `(1 - cos(2π(t - t_0)))/2`, sampled at `m` points: a real symbol with an
/// exact zero at `t_0` when `t_0 m` is an integer.
pub fn symbol_with_zero<R: Real>(m: usize, zero_at: usize) -> Result<PeriodizedSymbol<R>> {
    let two_pi = R::from_uint(2) * R::PI();
    let samples = (0..m)
        .map(|r| {
            let shift = (r as i64 - zero_at as i64).rem_euclid(m as i64);
            let t = R::from_uint(shift as u64) / R::from_uint(m as u64);
            let v = if shift == 0 { R::zero() } else { (R::one() - (two_pi * t).cos()) / R::from_uint(2) };
            Complex::new(v, R::zero())
        })
        .collect();
    PeriodizedSymbol::from_samples(samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_at_zero_is_the_zeroth_moment() {
        let sym = PeriodizedSymbol::<f64>::periodize(&Kernel::gaussian(), 64).unwrap();
        let m0 = crate::kernel::discrete_moment(&Kernel::gaussian(), 0, 1e-15).unwrap().value;
        assert!((sym.sample(0).re - m0).abs() < 1e-15);
        for r in 1..32 {
            assert!((sym.sample(r).re - sym.sample(64 - r).re).abs() < 1e-15);
        }
    }

    #[test]
    fn small_sample_counts_are_rejected() {
        assert!(PeriodizedSymbol::<f64>::periodize(&Kernel::gaussian(), 32).is_err());
        assert!(PeriodizedSymbol::<f64>::periodize(&Kernel::gaussian(), 100).is_err());
    }

    #[test]
    fn injected_zero_fails_wiener() {
        let sym = symbol_with_zero::<f64>(64, 16).unwrap();
        let report = sym.check_wiener();
        assert!(!report.holds);
        assert_eq!(report.min_modulus, 0.0);
        assert_eq!(report.argmin, 0.25);
        assert!(matches!(sym.reciprocal_coefficients(8), Err(Error::WienerViolated { .. })));
    }

    #[test]
    fn delta_data_returns_reciprocal_coefficients() {
        let sym = PeriodizedSymbol::<f64>::periodize(&Kernel::gaussian(), 256).unwrap();
        let rec = sym.reciprocal_coefficients(10).unwrap();
        let mut data = vec![0.0; 21];
        data[10] = 1.0;
        let s = spectral_interpolate(&rec, -10, &data).unwrap();
        for j in -10..=10 {
            assert_eq!(s.coefficient(j).unwrap(), rec.get(j));
        }
    }
}
