//! Kernels, certified truncation radii and discrete/continuous moments.
//!
//! A kernel is a positive, rapidly decaying function `ψ`. Every infinite
//! lattice sum in the crate is truncated at a radius certified by the kernel's
//! tail bound, so each returned value carries an explicit error budget.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::double_factorial;
use crate::real::Real;

/// Largest radius any truncation search will try.
pub const RADIUS_CAP: u32 = 200;

/// Decay exponents tried above `degree + 2` when bounding a user kernel's tail.
const CERTIFICATE_SPAN: u32 = 40;

type ScalarFn<R> = Arc<dyn Fn(R) -> R + Send + Sync>;
type CertificateFn<R> = Arc<dyn Fn(u32) -> R + Send + Sync>;

#[derive(Clone)]
pub struct Kernel<R> {
    family: Family<R>,
}

#[derive(Clone)]
enum Family<R> {
    Gaussian,
    Custom(Arc<CustomKernel<R>>),
}

struct CustomKernel<R> {
    name: String,
    eval: ScalarFn<R>,
    /// `N ↦ C_N` with `|ψ(x)| ≤ C_N / (1 + |x|^N)`.
    decay: CertificateFn<R>,
    symmetric: bool,
    transform: Option<(ScalarFn<R>, CertificateFn<R>)>,
}

impl<R> fmt::Debug for Kernel<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Gaussian => f.write_str("Kernel::Gaussian"),
            Family::Custom(c) => write!(f, "Kernel::Custom({:?})", c.name),
        }
    }
}

impl<R: Real> Kernel<R> {
    /// The normalized Gaussian `ψ(x) = e^{-x²/2} / √(2π)`.
    pub fn gaussian() -> Self {
        Kernel { family: Family::Gaussian }
    }

    /// A user-supplied kernel. `decay(N)` must return `C_N` with
    /// `|ψ(x)| ≤ C_N / (1 + |x|^N)` for all real `x`.
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(R) -> R + Send + Sync + 'static,
        decay: impl Fn(u32) -> R + Send + Sync + 'static,
    ) -> Self {
        Kernel {
            family: Family::Custom(Arc::new(CustomKernel {
                name: name.into(),
                eval: Arc::new(eval),
                decay: Arc::new(decay),
                symmetric: false,
                transform: None,
            })),
        }
    }

    /// Declares `ψ(-x) = ψ(x)`. Odd moments then become exact zeros.
    pub fn symmetric(self) -> Self {
        self.map_custom(|c| c.symmetric = true)
    }

    /// Attaches the Fourier transform `ψ̂(ξ) = ∫ e^{-2πiξx} ψ(x) dx` (real-valued
    /// kernels with real transforms only) and a bound `Z ↦ sup_{x∈[0,1)} Σ_{|z|>Z} |ψ̂(x+z)|`.
    pub fn with_transform(
        self,
        transform: impl Fn(R) -> R + Send + Sync + 'static,
        tail: impl Fn(u32) -> R + Send + Sync + 'static,
    ) -> Self {
        let pair: (ScalarFn<R>, CertificateFn<R>) = (Arc::new(transform), Arc::new(tail));
        self.map_custom(move |c| c.transform = Some(pair))
    }

    fn map_custom(self, f: impl FnOnce(&mut CustomKernel<R>)) -> Self {
        match self.family {
            Family::Gaussian => self,
            Family::Custom(c) => {
                let mut inner = CustomKernel {
                    name: c.name.clone(),
                    eval: c.eval.clone(),
                    decay: c.decay.clone(),
                    symmetric: c.symmetric,
                    transform: c.transform.clone(),
                };
                f(&mut inner);
                Kernel { family: Family::Custom(Arc::new(inner)) }
            }
        }
    }

    pub fn name(&self) -> &str {
        match &self.family {
            Family::Gaussian => "gaussian",
            Family::Custom(c) => &c.name,
        }
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(self.family, Family::Gaussian)
    }

    pub fn is_symmetric(&self) -> bool {
        match &self.family {
            Family::Gaussian => true,
            Family::Custom(c) => c.symmetric,
        }
    }

    pub fn eval(&self, x: R) -> R {
        match &self.family {
            Family::Gaussian => gaussian(x),
            Family::Custom(c) => (c.eval)(x),
        }
    }

    pub fn eval_at(&self, j: i64) -> R {
        self.eval(R::from_int(j))
    }

    pub fn has_transform(&self) -> bool {
        match &self.family {
            Family::Gaussian => true,
            Family::Custom(c) => c.transform.is_some(),
        }
    }

    /// `ψ̂(ξ)` under `f̂(ξ) = ∫ e^{-2πiξx} f(x) dx`; Gaussian: `e^{-2π²ξ²}`.
    pub fn transform(&self, xi: R) -> Option<R> {
        match &self.family {
            Family::Gaussian => {
                let two_pi_sq = R::lit(2.0) * R::PI() * R::PI();
                Some((-two_pi_sq * xi * xi).exp())
            }
            Family::Custom(c) => c.transform.as_ref().map(|(t, _)| t(xi)),
        }
    }

    /// Bound on `Σ_{|z|>Z} |ψ̂(x+z)|` uniformly in `x ∈ [0,1)`.
    pub fn transform_tail_bound(&self, radius: u32) -> Option<R> {
        match &self.family {
            Family::Gaussian => {
                // |x+z| ≥ Z for |z| ≥ Z+1; the terms fall off faster than e^{-2π²Z} per step
                let two_pi_sq = R::lit(2.0) * R::PI() * R::PI();
                let z = R::from_uint(radius as u64);
                let first = (-two_pi_sq * z * z).exp();
                let ratio = (-two_pi_sq * (z + z + R::one())).exp();
                Some(R::lit(2.0) * first / (R::one() - ratio))
            }
            Family::Custom(c) => c.transform.as_ref().map(|(_, tail)| tail(radius)),
        }
    }

    /// Closed-form `C_k = ∫ y^k ψ(y) dy` when known.
    pub fn continuous_moment(&self, k: u32) -> Option<R> {
        match &self.family {
            Family::Gaussian => Some(continuous_moment(k)),
            Family::Custom(_) => None,
        }
    }

    /// Upper bound on `Σ_{|j|>R} |j|^degree ψ(j)`.
    pub fn tail_bound(&self, radius: u32, degree: u32) -> R {
        match &self.family {
            Family::Gaussian => {
                if radius < degree.max(1) {
                    return R::infinity();
                }
                let r = R::from_uint(radius as u64);
                let two = R::lit(2.0);
                two * r.powu(degree) * (-(r * r) / two).exp()
                    / ((R::one() - (-r).exp()) * sqrt_two_pi::<R>())
            }
            Family::Custom(c) => custom_tail(c, radius, degree, false),
        }
    }

    /// Upper bound on `Σ_{|m|>R} |m|^degree ψ(m + δ)`, uniformly in `|δ| ≤ 1/2`.
    ///
    /// This is the tail of a lattice sum centred at the integer nearest to
    /// the evaluation point.
    pub fn shifted_tail_bound(&self, radius: u32, degree: u32) -> R {
        match &self.family {
            Family::Gaussian => {
                if radius < degree.max(2) {
                    return R::infinity();
                }
                // first term ≤ (R+1)^d e^{-(R+1/2)²/2}; consecutive ratio ≤ e^{-R} once R ≥ d
                let r = R::from_uint(radius as u64);
                let two = R::lit(2.0);
                let half = R::lit(0.5);
                let lead = (r + R::one()).powu(degree) * (-(r + half) * (r + half) / two).exp();
                two * lead / ((R::one() - (-r).exp()) * sqrt_two_pi::<R>())
            }
            Family::Custom(c) => custom_tail(c, radius, degree, true),
        }
    }
}

fn sqrt_two_pi<R: Real>() -> R {
    (R::lit(2.0) * R::PI()).sqrt()
}

fn gaussian<R: Real>(x: R) -> R {
    (-(x * x) / R::lit(2.0)).exp() / sqrt_two_pi::<R>()
}

/// Tail bound from the decay certificate. With `|ψ(x)| ≤ C_N |x|^{-N}`,
/// `Σ_{j>R} j^{d-N} ≤ R^{d-N+1}/(N-d-1)`. A shift by at most 1/2 costs a
/// factor `2^N` since `|m| - 1/2 ≥ |m|/2`.
fn custom_tail<R: Real>(c: &CustomKernel<R>, radius: u32, degree: u32, shifted: bool) -> R {
    if radius == 0 {
        return R::infinity();
    }
    let r = R::from_uint(radius as u64);
    let two = R::lit(2.0);
    let mut best = R::infinity();
    for exponent in degree + 2..=degree + 2 + CERTIFICATE_SPAN {
        let c_n = (c.decay)(exponent);
        let gap = exponent - degree - 1;
        let mut bound = two * c_n / (R::from_uint(gap as u64) * r.powu(gap));
        if shifted {
            bound = bound * two.powu(exponent);
        }
        if bound < best {
            best = bound;
        }
    }
    best
}

/// Continuous moment of the normalized Gaussian: `(k-1)!!` for even `k`, zero for odd.
pub fn continuous_moment<R: Real>(k: u32) -> R {
    if k % 2 == 1 {
        R::zero()
    } else if k == 0 {
        R::one()
    } else {
        double_factorial(k - 1)
    }
}

/// Smallest `R ≥ max(degree, 2)` with certified `Σ_{|j|>R} |j|^degree ψ(j) ≤ tol`.
pub fn truncation_radius<R: Real>(kernel: &Kernel<R>, degree: u32, tol: R) -> Result<u32> {
    search_radius(degree, tol, |r| kernel.tail_bound(r, degree))
}

/// Radius search shared by every truncated lattice sum.
pub(crate) fn search_radius<R: Real>(degree: u32, tol: R, bound: impl Fn(u32) -> R) -> Result<u32> {
    if !(tol > R::zero()) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let mut best = R::infinity();
    for radius in degree.max(2)..=RADIUS_CAP {
        let b = bound(radius);
        if b <= tol {
            return Ok(radius);
        }
        if b < best {
            best = b;
        }
    }
    Err(Error::TailNotCertifiable { degree, cap: RADIUS_CAP, best_bound: best.as_f64() })
}

/// A lattice sum with its certified truncation tail and a rounding estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedMoment<R> {
    pub value: R,
    pub radius: u32,
    pub tail_bound: R,
    pub rounding_bound: R,
}

impl<R: Real> CertifiedMoment<R> {
    pub fn error_bound(&self) -> R {
        self.tail_bound + self.rounding_bound
    }
}

/// `M_k = Σ_j j^k ψ(j)` summed in symmetric pairs of ascending `|j|`.
///
/// For symmetric kernels odd moments are returned as exact zeros.
pub fn discrete_moment<R: Real>(kernel: &Kernel<R>, k: u32, tol: R) -> Result<CertifiedMoment<R>> {
    if !(tol > R::zero()) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if kernel.is_symmetric() && k % 2 == 1 {
        return Ok(CertifiedMoment {
            value: R::zero(),
            radius: 0,
            tail_bound: R::zero(),
            rounding_bound: R::zero(),
        });
    }
    let radius = truncation_radius(kernel, k, tol)?;
    let tail_bound = kernel.tail_bound(radius, k);

    let mut value = if k == 0 { kernel.eval(R::zero()) } else { R::zero() };
    let mut magnitude = value.abs();
    for j in 1..=radius as i64 {
        let jr = R::from_int(j);
        let pow = jr.powu(k);
        let pair = if kernel.is_symmetric() {
            R::lit(2.0) * pow * kernel.eval(jr)
        } else {
            let neg = if k % 2 == 0 { pow } else { -pow };
            pow * kernel.eval(jr) + neg * kernel.eval(-jr)
        };
        magnitude = magnitude + R::lit(2.0) * pow * kernel.eval(jr).abs().max(kernel.eval(-jr).abs());
        value = value + pair;
    }
    let ops = R::from_uint(radius as u64 + k as u64 + 2);
    Ok(CertifiedMoment { value, radius, tail_bound, rounding_bound: ops * R::unit_roundoff() * magnitude })
}

/// Discrete moments `M_0..M_N`, built eagerly and immutable afterwards.
#[derive(Debug, Clone)]
pub struct MomentTable<R> {
    kernel: Kernel<R>,
    tol: R,
    entries: Vec<CertifiedMoment<R>>,
}

impl<R: Real> MomentTable<R> {
    pub fn build(kernel: &Kernel<R>, max_degree: usize, tol: R) -> Result<Self> {
        let entries = (0..=max_degree as u32)
            .map(|k| discrete_moment(kernel, k, tol))
            .collect::<Result<Vec<_>>>()?;
        if !(entries[0].value > R::zero()) {
            return Err(Error::SingularSystem("M_0 is not positive".into()));
        }
        Ok(MomentTable { kernel: kernel.clone(), tol, entries })
    }

    /// Moments certified to full working precision.
    pub fn build_default(kernel: &Kernel<R>, max_degree: usize) -> Result<Self> {
        Self::build(kernel, max_degree, R::series_tol())
    }

    pub fn kernel(&self) -> &Kernel<R> {
        &self.kernel
    }

    pub fn tol(&self) -> R {
        self.tol
    }

    pub fn max_degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.kernel.is_symmetric()
    }

    /// `M_k`. Panics when `k` exceeds the table; see [`MomentTable::require`].
    pub fn value(&self, k: usize) -> R {
        self.entries[k].value
    }

    pub fn entry(&self, k: usize) -> &CertifiedMoment<R> {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[CertifiedMoment<R>] {
        &self.entries
    }

    pub fn require(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree() {
            Err(Error::MomentTableTooShort { needed: degree, available: self.max_degree() })
        } else {
            Ok(())
        }
    }

    /// Largest `|M_i|` over the table.
    pub fn scale(&self) -> R {
        self.entries.iter().map(|e| e.value.abs()).fold(R::zero(), R::max)
    }
}
