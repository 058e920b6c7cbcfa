//! Working-precision scalars.
//!
//! Every numerical routine in the crate is generic over [`Real`]. Two
//! implementations ship: `f64` (standard mode) and [`Extended`], a 40-digit
//! decimal float (extended mode). Conversions go through the trait helpers
//! rather than `NumCast`, which routes `num-bigfloat` through `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigfloat::BigFloat;
use num_complex::Complex;
use num_traits::{Float, FloatConst};

use crate::fft::{self, Direction};

/// Extended-precision scalar (40 significant decimal digits).
pub type Extended = BigFloat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Standard,
    Extended,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Standard => "standard",
            Precision::Extended => "extended",
        }
    }
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "standard" | "double" | "f64" => Ok(Precision::Standard),
            "extended" | "ext" => Ok(Precision::Extended),
            other => Err(format!("unknown precision '{other}'")),
        }
    }
}

pub trait Real:
    Float + FloatConst + Sum + Default + Debug + Display + Send + Sync + 'static
{
    const PRECISION: Precision;

    /// Relative rounding error of one arithmetic operation.
    fn unit_roundoff() -> Self;

    /// Default tolerance for series that should be summed to full working precision.
    fn series_tol() -> Self;

    fn lit(x: f64) -> Self;

    fn from_int(n: i64) -> Self;

    fn from_uint(n: u64) -> Self;

    fn as_f64(self) -> f64;

    /// Shortest text that reads back to the same value.
    fn format(self) -> String;

    /// Unnormalized in-place DFT of length `buf.len()` (a power of two).
    fn dft(buf: &mut [Complex<Self>], direction: Direction);

    /// `self^n` by repeated squaring; exact sign handling for negative bases.
    fn powu(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }
}

impl Real for f64 {
    const PRECISION: Precision = Precision::Standard;

    fn unit_roundoff() -> Self {
        f64::EPSILON / 2.0
    }

    fn series_tol() -> Self {
        1e-15
    }

    fn lit(x: f64) -> Self {
        x
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_uint(n: u64) -> Self {
        n as f64
    }

    fn as_f64(self) -> f64 {
        self
    }

    fn format(self) -> String {
        format!("{self:?}")
    }

    fn dft(buf: &mut [Complex<Self>], direction: Direction) {
        fft::rustfft_f64(buf, direction)
    }
}

impl Real for BigFloat {
    const PRECISION: Precision = Precision::Extended;

    fn unit_roundoff() -> Self {
        BigFloat::from_f64(1e-39)
    }

    fn series_tol() -> Self {
        BigFloat::from_f64(1e-36)
    }

    fn lit(x: f64) -> Self {
        BigFloat::from_f64(x)
    }

    fn from_int(n: i64) -> Self {
        BigFloat::from(n)
    }

    fn from_uint(n: u64) -> Self {
        BigFloat::from(n)
    }

    fn as_f64(self) -> f64 {
        self.to_f64()
    }

    fn format(self) -> String {
        format!("{self}")
    }

    fn dft(buf: &mut [Complex<Self>], direction: Direction) {
        fft::radix2(buf, direction)
    }
}
