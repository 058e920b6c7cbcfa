//! Discrete Fourier transforms for the periodized symbol.
//!
//! `f64` goes through `rustfft`. `rustfft` builds its twiddle factors in `f64`
//! whatever the element type, so the extended path uses a plain iterative
//! radix-2 transform with twiddles evaluated in working precision.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::real::Real;

/// `Forward` uses the kernel `e^{-2πi jk/m}`, `Inverse` uses `e^{+2πi jk/m}`.
/// Neither direction is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

pub(crate) fn rustfft_f64(buf: &mut [Complex<f64>], direction: Direction) {
    let mut planner = FftPlanner::new();
    let plan = match direction {
        Direction::Forward => planner.plan_fft_forward(buf.len()),
        Direction::Inverse => planner.plan_fft_inverse(buf.len()),
    };
    plan.process(buf);
}

pub(crate) fn radix2<R: Real>(buf: &mut [Complex<R>], direction: Direction) {
    let n = buf.len();
    assert!(n.is_power_of_two(), "radix-2 transform needs a power-of-two length");
    if n < 2 {
        return;
    }

    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }

    let sign = match direction {
        Direction::Forward => -R::one(),
        Direction::Inverse => R::one(),
    };
    // twiddles for the full length; stage `len` uses every (n/len)-th one
    let two_pi = R::PI() + R::PI();
    let twiddles: Vec<Complex<R>> = (0..n / 2)
        .map(|k| {
            let angle = two_pi * R::from_uint(k as u64) / R::from_uint(n as u64);
            Complex::new(angle.cos(), sign * angle.sin())
        })
        .collect();

    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = twiddles[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + len / 2] * w;
                buf[start + k] = a + b;
                buf[start + k + len / 2] = a - b;
            }
        }
        len <<= 1;
    }
}
