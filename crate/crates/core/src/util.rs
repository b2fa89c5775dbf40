//! Deterministic summation and parallel reduction helpers.
//!
//! Every statistic in this crate is reduced in a fixed tree order that does
//! not depend on the number of worker threads, so reports are reproducible
//! byte for byte across thread counts.

use rayon::prelude::*;

/// Complex double, kept as a plain pair to stay dependency-light.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const ZERO: Complex = Complex { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    /// e^{i theta}
    pub fn cis(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Complex { re: c, im: s }
    }

    pub fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn scale(self, k: f64) -> Self {
        Complex::new(self.re * k, self.im * k)
    }
}

impl std::ops::Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl std::ops::Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl std::ops::Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        Complex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl std::ops::AddAssign for Complex {
    fn add_assign(&mut self, rhs: Complex) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

/// Pairwise (tree) sum of a slice in index order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise (tree) sum of complex values in index order.
pub fn pairwise_sum_complex(xs: &[Complex]) -> Complex {
    if xs.len() <= 8 {
        let mut acc = Complex::ZERO;
        for x in xs {
            acc += *x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
}

/// Fixed chunk width used for all data-parallel reductions. The chunking is a
/// property of the data length alone, so the reduction tree is identical for
/// any thread count.
pub const CHUNK: usize = 1024;

/// Map fixed-size index chunks in parallel and reduce the ordered partials
/// pairwise. `f` receives a chunk range `[lo, hi)` and returns its partial sum.
pub fn par_chunked_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    let partials: Vec<f64> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| f(c * CHUNK, ((c + 1) * CHUNK).min(n)))
        .collect();
    pairwise_sum(&partials)
}

/// Complex variant of [`par_chunked_sum`].
pub fn par_chunked_sum_complex<F>(n: usize, f: F) -> Complex
where
    F: Fn(usize, usize) -> Complex + Sync,
{
    let partials: Vec<Complex> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| f(c * CHUNK, ((c + 1) * CHUNK).min(n)))
        .collect();
    pairwise_sum_complex(&partials)
}
