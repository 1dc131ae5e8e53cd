//! Jacobi theta functions θ₂ and θ₃ by error-bounded direct summation.
//!
//! Conventions, with `q`-exponent written through the lattice parameter `τ`
//! (`Im τ > 0`):
//!
//! ```text
//! θ₃(v|τ) = Σₙ exp(iπτn²) · exp(2πinv)
//! θ₂(v|τ) = Σₙ exp(iπτ(n+½)²) · exp((2n+1)πiv)
//! ```
//!
//! so θ₃ has period 1 in `v`, θ₂ has period 2 (anti-period 1), and θ₃ has
//! period 2 in `τ`. Every call site in this crate has `Im τ ≥ 1/(2π)`, which
//! keeps the symmetric partial sums short; no modular transformation is used.

use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex argument `v` and lattice parameter `τ` of a theta function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaInput {
    v: Complex64,
    tau: Complex64,
}

impl ThetaInput {
    pub fn new(v: Complex64, tau: Complex64) -> Result<Self> {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite("theta argument v"));
        }
        if !(tau.re.is_finite() && tau.im.is_finite()) {
            return Err(Error::NonFinite("lattice parameter tau"));
        }
        if tau.im <= 0.0 {
            return Err(Error::NonConvergent { im_tau: tau.im });
        }
        Ok(Self { v, tau })
    }

    pub fn v(&self) -> Complex64 {
        self.v
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }
}

/// Requested absolute truncation error and a hard cap on the summation index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    abs_tol: f64,
    max_terms: u32,
}

impl Tolerance {
    pub const DEFAULT_ABS_TOL: f64 = 1e-13;
    pub const DEFAULT_MAX_TERMS: u32 = 64;

    pub fn new(abs_tol: f64, max_terms: u32) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) || max_terms < 1 {
            return Err(Error::InvalidTolerance);
        }
        Ok(Self { abs_tol, max_terms })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_terms(&self) -> u32 {
        self.max_terms
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Result<Self> {
        Self::new(abs_tol, self.max_terms)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: Self::DEFAULT_ABS_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

/// Bound on `Σ_{|x| > N+shift} |term(x)|` where `|term(x)| ≤ exp(-π·b·x² + 2π·a·|x|)`
/// and `x` runs over `n + shift` for integer `n`. Returns `None` while the
/// terms beyond `N` are not yet monotonically decreasing.
fn tail_bound(n: u32, shift: f64, im_tau: f64, abs_im_v: f64) -> Option<f64> {
    let x = f64::from(n) + 1.0 + shift;
    let log_ratio = -PI * im_tau * (2.0 * x + 1.0) + 2.0 * PI * abs_im_v;
    if log_ratio >= 0.0 {
        return None;
    }
    let log_first = -PI * im_tau * x * x + 2.0 * PI * abs_im_v * x;
    // Both signs of the index contribute; the larger side bounds each.
    Some(2.0 * log_first.exp() / (1.0 - log_ratio.exp()))
}

fn required_terms(im_tau: f64, im_v: f64, shift: f64, tol: &Tolerance) -> Result<u32> {
    if im_tau <= 0.0 {
        return Err(Error::NonConvergent { im_tau });
    }
    let a = im_v.abs();
    (0..=tol.max_terms)
        .find(|&n| matches!(tail_bound(n, shift, im_tau, a), Some(b) if b <= tol.abs_tol))
        .ok_or(Error::TruncationOverflow {
            max_terms: tol.max_terms,
        })
}

/// Smallest `N` such that the θ₃ terms with `|n| > N` sum (in modulus) to at
/// most `tol.abs_tol()`.
///
/// Term moduli are `exp(-π·Im τ·n² - 2π·n·Im v)`; the bound uses `|Im v|` on
/// both sides and a geometric tail once consecutive ratios drop below one.
pub fn truncation_bound(tau: Complex64, im_v: f64, tol: &Tolerance) -> Result<u32> {
    required_terms(tau.im, im_v, 0.0, tol)
}

#[inline]
fn term(tau: Complex64, v: Complex64, x: f64) -> Complex64 {
    // exp(iπτx² + 2πixv)
    let i_pi = Complex64::new(0.0, PI);
    (i_pi * (tau * (x * x) + v * (2.0 * x))).exp()
}

/// θ₃(v|τ) with `|error| ≤ tol.abs_tol()` from truncation.
pub fn theta3(input: ThetaInput, tol: &Tolerance) -> Result<Complex64> {
    // Exact periodicities: v → v mod 1, τ → τ mod 2.
    let v = Complex64::new(input.v.re - input.v.re.round(), input.v.im);
    let tau = Complex64::new(
        input.tau.re - 2.0 * (input.tau.re / 2.0).round(),
        input.tau.im,
    );
    let n_max = required_terms(tau.im, v.im, 0.0, tol)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..=n_max).rev() {
        let x = f64::from(n);
        acc += term(tau, v, x) + term(tau, v, -x);
    }
    Ok(acc + 1.0)
}

/// θ₂(v|τ) with `|error| ≤ tol.abs_tol()` from truncation.
pub fn theta2(input: ThetaInput, tol: &Tolerance) -> Result<Complex64> {
    let v = Complex64::new(input.v.re - 2.0 * (input.v.re / 2.0).round(), input.v.im);
    // θ₂(v|τ) = i^k · θ₂(v|τ - 2k), since (n+½)² ≡ ¼ mod 1.
    let k = (input.tau.re / 2.0).round();
    let tau = Complex64::new(input.tau.re - 2.0 * k, input.tau.im);
    let n_max = required_terms(tau.im, v.im, 0.5, tol)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (0..=n_max).rev() {
        let x = f64::from(n) + 0.5;
        acc += term(tau, v, x) + term(tau, v, -x);
    }
    let phase = match (k as i64).rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    Ok(phase * acc)
}
