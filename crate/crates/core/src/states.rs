//! Coherent states on the cylinder and their exact time evolution.
//!
//! The state labelled by `(J, α, q, p)` is the product of a circle coherent
//! state (a θ₃ in `φ`) and an oscillator coherent state (a Gaussian in `l`).
//! The Hamiltonian `Ĵ²/2 + ω(N_ω + ½)` acts on the two factors separately:
//! the angular factor picks up `τ = (i - t)/(2π)`, the Gaussian moves along
//! the classical orbit.
//!
//! Closed forms go through [`crate::theta`]. The `oracle_*` functions work
//! on the truncated Fourier coefficients instead and share no code with the
//! closed forms.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::angle::wrap_2pi;
use crate::error::{Error, Result};
use crate::theta::{theta2, theta3, ThetaInput, Tolerance};

/// Frequencies below this make the meridian Gaussian unboundedly wide.
pub const MIN_OMEGA: f64 = 1e-6;

/// Extra Fourier modes kept beyond `|J|` by [`default_cutoff`].
pub const DEFAULT_CUTOFF_MARGIN: usize = 12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Coherent-state label: `ξ = e^(-J+iα)` on the circle and `(q, p)` on the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentParams {
    j: f64,
    alpha: f64,
    q: f64,
    p: f64,
}

impl CoherentParams {
    /// `alpha` is reduced to `[0, 2π)`.
    pub fn new(j: f64, alpha: f64, q: f64, p: f64) -> Result<Self> {
        for (x, what) in [(j, "J"), (alpha, "alpha"), (q, "q"), (p, "p")] {
            if !x.is_finite() {
                return Err(Error::NonFinite(what));
            }
        }
        Ok(Self {
            j,
            alpha: wrap_2pi(alpha),
            q,
            p,
        })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Circle label `ξ = e^(-J + iα)`.
    pub fn xi(&self) -> Complex64 {
        Complex64::from_polar((-self.j).exp(), self.alpha)
    }

    /// Oscillator label `z = √(ω/2)·(q + ip/ω)`.
    pub fn z(&self, cfg: &OscillatorConfig) -> Complex64 {
        let w = cfg.omega;
        (w / 2.0).sqrt() * Complex64::new(self.q, self.p / w)
    }

    pub fn is_integer_j(&self) -> bool {
        self.j.fract() == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorConfig {
    omega: f64,
}

impl OscillatorConfig {
    pub fn new(omega: f64) -> Result<Self> {
        if !omega.is_finite() || omega < MIN_OMEGA {
            return Err(Error::InvalidFrequency(omega));
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// Position on the cylinder: angle on the parallel and coordinate on the meridian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderPoint {
    phi: f64,
    l: f64,
}

impl CylinderPoint {
    pub fn new(phi: f64, l: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFinite("phi"));
        }
        if !l.is_finite() {
            return Err(Error::NonFinite("l"));
        }
        Ok(Self {
            phi: wrap_2pi(phi),
            l,
        })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    /// Embedding `(cos φ, sin φ, l)` in ℝ³.
    pub fn embed(&self) -> [f64; 3] {
        [self.phi.cos(), self.phi.sin(), self.l]
    }
}

fn angular_argument(params: &CoherentParams, phi: f64) -> Complex64 {
    Complex64::new((phi - params.alpha) / TAU, -params.j / TAU)
}

fn lattice(t: f64) -> Complex64 {
    Complex64::new(-t / TAU, 1.0 / TAU)
}

fn theta3_at(v: Complex64, tau: Complex64, tol: &Tolerance) -> Result<Complex64> {
    theta3(ThetaInput::new(v, tau)?, tol)
}

/// Coherent state wavefunction `f(φ, l)` at `t = 0`.
pub fn coherent_state(
    params: &CoherentParams,
    cfg: &OscillatorConfig,
    at: &CylinderPoint,
    tol: &Tolerance,
) -> Result<Complex64> {
    let w = cfg.omega;
    let angular = theta3_at(
        angular_argument(params, at.phi),
        Complex64::new(0.0, 1.0 / TAU),
        tol,
    )?;
    let dl = at.l - params.q;
    let meridian = Complex64::new(-0.5 * w * dl * dl, params.p * (at.l - 0.5 * params.q)).exp();
    Ok((w / PI).powf(0.25) * angular * meridian)
}

/// Exact solution of the Schrödinger equation started from [`coherent_state`].
pub fn evolved_state(
    params: &CoherentParams,
    cfg: &OscillatorConfig,
    at: &CylinderPoint,
    t: f64,
    tol: &Tolerance,
) -> Result<Complex64> {
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    let (w, q, p, l) = (cfg.omega, params.q, params.p, at.l);
    let angular = theta3_at(angular_argument(params, at.phi), lattice(t), tol)?;

    let (s, c) = (w * t).sin_cos();
    let rot = Complex64::from_polar(1.0, -w * t);
    let rot2 = rot * rot;
    let exponent = -0.5 * w * l * l - 0.5 * w * q * q * rot * c - I * (p * p / (2.0 * w)) * rot * s
        - 0.5 * I * q * p * rot2
        + w * Complex64::new(q, p / w) * rot * l;
    let meridian = Complex64::from_polar(1.0, -0.5 * w * t) * exponent.exp();
    Ok((w / PI).powf(0.25) * angular * meridian)
}

/// Squared norm of the angular factor w.r.t. `dφ/2π`: `θ₃(iJ/π | i/π) = Σₙ e^(-n² - 2nJ)`.
pub fn norm_constant(j: f64, tol: &Tolerance) -> Result<f64> {
    if !j.is_finite() {
        return Err(Error::NonFinite("J"));
    }
    let v = theta3_at(Complex64::new(0.0, j / PI), Complex64::new(0.0, 1.0 / PI), tol)?;
    Ok(v.re)
}

/// Angular marginal at time `t`, normalized w.r.t. `dφ/2π`.
pub fn angular_density(params: &CoherentParams, phi: f64, t: f64, tol: &Tolerance) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    let theta = theta3_at(angular_argument(params, phi), lattice(t), tol)?;
    Ok(theta.norm_sqr() / norm_constant(params.j, tol)?)
}

/// Meridian marginal at time `t`, normalized w.r.t. `dl`.
pub fn meridian_density(params: &CoherentParams, cfg: &OscillatorConfig, l: f64, t: f64) -> f64 {
    let w = cfg.omega;
    let d = l - expectation_l(params, cfg, t);
    (w / PI).sqrt() * (-w * d * d).exp()
}

/// Normalized probability density w.r.t. the measure `dφ dl / 2π`.
pub fn density(
    params: &CoherentParams,
    cfg: &OscillatorConfig,
    at: &CylinderPoint,
    t: f64,
    tol: &Tolerance,
) -> Result<f64> {
    Ok(angular_density(params, at.phi, t, tol)? * meridian_density(params, cfg, at.l, t))
}

/// `⟨U(t)⟩ = e^(-1/4) e^(iα) θ₂(t/2π - iJ/π | i/π) / θ₃(iJ/π | i/π)`.
pub fn expectation_u(params: &CoherentParams, t: f64, tol: &Tolerance) -> Result<Complex64> {
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    let num = theta2(
        ThetaInput::new(
            Complex64::new(t / TAU, -params.j / PI),
            Complex64::new(0.0, 1.0 / PI),
        )?,
        tol,
    )?;
    let prefactor = Complex64::from_polar((-0.25f64).exp(), params.alpha);
    Ok(prefactor * num / norm_constant(params.j, tol)?)
}

/// `⟨l̂(t)⟩ = q cos ωt + (p/ω) sin ωt`, which is also the classical meridian orbit.
pub fn expectation_l(params: &CoherentParams, cfg: &OscillatorConfig, t: f64) -> f64 {
    let w = cfg.omega;
    let (s, c) = (w * t).sin_cos();
    params.q * c + params.p / w * s
}

/// One point of the quantum mean trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    /// `Arg⟨U(t)⟩` in `[0, 2π)`, not unwrapped.
    pub phi: f64,
    pub l: f64,
    pub abs_u: f64,
}

pub fn trajectory_sample(
    params: &CoherentParams,
    cfg: &OscillatorConfig,
    t: f64,
    tol: &Tolerance,
) -> Result<TrajectorySample> {
    let u = expectation_u(params, t, tol)?;
    Ok(TrajectorySample {
        t,
        phi: wrap_2pi(u.arg()),
        l: expectation_l(params, cfg, t),
        abs_u: u.norm(),
    })
}

pub fn mean_trajectory(
    params: &CoherentParams,
    cfg: &OscillatorConfig,
    t_grid: &[f64],
    tol: &Tolerance,
) -> Result<Vec<TrajectorySample>> {
    t_grid
        .iter()
        .map(|&t| trajectory_sample(params, cfg, t, tol))
        .collect()
}

/// Truncated angular-momentum expansion times an oscillator coherent state:
/// `f(φ, l) = Σ_{|n| ≤ n_max} cₙ e^(inφ) · g(l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierGaussianState {
    n_max: usize,
    coeffs: Vec<Complex64>,
    gauss_center: f64,
    gauss_width: f64,
    gauss_phase: Complex64,
}

/// `|J| + 12`; the first dropped coefficient is below `e^(-78)` relative to the peak.
pub fn default_cutoff(j: f64) -> usize {
    j.abs().ceil() as usize + DEFAULT_CUTOFF_MARGIN
}

/// Fourier coefficients `cₙ = e^(-n²/2) e^(nJ) e^(-inα)` of the coherent state,
/// i.e. the solution of `e^(-Ĵ+½) U f = ξ f` on the basis `e^(inφ)`.
///
/// Fails with [`Error::CutoffTooSmall`] when the first dropped coefficient,
/// relative to the largest one, exceeds `tol.abs_tol()`.
pub fn fourier_coefficients(
    params: &CoherentParams,
    cfg: &OscillatorConfig,
    n_max: usize,
    tol: &Tolerance,
) -> Result<FourierGaussianState> {
    let j = params.j;
    // log|cₙ| = -n²/2 + nJ peaks at the integer nearest J.
    let log_mag = |n: f64| -0.5 * n * n + n * j;
    let peak = log_mag(j.round());
    let edge = n_max as f64 + 1.0;
    let tail = (log_mag(edge).max(log_mag(-edge)) - peak).exp();
    if tail > tol.abs_tol() {
        return Err(Error::CutoffTooSmall { n_max, tail });
    }
    let coeffs = (0..=2 * n_max)
        .map(|i| {
            let n = i as f64 - n_max as f64;
            Complex64::from_polar(log_mag(n).exp(), -n * params.alpha)
        })
        .collect();
    Ok(FourierGaussianState {
        n_max,
        coeffs,
        gauss_center: params.q,
        gauss_width: 1.0 / cfg.omega.sqrt(),
        gauss_phase: params.z(cfg),
    })
}

impl FourierGaussianState {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Coefficients for `n = -n_max ..= n_max`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: i64) -> Option<Complex64> {
        let idx = n + self.n_max as i64;
        usize::try_from(idx).ok().and_then(|i| self.coeffs.get(i).copied())
    }

    pub fn gauss_center(&self) -> f64 {
        self.gauss_center
    }

    pub fn gauss_width(&self) -> f64 {
        self.gauss_width
    }

    /// Oscillator amplitude `z`.
    pub fn gauss_phase(&self) -> Complex64 {
        self.gauss_phase
    }

    pub fn omega(&self) -> f64 {
        1.0 / (self.gauss_width * self.gauss_width)
    }

    /// `Σ |cₙ|²`, the squared norm w.r.t. `dφ dl / 2π`.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    fn indexed(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        let off = self.n_max as f64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as f64 - off, c))
    }
}

/// Oracle wavefunction: `Σₙ cₙ e^(-itn²/2) e^(inφ)` times the oscillator
/// coherent state with `z → z e^(-iωt)` and the zero-point phase `e^(-iωt/2)`.
pub fn oracle_state(state: &FourierGaussianState, at: &CylinderPoint, t: f64) -> Complex64 {
    let angular: Complex64 = state
        .indexed()
        .map(|(n, c)| c * Complex64::from_polar(1.0, n * at.phi - 0.5 * t * n * n))
        .sum();

    let w = state.omega();
    let zt = state.gauss_phase * Complex64::from_polar(1.0, -w * t);
    let qt = (2.0 / w).sqrt() * zt.re;
    let pt = (2.0 * w).sqrt() * zt.im;
    let d = at.l - qt;
    let gauss = (w / PI).powf(0.25)
        * Complex64::new(-0.5 * w * d * d, pt * (at.l - 0.5 * qt) - 0.5 * w * t).exp();
    angular * gauss
}

/// `|oracle_state|² / Σ|cₙ|²`.
pub fn oracle_density(state: &FourierGaussianState, at: &CylinderPoint, t: f64) -> f64 {
    oracle_state(state, at, t).norm_sqr() / state.norm_sqr()
}

/// Heisenberg-picture `⟨e^(itĴ²/2) U e^(-itĴ²/2)⟩ = Σₙ c̄ₙ₊₁ cₙ e^(it(n+½)) / Σ|cₙ|²`.
pub fn oracle_expectation_u(state: &FourierGaussianState, t: f64) -> Complex64 {
    let num: Complex64 = state
        .coeffs
        .windows(2)
        .zip(state.indexed())
        .map(|(pair, (n, _))| pair[1].conj() * pair[0] * Complex64::from_polar(1.0, t * (n + 0.5)))
        .sum();
    num / state.norm_sqr()
}
