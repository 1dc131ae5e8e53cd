//! Classical motion on the cylinder: uniform rotation with angular velocity
//! `J` around the parallel, harmonic oscillation with frequency `ω` along the
//! meridian. Closed form only.

use core::f64::consts::TAU;
#[allow(unused_imports)]
use num_traits::Float;

use crate::angle::wrap_2pi;
use crate::error::{Error, Result};
use crate::states::OscillatorConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalInitial {
    phi0: f64,
    j: f64,
    l0: f64,
    p_l0: f64,
}

impl ClassicalInitial {
    pub fn new(phi0: f64, j: f64, l0: f64, p_l0: f64) -> Result<Self> {
        for (x, what) in [(phi0, "phi0"), (j, "J"), (l0, "l0"), (p_l0, "p_l0")] {
            if !x.is_finite() {
                return Err(Error::NonFinite(what));
            }
        }
        Ok(Self {
            phi0: wrap_2pi(phi0),
            j,
            l0,
            p_l0,
        })
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn l0(&self) -> f64 {
        self.l0
    }

    pub fn p_l0(&self) -> f64 {
        self.p_l0
    }

    /// Largest meridian excursion `√(l₀² + (p_l0/ω)²)`.
    pub fn meridian_amplitude(&self, cfg: &OscillatorConfig) -> f64 {
        self.l0.hypot(self.p_l0 / cfg.omega())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalSample {
    pub t: f64,
    pub phi: f64,
    pub l: f64,
    pub p_l: f64,
    pub energy: f64,
}

pub fn energy(j: f64, l: f64, p_l: f64, cfg: &OscillatorConfig) -> f64 {
    let w = cfg.omega();
    0.5 * (p_l * p_l + j * j + w * w * l * l)
}

pub fn classical_solution(init: &ClassicalInitial, cfg: &OscillatorConfig, t: f64) -> ClassicalSample {
    let w = cfg.omega();
    let (s, c) = (w * t).sin_cos();
    let l = init.l0 * c + init.p_l0 / w * s;
    let p_l = init.p_l0 * c - w * init.l0 * s;
    ClassicalSample {
        t,
        phi: wrap_2pi(init.phi0 + init.j * t),
        l,
        p_l,
        energy: energy(init.j, l, p_l, cfg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Periodicity {
    /// `ω/|J| ≈ a/b`; the orbit closes after `b` turns and `a` meridian oscillations.
    Periodic { period: f64, turns: u64, oscillations: u64 },
    Quasiperiodic,
}

impl Periodicity {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Periodicity::Periodic { .. })
    }
}

pub const DEFAULT_COMMENSURABILITY_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;

/// Decides whether `ω` and `ω_J = |J|` are commensurable.
///
/// Walks the continued-fraction convergents `a/b` of `ω/|J|` with
/// `b ≤ max_denominator` and accepts the first one with `|b·ω/|J| - a| ≤ tol`,
/// i.e. the phase mismatch after `b` turns is below `tol` oscillation periods.
/// `J = 0` has no circular motion and is periodic with the meridian period.
pub fn is_periodic(cfg: &OscillatorConfig, j: f64, tol: f64, max_denominator: u64) -> Periodicity {
    let w = cfg.omega();
    let wj = j.abs();
    if wj == 0.0 {
        return Periodicity::Periodic {
            period: TAU / w,
            turns: 0,
            oscillations: 1,
        };
    }
    let ratio = w / wj;
    // Convergents h/k via the standard recurrence.
    let (mut h_prev, mut h) = (1u64, ratio.floor() as u64);
    let (mut k_prev, mut k) = (0u64, 1u64);
    let mut x = ratio;
    loop {
        if (k as f64 * ratio - h as f64).abs() <= tol {
            return Periodicity::Periodic {
                period: TAU * k as f64 / wj,
                turns: k,
                oscillations: h,
            };
        }
        let frac = x - x.floor();
        if frac < 1e-15 {
            return Periodicity::Quasiperiodic;
        }
        x = 1.0 / frac;
        let a = x.floor() as u64;
        let (h_next, k_next) = match (
            a.checked_mul(h).and_then(|v| v.checked_add(h_prev)),
            a.checked_mul(k).and_then(|v| v.checked_add(k_prev)),
        ) {
            (Some(hn), Some(kn)) => (hn, kn),
            _ => return Periodicity::Quasiperiodic,
        };
        if k_next > max_denominator {
            return Periodicity::Quasiperiodic;
        }
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
    }
}
