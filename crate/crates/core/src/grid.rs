//! Probability density sampled on a `(φ, l)` grid, with trapezoid quadrature
//! under the measure `dφ dl / 2π`.
//!
//! The φ axis is a full uniform period `φᵢ = φ₀ + 2πi/N` (no duplicated
//! endpoint), on which the trapezoid rule reduces to an equal-weight sum. The
//! l axis is any strictly increasing sequence and uses the ordinary trapezoid
//! rule.

use alloc::vec::Vec;
use core::f64::consts::TAU;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::states::{density, CoherentParams, CylinderPoint, OscillatorConfig};
use crate::theta::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    phi_values: Vec<f64>,
    l_values: Vec<f64>,
    /// Row-major over `(phi, l)`: index `i * l_values.len() + j`.
    density: Vec<f64>,
    norm_tol: f64,
}

/// `n` equally spaced angles `2πi/n` covering one period.
pub fn periodic_phi_axis(n: usize) -> Vec<f64> {
    (0..n).map(|i| TAU * i as f64 / n as f64).collect()
}

/// `n ≥ 2` equally spaced points from `min` to `max` inclusive.
pub fn uniform_axis(min: f64, max: f64, n: usize) -> Vec<f64> {
    let h = (max - min) / (n as f64 - 1.0);
    (0..n)
        .map(|j| if j + 1 == n { max } else { min + h * j as f64 })
        .collect()
}

/// Meridian window covering the whole orbit of the packet centre plus
/// 8 widths on each side: `±(√(q² + (p/ω)²) + 8/√ω)`.
pub fn default_l_range(params: &CoherentParams, cfg: &OscillatorConfig) -> (f64, f64) {
    let w = cfg.omega();
    let amp = params.q().hypot(params.p() / w);
    let half = amp + 8.0 / w.sqrt();
    (-half, half)
}

fn check_axes(phi: &[f64], l: &[f64]) -> Result<()> {
    if phi.len() < 2 || l.len() < 2 {
        return Err(Error::InvalidGrid("each axis needs at least 2 points"));
    }
    let step = TAU / phi.len() as f64;
    if phi.iter().any(|x| !x.is_finite())
        || phi.windows(2).any(|w| ((w[1] - w[0]) - step).abs() > 1e-9)
    {
        return Err(Error::InvalidGrid("phi axis must be a uniform full period"));
    }
    if l.iter().any(|x| !x.is_finite()) || l.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("l axis must be finite and strictly increasing"));
    }
    Ok(())
}

impl DensityGrid {
    /// Wraps precomputed values (e.g. from a parallel sweep).
    pub fn from_values(
        phi_values: Vec<f64>,
        l_values: Vec<f64>,
        density: Vec<f64>,
        norm_tol: f64,
    ) -> Result<Self> {
        check_axes(&phi_values, &l_values)?;
        if density.len() != phi_values.len() * l_values.len() {
            return Err(Error::InvalidGrid("value count does not match axes"));
        }
        if density.iter().any(|&d| !(d >= 0.0 && d.is_finite())) {
            return Err(Error::InvalidGrid("density values must be finite and non-negative"));
        }
        if !(norm_tol > 0.0) {
            return Err(Error::InvalidArgument("norm_tol must be positive"));
        }
        Ok(Self {
            phi_values,
            l_values,
            density,
            norm_tol,
        })
    }

    /// Sequential evaluation of the density at every grid point.
    pub fn evaluate(
        params: &CoherentParams,
        cfg: &OscillatorConfig,
        t: f64,
        phi_values: Vec<f64>,
        l_values: Vec<f64>,
        tol: &Tolerance,
        norm_tol: f64,
    ) -> Result<Self> {
        check_axes(&phi_values, &l_values)?;
        let mut values = Vec::with_capacity(phi_values.len() * l_values.len());
        for &phi in &phi_values {
            for &l in &l_values {
                values.push(density(params, cfg, &CylinderPoint::new(phi, l)?, t, tol)?);
            }
        }
        Self::from_values(phi_values, l_values, values, norm_tol)
    }

    pub fn phi_values(&self) -> &[f64] {
        &self.phi_values
    }

    pub fn l_values(&self) -> &[f64] {
        &self.l_values
    }

    pub fn values(&self) -> &[f64] {
        &self.density
    }

    pub fn norm_tol(&self) -> f64 {
        self.norm_tol
    }

    pub fn get(&self, i_phi: usize, j_l: usize) -> f64 {
        self.density[i_phi * self.l_values.len() + j_l]
    }

    fn l_weights(&self) -> Vec<f64> {
        let l = &self.l_values;
        let n = l.len();
        (0..n)
            .map(|j| {
                let left = if j > 0 { l[j] - l[j - 1] } else { 0.0 };
                let right = if j + 1 < n { l[j + 1] - l[j] } else { 0.0 };
                0.5 * (left + right)
            })
            .collect()
    }

    fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let wl = self.l_weights();
        let wphi = 1.0 / self.phi_values.len() as f64; // (1/2π)·(2π/N)
        let n_l = self.l_values.len();
        self.density
            .chunks_exact(n_l)
            .map(|row| {
                row.iter()
                    .zip(&wl)
                    .zip(&self.l_values)
                    .map(|((d, w), &l)| d * w * f(l))
                    .sum::<f64>()
            })
            .sum::<f64>()
            * wphi
    }

    /// `(1/2π) ∬ ρ dφ dl`.
    pub fn integral(&self) -> f64 {
        self.integrate(|_| 1.0)
    }

    /// `(1/2π) ∬ l ρ dφ dl`.
    pub fn mean_l(&self) -> f64 {
        self.integrate(|l| l)
    }

    /// Returns the integral, or [`Error::NotNormalized`] if it is not within
    /// the tolerance declared at construction.
    pub fn check_normalization(&self) -> Result<f64> {
        let integral = self.integral();
        if (integral - 1.0).abs() > self.norm_tol {
            return Err(Error::NotNormalized {
                integral,
                tol: self.norm_tol,
            });
        }
        Ok(integral)
    }

    /// Angular marginal `∫ ρ dl` at each φ sample.
    pub fn phi_marginal(&self) -> Vec<f64> {
        let wl = self.l_weights();
        self.density
            .chunks_exact(self.l_values.len())
            .map(|row| row.iter().zip(&wl).map(|(d, w)| d * w).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::expectation_l;
    use core::f64::consts::PI;

    fn defaults() -> (CoherentParams, OscillatorConfig) {
        (
            CoherentParams::new(1.0, 0.75 * PI, -0.7, 0.2).unwrap(),
            OscillatorConfig::new(1.0).unwrap(),
        )
    }

    #[test]
    fn axes() {
        let a = periodic_phi_axis(4);
        assert_eq!(a, [0.0, PI / 2.0, PI, 1.5 * PI]);
        let b = uniform_axis(-1.0, 1.0, 5);
        assert_eq!(b, [-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(DensityGrid::from_values(alloc::vec![0.0], alloc::vec![0.0, 1.0], alloc::vec![1.0; 2], 1e-6).is_err());
        assert!(DensityGrid::from_values(periodic_phi_axis(2), alloc::vec![1.0, 0.0], alloc::vec![1.0; 4], 1e-6).is_err());
        assert!(DensityGrid::from_values(alloc::vec![0.0, 1.0], alloc::vec![0.0, 1.0], alloc::vec![1.0; 4], 1e-6).is_err());
        assert!(DensityGrid::from_values(periodic_phi_axis(2), alloc::vec![0.0, 1.0], alloc::vec![-1.0; 4], 1e-6).is_err());
        assert!(DensityGrid::from_values(periodic_phi_axis(2), alloc::vec![0.0, 1.0], alloc::vec![1.0; 3], 1e-6).is_err());
    }

    #[test]
    fn constant_density_integral() {
        // ρ = 1/2 on l ∈ [0, 2] integrates to 1.
        let g = DensityGrid::from_values(periodic_phi_axis(8), uniform_axis(0.0, 2.0, 11), alloc::vec![0.5; 88], 1e-12)
            .unwrap();
        assert!((g.integral() - 1.0).abs() < 1e-14);
        assert!((g.mean_l() - 1.0).abs() < 1e-14);
        assert!(g.check_normalization().is_ok());
    }

    #[test]
    fn default_density_is_normalized() {
        let (params, cfg) = defaults();
        let (lo, hi) = default_l_range(&params, &cfg);
        let g = DensityGrid::evaluate(
            &params,
            &cfg,
            1.0,
            periodic_phi_axis(64),
            uniform_axis(lo, hi, 161),
            &Tolerance::default(),
            1e-6,
        )
        .unwrap();
        let integral = g.check_normalization().unwrap();
        assert!((integral - 1.0).abs() < 1e-9, "{integral}");
        assert!((g.mean_l() - expectation_l(&params, &cfg, 1.0)).abs() < 1e-9);
    }

    #[test]
    fn truncated_window_fails_normalization() {
        let (params, cfg) = defaults();
        let g = DensityGrid::evaluate(
            &params,
            &cfg,
            0.0,
            periodic_phi_axis(16),
            uniform_axis(0.0, 2.0, 41),
            &Tolerance::default(),
            1e-6,
        )
        .unwrap();
        assert!(matches!(g.check_normalization(), Err(Error::NotNormalized { .. })));
    }
}
