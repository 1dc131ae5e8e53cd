//! π-jumps of the mean angle `Arg⟨U(t)⟩`.
//!
//! For integer `J`, `⟨U(t)⟩` passes through zero at `t* = (2k+1)π` and its
//! argument flips by π there. At the same instants the angular density has
//! two maxima of equal height. This module evaluates the two one-sided
//! limits at each `t*`, collects them into a point cloud on the cylinder and
//! independently sweeps the phase for any other discontinuity.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::ops::RangeInclusive;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::angle::{circular_distance, wrap_2pi, wrap_pi};
use crate::error::{Error, Result};
use crate::states::{angular_density, expectation_l, expectation_u, CoherentParams, OscillatorConfig};
use crate::theta::Tolerance;

pub const DEFAULT_EPS: f64 = 1e-6;

/// Mean resultant length below which a sample of angles has no mean direction.
pub const MIN_RESULTANT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpPoint {
    pub k: i64,
    pub t_star: f64,
    /// `Arg⟨U(t* - eps)⟩` in `[0, 2π)`.
    pub phi_minus: f64,
    /// `Arg⟨U(t* + eps)⟩` in `[0, 2π)`.
    pub phi_plus: f64,
    /// `⟨l̂(t*)⟩`.
    pub l: f64,
    /// `φ₊ - φ₋` reduced to `(-π, π]`.
    pub delta_phi: f64,
}

/// `t* = (2k+1)π`.
pub fn jump_time(k: i64) -> f64 {
    (2 * k + 1) as f64 * PI
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < PI) {
        return Err(Error::InvalidArgument("eps must lie in (0, π)"));
    }
    Ok(())
}

pub fn jump_point(
    params: &CoherentParams,
    cfg: &OscillatorConfig,
    k: i64,
    eps: f64,
    tol: &Tolerance,
) -> Result<JumpPoint> {
    check_eps(eps)?;
    let t_star = jump_time(k);
    let phi_minus = wrap_2pi(expectation_u(params, t_star - eps, tol)?.arg());
    let phi_plus = wrap_2pi(expectation_u(params, t_star + eps, tol)?.arg());
    Ok(JumpPoint {
        k,
        t_star,
        phi_minus,
        phi_plus,
        l: expectation_l(params, cfg, t_star),
        delta_phi: wrap_pi(phi_plus - phi_minus),
    })
}

/// First trigonometric moment of a set of angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularStats {
    /// Mean direction in `[0, 2π)`; `None` when the mean resultant length is
    /// below [`MIN_RESULTANT`].
    pub mean: Option<f64>,
    /// Mean resultant length `R̄ ∈ [0, 1]`.
    pub resultant_length: f64,
    /// Circular standard deviation `√(-2 ln R̄)`.
    pub spread: f64,
}

pub fn circular_stats(angles: impl IntoIterator<Item = f64>) -> CircularStats {
    let (mut sum, mut n) = (Complex64::new(0.0, 0.0), 0usize);
    for a in angles {
        sum += Complex64::from_polar(1.0, a);
        n += 1;
    }
    if n == 0 {
        return CircularStats {
            mean: None,
            resultant_length: 0.0,
            spread: f64::INFINITY,
        };
    }
    let r = (sum.norm() / n as f64).min(1.0);
    CircularStats {
        mean: (r >= MIN_RESULTANT).then(|| wrap_2pi(sum.arg())),
        resultant_length: r,
        spread: (-2.0 * r.ln()).sqrt(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JumpCloud {
    pub points: Vec<JumpPoint>,
    /// Circular mean over the union of `phi_minus` and `phi_plus`.
    pub circular_mean_phi: Option<f64>,
    pub circular_spread: f64,
    pub resultant_length: f64,
    /// Set when `J` is not an integer: the points are still computed but the
    /// π magnitude of the jumps is not guaranteed.
    pub non_integer_j: bool,
}

impl JumpCloud {
    pub fn from_points(points: Vec<JumpPoint>, params: &CoherentParams) -> Self {
        let stats = circular_stats(points.iter().flat_map(|p| [p.phi_minus, p.phi_plus]));
        Self {
            points,
            circular_mean_phi: stats.mean,
            circular_spread: stats.spread,
            resultant_length: stats.resultant_length,
            non_integer_j: !params.is_integer_j(),
        }
    }

    /// Number of distinct `l` values, treating values closer than `abs_tol` as equal.
    pub fn distinct_l_count(&self, abs_tol: f64) -> usize {
        let mut ls: Vec<f64> = self.points.iter().map(|p| p.l).collect();
        ls.sort_by(f64::total_cmp);
        let mut count = 0;
        let mut last = f64::NEG_INFINITY;
        for l in ls {
            if l - last > abs_tol {
                count += 1;
                last = l;
            }
        }
        count
    }
}

/// Sequential sweep over `k_range`.
pub fn jump_points(
    params: &CoherentParams,
    cfg: &OscillatorConfig,
    k_range: RangeInclusive<i64>,
    eps: f64,
    tol: &Tolerance,
) -> Result<JumpCloud> {
    check_eps(eps)?;
    let points = k_range
        .map(|k| jump_point(params, cfg, k, eps, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(JumpCloud::from_points(points, params))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discontinuity {
    /// Midpoint of the sampling step that contains the jump.
    pub t: f64,
    /// Raw circular difference across that step, in `(-π, π]`.
    pub delta_phi: f64,
}

/// Samples `Arg⟨U(t)⟩` on `t_start, t_start + dt, …, ≤ t_end` and flags
/// steps whose circular difference departs from the local drift by more than
/// `threshold`. The drift at a step is the median of up to two steps on
/// either side, so an isolated jump does not leak into its neighbours.
pub fn scan_discontinuities(
    params: &CoherentParams,
    t_start: f64,
    t_end: f64,
    dt: f64,
    threshold: f64,
    tol: &Tolerance,
) -> Result<Vec<Discontinuity>> {
    if !(dt > 0.0) || !t_start.is_finite() || !t_end.is_finite() || t_end < t_start {
        return Err(Error::InvalidArgument("need finite t_start <= t_end and dt > 0"));
    }
    let n = ((t_end - t_start) / dt + 1e-9).floor() as usize + 1;
    let phases = (0..n)
        .map(|i| Ok(expectation_u(params, t_start + i as f64 * dt, tol)?.arg()))
        .collect::<Result<Vec<f64>>>()?;
    let steps: Vec<f64> = phases.windows(2).map(|w| wrap_pi(w[1] - w[0])).collect();

    let mut out = Vec::new();
    for (i, &d) in steps.iter().enumerate() {
        let mut near: Vec<f64> = (i.saturating_sub(2)..(i + 3).min(steps.len()))
            .filter(|&j| j != i)
            .map(|j| steps[j])
            .collect();
        if wrap_pi(d - median(&mut near)).abs() > threshold {
            out.push(Discontinuity {
                t: t_start + (i as f64 + 0.5) * dt,
                delta_phi: d,
            });
        }
    }
    Ok(out)
}

fn median(xs: &mut [f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMaximum {
    pub phi: f64,
    pub value: f64,
}

/// Local maxima of the angular density at time `t`, sorted by height
/// (largest first). A uniform scan with `samples` points brackets each
/// maximum; golden-section search then refines it.
pub fn angular_maxima(
    params: &CoherentParams,
    t: f64,
    samples: usize,
    tol: &Tolerance,
) -> Result<Vec<AngularMaximum>> {
    if samples < 3 {
        return Err(Error::InvalidArgument("need at least 3 samples"));
    }
    let h = TAU / samples as f64;
    let f = |phi: f64| angular_density(params, phi, t, tol);
    let values = (0..samples).map(|i| f(i as f64 * h)).collect::<Result<Vec<f64>>>()?;

    let mut out = Vec::new();
    for i in 0..samples {
        let prev = values[(i + samples - 1) % samples];
        let next = values[(i + 1) % samples];
        if values[i] > prev && values[i] >= next {
            let centre = i as f64 * h;
            out.push(golden_max(&f, centre - h, centre + h)?);
        }
    }
    out.sort_by(|a, b| b.value.total_cmp(&a.value));
    Ok(out)
}

fn golden_max(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<AngularMaximum> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..200 {
        if b - a < 1e-12 {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        }
    }
    let (phi, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok(AngularMaximum {
        phi: wrap_2pi(phi),
        value,
    })
}

/// Whether the two tallest angular maxima agree to `rel_tol` and sit at
/// distinct angles (separated by more than `min_separation`).
pub fn has_twin_maxima(maxima: &[AngularMaximum], rel_tol: f64, min_separation: f64) -> bool {
    match maxima {
        [a, b, ..] => {
            (a.value - b.value).abs() <= rel_tol * a.value
                && circular_distance(a.phi, b.phi) > min_separation
        }
        _ => false,
    }
}
