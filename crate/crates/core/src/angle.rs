//! Angle reductions shared by the trajectory and jump code.

use core::f64::consts::{PI, TAU};
#[allow(unused_imports)]
use num_traits::Float;

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_2pi(x: f64) -> f64 {
    let r = x - TAU * (x / TAU).floor();
    if r >= TAU || r == 0.0 {
        0.0
    } else if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

/// Reduces an angle to `(-π, π]`. An input landing on `-π` is reported as `+π`.
pub fn wrap_pi(x: f64) -> f64 {
    let r = wrap_2pi(x);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Unsigned distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    wrap_pi(a - b).abs()
}
