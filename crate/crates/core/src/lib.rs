//! Quantum dynamics of a harmonic oscillator confined to a cylinder.
//!
//! A particle on the surface `(cos φ, sin φ, l)` moves freely around the
//! parallel and oscillates with frequency `ω` along the meridian. Starting
//! from a coherent state, the wavefunction stays a product of a Jacobi theta
//! function in `φ` and a Gaussian in `l`, so every quantity here has a closed
//! form. Each closed form is paired with a truncated Fourier-sum oracle that
//! is evaluated independently.
//!
//! The crate is `no_std` (it needs `alloc`). IO, parallel sweeps and the CLI
//! live in the `cylosc` crate.
#![no_std]

extern crate alloc;

pub mod angle;
pub mod classical;
mod error;
pub mod grid;
pub mod jumps;
pub mod states;
pub mod theta;

pub use error::{Error, Result};
pub use grid::DensityGrid;
pub use states::{CoherentParams, CylinderPoint, FourierGaussianState, OscillatorConfig};
pub use theta::{ThetaInput, Tolerance};
