use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `Im(tau) <= 0`: the theta series diverges.
    NonConvergent { im_tau: f64 },
    /// The truncation index needed for the requested tolerance exceeds the cap.
    TruncationOverflow { max_terms: u32 },
    InvalidTolerance,
    NonFinite(&'static str),
    /// Oscillator frequency below [`crate::states::MIN_OMEGA`] or not finite.
    InvalidFrequency(f64),
    /// Fourier cutoff too small: the boundary coefficient (relative to the
    /// largest one) exceeds the tolerance.
    CutoffTooSmall { n_max: usize, tail: f64 },
    InvalidGrid(&'static str),
    NotNormalized { integral: f64, tol: f64 },
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonConvergent { im_tau } => {
                write!(f, "theta series does not converge: Im(tau) = {im_tau} <= 0")
            }
            Error::TruncationOverflow { max_terms } => {
                write!(f, "theta truncation needs more than {max_terms} terms")
            }
            Error::InvalidTolerance => f.write_str("tolerance must satisfy abs_tol > 0, max_terms >= 1"),
            Error::NonFinite(what) => write!(f, "{what} must be finite"),
            Error::InvalidFrequency(w) => write!(f, "invalid oscillator frequency {w}"),
            Error::CutoffTooSmall { n_max, tail } => {
                write!(f, "Fourier cutoff {n_max} too small (relative tail coefficient {tail:e})")
            }
            Error::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Error::NotNormalized { integral, tol } => {
                write!(f, "density integrates to {integral}, outside 1 +/- {tol}")
            }
            Error::InvalidArgument(why) => write!(f, "invalid argument: {why}"),
        }
    }
}

impl core::error::Error for Error {}
