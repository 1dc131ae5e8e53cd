//! Run parameters: built-in defaults, overridden by an optional `key=value`
//! file, overridden by command-line flags.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use cylosc_core::classical::{DEFAULT_COMMENSURABILITY_TOL, DEFAULT_MAX_DENOMINATOR};
use cylosc_core::grid::default_l_range;
use cylosc_core::jumps::DEFAULT_EPS;
use cylosc_core::{CoherentParams, OscillatorConfig, Tolerance};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub omega: f64,
    pub alpha: f64,
    pub j: f64,
    pub q: f64,
    pub p: f64,
    pub tol: f64,
    pub t: f64,
    pub t_max: f64,
    pub dt: f64,
    pub k_min: i64,
    pub k_max: i64,
    pub eps: f64,
    pub grid_phi: usize,
    pub grid_l: usize,
    /// `None` means the window from [`default_l_range`].
    pub l_min: Option<f64>,
    pub l_max: Option<f64>,
    pub commensurability_tol: f64,
    pub max_denominator: u64,
    /// `None` writes to stdout.
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            omega: 1.0,
            alpha: 0.75 * PI,
            j: 1.0,
            q: -0.7,
            p: 0.2,
            tol: Tolerance::DEFAULT_ABS_TOL,
            t: PI,
            t_max: 4.0 * PI,
            dt: 0.01,
            k_min: 0,
            k_max: 999,
            eps: DEFAULT_EPS,
            grid_phi: 256,
            grid_l: 256,
            l_min: None,
            l_max: None,
            commensurability_tol: DEFAULT_COMMENSURABILITY_TOL,
            max_denominator: DEFAULT_MAX_DENOMINATOR,
            out: None,
        }
    }
}

/// Every field optional; `Some` replaces the current value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub omega: Option<f64>,
    pub alpha: Option<f64>,
    pub j: Option<f64>,
    pub q: Option<f64>,
    pub p: Option<f64>,
    pub tol: Option<f64>,
    pub t: Option<f64>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub k_min: Option<i64>,
    pub k_max: Option<i64>,
    pub eps: Option<f64>,
    pub grid_phi: Option<usize>,
    pub grid_l: Option<usize>,
    pub l_min: Option<f64>,
    pub l_max: Option<f64>,
    pub commensurability_tol: Option<f64>,
    pub max_denominator: Option<u64>,
    pub out: Option<PathBuf>,
}

fn parse<T: std::str::FromStr>(v: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| format!("bad value {v:?}: {e}"))
}

impl Overrides {
    /// Sets one field by its flag name (`t-max` and `t_max` are both accepted).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let key = key.replace('_', "-");
        match key.as_str() {
            "omega" => self.omega = Some(parse(value)?),
            "alpha" => self.alpha = Some(parse(value)?),
            "J" => self.j = Some(parse(value)?),
            "q" => self.q = Some(parse(value)?),
            "p" => self.p = Some(parse(value)?),
            "tol" => self.tol = Some(parse(value)?),
            "t" => self.t = Some(parse(value)?),
            "t-max" => self.t_max = Some(parse(value)?),
            "dt" => self.dt = Some(parse(value)?),
            "k-min" => self.k_min = Some(parse(value)?),
            "k-max" => self.k_max = Some(parse(value)?),
            "eps" => self.eps = Some(parse(value)?),
            "grid-phi" => self.grid_phi = Some(parse(value)?),
            "grid-l" => self.grid_l = Some(parse(value)?),
            "l-min" => self.l_min = Some(parse(value)?),
            "l-max" => self.l_max = Some(parse(value)?),
            "commensurability-tol" => self.commensurability_tol = Some(parse(value)?),
            "max-denominator" => self.max_denominator = Some(parse(value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn from_file_contents(path: &Path, text: &str) -> Result<Self, CliError> {
        let mut o = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| CliError::Config {
                path: path.to_owned(),
                line: i + 1,
                msg,
            };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err("expected key=value".into()))?;
            o.set(k.trim(), v.trim()).map_err(err)?;
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigIo {
            path: path.to_owned(),
            source,
        })?;
        Self::from_file_contents(path, &text)
    }
}

impl RunConfig {
    pub fn apply(&mut self, o: Overrides) {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = o.$f { self.$f = v; } )* };
        }
        take!(omega, alpha, j, q, p, tol, t, t_max, dt, k_min, k_max, eps, grid_phi, grid_l);
        take!(commensurability_tol, max_denominator);
        if o.l_min.is_some() {
            self.l_min = o.l_min;
        }
        if o.l_max.is_some() {
            self.l_max = o.l_max;
        }
        if o.out.is_some() {
            self.out = o.out;
        }
    }

    pub fn params(&self) -> Result<CoherentParams, CliError> {
        CoherentParams::new(self.j, self.alpha, self.q, self.p).map_err(CliError::Model)
    }

    pub fn oscillator(&self) -> Result<OscillatorConfig, CliError> {
        OscillatorConfig::new(self.omega).map_err(CliError::Model)
    }

    pub fn tolerance(&self) -> Result<Tolerance, CliError> {
        Tolerance::default().with_abs_tol(self.tol).map_err(CliError::Model)
    }

    /// Meridian window, falling back to the default for whichever end is unset.
    pub fn l_range(&self) -> Result<(f64, f64), CliError> {
        let (lo, hi) = default_l_range(&self.params()?, &self.oscillator()?);
        let (lo, hi) = (self.l_min.unwrap_or(lo), self.l_max.unwrap_or(hi));
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(CliError::Invalid(format!("need l-min < l-max, got {lo} and {hi}")));
        }
        Ok((lo, hi))
    }

    pub fn check_grid(&self) -> Result<(), CliError> {
        if self.grid_phi < 2 || self.grid_l < 2 {
            return Err(CliError::Invalid("grid sizes must be at least 2".into()));
        }
        Ok(())
    }

    /// Sample times `0, dt, 2dt, …` up to `t_max`.
    pub fn time_grid(&self) -> Result<Vec<f64>, CliError> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(CliError::Invalid(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_max.is_finite() && self.t_max >= 0.0) {
            return Err(CliError::Invalid(format!("t-max must be non-negative, got {}", self.t_max)));
        }
        let n = (self.t_max / self.dt * (1.0 + 1e-12)).floor() as usize;
        Ok((0..=n).map(|i| i as f64 * self.dt).collect())
    }

    pub fn check_jumps(&self) -> Result<(), CliError> {
        if self.k_min > self.k_max {
            return Err(CliError::Invalid(format!(
                "need k-min ≤ k-max, got {} and {}",
                self.k_min, self.k_max
            )));
        }
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(CliError::Invalid(format!("eps must be positive, got {}", self.eps)));
        }
        Ok(())
    }

    pub fn check_time(&self) -> Result<(), CliError> {
        if !self.t.is_finite() {
            return Err(CliError::Invalid("t must be finite".into()));
        }
        Ok(())
    }

    pub fn check_commensurability(&self) -> Result<(), CliError> {
        if !(self.commensurability_tol.is_finite() && self.commensurability_tol > 0.0) {
            return Err(CliError::Invalid("commensurability-tol must be positive".into()));
        }
        if self.max_denominator == 0 {
            return Err(CliError::Invalid("max-denominator must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = Overrides::from_file_contents(
            Path::new("run.cfg"),
            "# comment\nomega = 1.62\nt_max=2\n\nJ=2 # trailing\n",
        )
        .unwrap();
        let mut cfg = RunConfig::default();
        cfg.apply(file);
        cfg.apply(Overrides { j: Some(3.0), ..Default::default() });
        assert_eq!((cfg.omega, cfg.t_max, cfg.j, cfg.q), (1.62, 2.0, 3.0, -0.7));
    }

    #[test]
    fn bad_lines_are_located() {
        let e = Overrides::from_file_contents(Path::new("x"), "omega=1\nfoo=2\n").unwrap_err();
        assert!(matches!(e, CliError::Config { line: 2, .. }), "{e}");
        let e = Overrides::from_file_contents(Path::new("x"), "omega\n").unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn time_grid_includes_end() {
        let cfg = RunConfig { t_max: 1.0, dt: 0.1, ..Default::default() };
        let ts = cfg.time_grid().unwrap();
        assert_eq!(ts.len(), 11);
        assert_eq!(ts[0], 0.0);
    }

    #[test]
    fn validation() {
        let bad = [
            RunConfig { grid_phi: 1, ..Default::default() }.check_grid(),
            RunConfig { k_min: 3, k_max: 2, ..Default::default() }.check_jumps(),
            RunConfig { eps: 0.0, ..Default::default() }.check_jumps(),
            RunConfig { l_min: Some(1.0), l_max: Some(1.0), ..Default::default() }.l_range().map(|_| ()),
            RunConfig { dt: -1.0, ..Default::default() }.time_grid().map(|_| ()),
            RunConfig { omega: 0.0, ..Default::default() }.oscillator().map(|_| ()),
        ];
        for r in bad {
            assert_eq!(r.unwrap_err().exit_code(), 2);
        }
    }
}
