use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cylosc::commands::{classical_cmd, density_cmd, jumps_cmd, trajectory_cmd, Summary};
use cylosc::{CliError, Overrides, RunConfig};

/// Harmonic oscillator on a cylinder in coherent states.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// File of `key=value` lines (flag names without dashes); flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability density on a (φ, l) grid: `t,phi,l,p`.
    Density {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long)]
        grid_phi: Option<usize>,
        #[arg(long)]
        grid_l: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        l_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        l_max: Option<f64>,
    },
    /// Mean trajectory `Arg⟨U⟩`, `⟨l⟩`: `t,phi,l,absU`.
    Trajectory {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        times: Times,
    },
    /// Jump points at `t* = (2k+1)π`: `k,t_star,phi_minus,phi_plus,l,delta_phi`.
    Jumps {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        k_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        k_max: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<f64>,
    },
    /// Classical orbit from `φ₀ = α`, `l₀ = q`, `p₀ = p`: `t,phi,l,p_l,energy`.
    Classical {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        times: Times,
        #[arg(long, allow_hyphen_values = true)]
        commensurability_tol: Option<f64>,
        #[arg(long)]
        max_denominator: Option<u64>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long = "J", allow_hyphen_values = true)]
    j: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Absolute truncation tolerance of the theta series.
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<f64>,
    /// Output CSV path; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Times {
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<f64>,
}

impl Common {
    fn overrides(self) -> Overrides {
        Overrides {
            omega: self.omega,
            alpha: self.alpha,
            j: self.j,
            q: self.q,
            p: self.p,
            tol: self.tol,
            out: self.out,
            ..Default::default()
        }
    }
}

type Runner = fn(&RunConfig, &mut dyn Write) -> Result<Summary, CliError>;

fn split(command: Command) -> (Overrides, Runner) {
    match command {
        Command::Density { common, t, grid_phi, grid_l, l_min, l_max } => (
            Overrides { t, grid_phi, grid_l, l_min, l_max, ..common.overrides() },
            |c, w| density_cmd(c, w),
        ),
        Command::Trajectory { common, times } => (
            Overrides { t_max: times.t_max, dt: times.dt, ..common.overrides() },
            |c, w| trajectory_cmd(c, w),
        ),
        Command::Jumps { common, k_min, k_max, eps } => (
            Overrides { k_min, k_max, eps, ..common.overrides() },
            |c, w| jumps_cmd(c, w),
        ),
        Command::Classical { common, times, commensurability_tol, max_denominator } => (
            Overrides {
                t_max: times.t_max,
                dt: times.dt,
                commensurability_tol,
                max_denominator,
                ..common.overrides()
            },
            |c, w| classical_cmd(c, w),
        ),
    }
}

fn run(cli: Cli) -> Result<Summary, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply(Overrides::from_file(path)?);
    }
    let (flags, runner) = split(cli.command);
    cfg.apply(flags);
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::Output {
                path: path.display().to_string(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            let summary = runner(&cfg, &mut w)?;
            w.flush().map_err(|source| CliError::Output {
                path: path.display().to_string(),
                source,
            })?;
            Ok(summary)
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            let summary = runner(&cfg, &mut w)?;
            w.flush().map_err(|source| CliError::Output {
                path: "<stdout>".into(),
                source,
            })?;
            Ok(summary)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(summary) => {
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cylosc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
