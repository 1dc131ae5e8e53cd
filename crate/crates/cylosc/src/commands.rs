//! The four subcommands. Each validates its configuration, evaluates in
//! parallel, then writes rows in order to a single writer.

use std::io::Write;

use cylosc_core::classical::{classical_solution, is_periodic, ClassicalInitial, Periodicity};
use cylosc_core::grid::{periodic_phi_axis, uniform_axis};
use cylosc_core::jumps::{jump_point, JumpCloud};
use cylosc_core::states::{density, trajectory_sample};
use cylosc_core::{CylinderPoint, DensityGrid};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::csv::{self, write_header, write_row};
use crate::error::CliError;

/// Quadrature tolerance used only for the summary line.
const REPORT_NORM_TOL: f64 = 1e-6;

/// What a command writes to stderr after the CSV.
pub type Summary = String;

fn io_err(cfg: &RunConfig) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |source| CliError::Output {
        path: cfg
            .out
            .as_ref()
            .map_or_else(|| "<stdout>".to_owned(), |p| p.display().to_string()),
        source,
    }
}

pub fn density_grid(cfg: &RunConfig) -> Result<DensityGrid, CliError> {
    cfg.check_grid()?;
    cfg.check_time()?;
    let (params, osc, tol) = (cfg.params()?, cfg.oscillator()?, cfg.tolerance()?);
    let (lo, hi) = cfg.l_range()?;
    let phis = periodic_phi_axis(cfg.grid_phi);
    let ls = uniform_axis(lo, hi, cfg.grid_l);
    let rows = phis
        .par_iter()
        .map(|&phi| {
            ls.iter()
                .map(|&l| density(&params, &osc, &CylinderPoint::new(phi, l)?, cfg.t, &tol))
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DensityGrid::from_values(phis, ls, rows.concat(), REPORT_NORM_TOL)?)
}

pub fn density_cmd(cfg: &RunConfig, w: &mut (impl Write + ?Sized)) -> Result<Summary, CliError> {
    let g = density_grid(cfg)?;
    let io = io_err(cfg);
    write_header(w, csv::DENSITY_HEADER).map_err(&io)?;
    for (i, &phi) in g.phi_values().iter().enumerate() {
        for (j, &l) in g.l_values().iter().enumerate() {
            write_row(w, [cfg.t.into(), phi.into(), l.into(), g.get(i, j).into()]).map_err(&io)?;
        }
    }
    Ok(format!(
        "density: {}×{} grid at t = {}, quadrature ∫ρ = {:.12}",
        cfg.grid_phi,
        cfg.grid_l,
        cfg.t,
        g.integral()
    ))
}

pub fn trajectory_cmd(cfg: &RunConfig, w: &mut (impl Write + ?Sized)) -> Result<Summary, CliError> {
    let ts = cfg.time_grid()?;
    let (params, osc, tol) = (cfg.params()?, cfg.oscillator()?, cfg.tolerance()?);
    let samples = ts
        .par_iter()
        .map(|&t| trajectory_sample(&params, &osc, t, &tol))
        .collect::<Result<Vec<_>, _>>()?;
    let io = io_err(cfg);
    write_header(w, csv::TRAJECTORY_HEADER).map_err(&io)?;
    for s in &samples {
        write_row(w, [s.t.into(), s.phi.into(), s.l.into(), s.abs_u.into()]).map_err(&io)?;
    }
    Ok(format!("trajectory: {} samples", samples.len()))
}

pub fn jumps_cmd(cfg: &RunConfig, w: &mut (impl Write + ?Sized)) -> Result<Summary, CliError> {
    cfg.check_jumps()?;
    let (params, osc, tol) = (cfg.params()?, cfg.oscillator()?, cfg.tolerance()?);
    let points = (cfg.k_min..=cfg.k_max)
        .into_par_iter()
        .map(|k| jump_point(&params, &osc, k, cfg.eps, &tol))
        .collect::<Result<Vec<_>, _>>()?;
    let cloud = JumpCloud::from_points(points, &params);
    let io = io_err(cfg);
    write_header(w, csv::JUMPS_HEADER).map_err(&io)?;
    for p in &cloud.points {
        write_row(
            w,
            [
                p.k.into(),
                p.t_star.into(),
                p.phi_minus.into(),
                p.phi_plus.into(),
                p.l.into(),
                p.delta_phi.into(),
            ],
        )
        .map_err(&io)?;
    }
    let mean = cloud
        .circular_mean_phi
        .map_or_else(|| "undefined".to_owned(), |m| format!("{m:.6}"));
    let mut s = format!(
        "jumps: {} points, {} distinct l, circular mean φ {mean} (resultant {:.2e})",
        cloud.points.len(),
        cloud.distinct_l_count(1e-9),
        cloud.resultant_length
    );
    if cloud.non_integer_j {
        s.push_str("; warning: J is not an integer, jumps need not be π");
    }
    Ok(s)
}

pub fn classical_cmd(cfg: &RunConfig, w: &mut (impl Write + ?Sized)) -> Result<Summary, CliError> {
    cfg.check_commensurability()?;
    let ts = cfg.time_grid()?;
    let osc = cfg.oscillator()?;
    let init = ClassicalInitial::new(cfg.alpha, cfg.j, cfg.q, cfg.p).map_err(CliError::Model)?;
    let samples: Vec<_> = ts.par_iter().map(|&t| classical_solution(&init, &osc, t)).collect();
    let io = io_err(cfg);
    write_header(w, csv::CLASSICAL_HEADER).map_err(&io)?;
    for s in &samples {
        write_row(w, [s.t.into(), s.phi.into(), s.l.into(), s.p_l.into(), s.energy.into()]).map_err(&io)?;
    }
    Ok(match is_periodic(&osc, cfg.j, cfg.commensurability_tol, cfg.max_denominator) {
        Periodicity::Periodic { period, turns, oscillations } => format!(
            "classical: periodic, period {period:.12} ({turns} turns, {oscillations} meridian oscillations)"
        ),
        Periodicity::Quasiperiodic => "classical: quasiperiodic".to_owned(),
    })
}
