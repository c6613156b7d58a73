use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::Prepared;
use crate::beamprop::{focus_plane, optimize_spatial};
use crate::dispersion::{competing_process_scan, out_of_plane_phase, solve_fpm, FwmQuartet};
use crate::io::svg::{heatmap, LinePlot, Series};
use crate::io::{write_manifest, write_string, CsvTable, Manifest, Num};
use crate::sweeps::{
    find_saturation_ratio, saturation_table, split_budget_ratio, sweep_table, sweep_with,
    total_efficiency, Execution, SaturationResult, SWEEP_HEADER,
};
use crate::Result;

/// Output files written by a command, relative to the output directory.
#[derive(Debug, Clone, Default)]
pub struct Outputs {
    pub dir: PathBuf,
    pub files: Vec<String>,
}

impl Outputs {
    fn new(dir: &Path) -> Self {
        Self {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        }
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        write_string(&self.dir.join(name), contents)?;
        self.files.push(name.to_string());
        Ok(())
    }

    fn finish<C: Serialize>(mut self, command: &str, config: &C) -> Result<Self> {
        let name = format!("{command}.manifest.json");
        let manifest = Manifest::new(command, config, self.files.clone())?;
        write_manifest(&self.dir.join(&name), &manifest)?;
        self.files.push(name);
        Ok(self)
    }
}

#[derive(Serialize)]
struct Echo<'a> {
    #[serde(flatten)]
    config: &'a super::config::RunConfig,
    seed: u64,
}

pub const QUARTET_HEADER: [&str; 12] = [
    "lambda_sig_um",
    "lambda_a_um",
    "lambda_b_um",
    "lambda_idl_um",
    "m_sig",
    "m_a",
    "m_b",
    "n_eff_sig",
    "n_eff_a",
    "n_eff_b",
    "out_of_plane_phase_rad",
    "exceeds_pi",
];

pub fn quartet_table(p: &Prepared, quartets: &[FwmQuartet]) -> Result<CsvTable> {
    let mut t = CsvTable::new(&QUARTET_HEADER);
    for q in quartets {
        let n_idl = p.material.bulk_index(q.idl.lambda)?;
        let phase = out_of_plane_phase(&p.geometry, n_idl, q.idl.lambda);
        t.push([
            Num(q.sig.lambda / 1e-6).to_string(),
            Num(q.a.lambda / 1e-6).to_string(),
            Num(q.b.lambda / 1e-6).to_string(),
            Num(q.idl.lambda / 1e-6).to_string(),
            q.sig.m.to_string(),
            q.a.m.to_string(),
            q.b.m.to_string(),
            Num(q.sig.n_eff).to_string(),
            Num(q.a.n_eff).to_string(),
            Num(q.b.n_eff).to_string(),
            Num(phase.radians).to_string(),
            phase.exceeds_pi.to_string(),
        ]);
    }
    Ok(t)
}

/// All phase-matched pump splits of the configured signal with both pumps in the window.
pub fn cmd_phasematch(p: &Prepared, out: &Path, seed: u64) -> Result<Outputs> {
    let (lo, hi) = p.config.phasematch.pump_window_um;
    let quartets = solve_fpm(
        &p.curve,
        p.geometry.r,
        &p.quartet.sig,
        (lo * 1e-6, hi * 1e-6),
    )?;
    let mut o = Outputs::new(out);
    o.write("quartets.csv", quartet_table(p, &quartets)?.as_str())?;
    println!(
        "{} phase-matched quartets with pumps in [{lo}, {hi}] um",
        quartets.len()
    );
    o.finish(
        "phasematch",
        &Echo {
            config: &p.config,
            seed,
        },
    )
}

pub fn cmd_efficiency(p: &Prepared, out: &Path, seed: u64) -> Result<Outputs> {
    let e = &p.config.efficiency;
    let ctx = match e.r_zpl {
        Some(r) => p.context.with_r_zpl(r)?,
        None => p.context.clone(),
    };
    let (p_a, p_b) = split_budget_ratio(e.p_budget_w, p.config.device.pump_ratio);
    let ev = ctx.trace(e.q_bar, &ctx.pump_drive(p_a, p_b))?;
    let r = ev.report;
    let eta_idler = e.eta_idler_override.unwrap_or(r.eta_idler);
    let eta = total_efficiency(eta_idler, e.eta_spatial);

    let mut t = CsvTable::new(&SWEEP_HEADER);
    t.push([
        Num(e.q_bar).to_string(),
        Num(ctx.emitter.r_zpl()).to_string(),
        Num(e.p_budget_w).to_string(),
        Num(ev.inputs.g_nl).to_string(),
        Num(r.eta_idler).to_string(),
        Num(r.beta).to_string(),
        Num(r.eta_emitter).to_string(),
        Num(r.eta_signal_loss).to_string(),
        r.flag.as_str().to_string(),
    ]);
    let mut o = Outputs::new(out);
    o.write("efficiency.csv", t.as_str())?;
    let mut summary = CsvTable::new(&["eta_idler", "eta_spatial", "eta"]);
    summary.push([Num(eta_idler), Num(e.eta_spatial), Num(eta)]);
    o.write("efficiency_total.csv", summary.as_str())?;
    println!("eta_idler = {:.6}", r.eta_idler);
    println!("beta      = {:.6}", r.beta);
    if e.eta_idler_override.is_some() {
        println!("eta_idler override = {eta_idler}");
    }
    println!("eta       = {:.6} (eta_spatial = {})", eta, e.eta_spatial);
    o.finish(
        "efficiency",
        &Echo {
            config: &p.config,
            seed,
        },
    )
}

fn sweep_plot(rows: &[crate::sweeps::SweepRow], title: &str) -> String {
    let mut series = Vec::new();
    let mut keys: Vec<(f64, f64)> = rows.iter().map(|r| (r.q_bar, r.r_zpl)).collect();
    keys.dedup();
    for (q, rz) in keys {
        let pick = |f: fn(&crate::sweeps::SweepRow) -> f64| -> Vec<(f64, f64)> {
            rows.iter()
                .filter(|r| r.q_bar == q && r.r_zpl == rz && r.p_budget > 0.0)
                .map(|r| (r.p_budget, f(r)))
                .collect()
        };
        series.push(Series::new(
            format!("eta Q={q:e} r={rz}"),
            pick(|r| r.report.eta_idler),
        ));
        series.push(Series::new(format!("beta Q={q:e}"), pick(|r| r.report.beta)).dashed());
    }
    LinePlot {
        title: title.into(),
        x_label: "pump budget (W)".into(),
        y_label: "probability".into(),
        log_x: true,
        series,
    }
    .render()
}

pub fn cmd_sweep(p: &Prepared, out: &Path, seed: u64, exec: Execution) -> Result<Outputs> {
    let spec = p.sweep_spec()?;
    let rows = sweep_with(&spec, exec)?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    let mut o = Outputs::new(out);
    o.write("sweep.csv", sweep_table(&rows).as_str())?;
    o.write(
        "sweep.svg",
        &sweep_plot(&rows, "eta_idler (solid) and beta (dashed) vs pump budget"),
    )?;
    println!("{} sweep rows, {failed} failed", rows.len());
    o.finish(
        "sweep",
        &Echo {
            config: &p.config,
            seed,
        },
    )
}

pub fn cmd_saturation(p: &Prepared, out: &Path, seed: u64, exec: Execution) -> Result<Outputs> {
    let s = &p.config.saturation;
    let q = p.saturation_q()?;
    let nr = s.r_zpl.len();
    let one = |i: usize| -> Result<SaturationResult> {
        find_saturation_ratio(
            q[i / nr],
            s.r_zpl[i % nr],
            &p.context,
            s.p_max_w,
            p.config.device.pump_ratio,
        )
    };
    let results: Vec<SaturationResult> = match exec {
        Execution::Serial => (0..q.len() * nr).map(one).collect::<Result<_>>()?,
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..q.len() * nr)
                .into_par_iter()
                .map(one)
                .collect::<Result<_>>()?
        }
    };
    let mut o = Outputs::new(out);
    o.write(
        "saturation.csv",
        saturation_table(&results, s.eta_spatial).as_str(),
    )?;
    let series = s
        .r_zpl
        .iter()
        .map(|&rz| {
            Series::new(
                format!("r_ZPL={rz}"),
                results
                    .iter()
                    .filter(|r| r.r_zpl == rz)
                    .map(|r| (r.q_bar, r.eta_star))
                    .collect(),
            )
        })
        .collect();
    let plot = LinePlot {
        title: "saturated eta_idler vs Q".into(),
        x_label: "Q".into(),
        y_label: "eta_idler at saturation".into(),
        log_x: true,
        series,
    };
    o.write("saturation.svg", &plot.render())?;
    for r in &results {
        println!(
            "Q={:e} r_ZPL={} P*={:.4} W eta*={:.4} beta*={:.4}{}",
            r.q_bar,
            r.r_zpl,
            r.p_star,
            r.eta_star,
            r.beta_star,
            if r.at_boundary { " (at P_max)" } else { "" }
        );
    }
    o.finish(
        "saturation",
        &Echo {
            config: &p.config,
            seed,
        },
    )
}

pub fn cmd_beam(p: &Prepared, out: &Path, seed: u64) -> Result<Outputs> {
    let b = &p.config.beam;
    let field = p.far_field()?;
    let cfg = p.spatial_config()?;
    let z = p.beam_z()?;
    let opt = optimize_spatial(&field, b.na, &z, b.transmission, &cfg)?;

    let mut planes = CsvTable::new(&["z_p_um", "w0_um", "dz_p_um", "overlap"]);
    for f in &opt.planes {
        planes.push([
            Num(f.z_p * 1e6),
            Num(f.w0 * 1e6),
            Num(f.dz * 1e6),
            Num(f.overlap),
        ]);
    }
    let focus = focus_plane(&field, b.na, &cfg.plane, opt.best.z_p, cfg.apply_waveplate)?;
    let mut o = Outputs::new(out);
    o.write("beam_planes.csv", planes.as_str())?;
    o.write("beam_field.csv", focus.to_csv().as_str())?;
    let g = &cfg.plane;
    let extent = (
        g.x.at(0) * 1e6,
        g.x.at(g.x.n - 1) * 1e6,
        g.y.at(0) * 1e6,
        g.y.at(g.y.n - 1) * 1e6,
    );
    let title = format!("|E|^2 at z_p = {:.2} um", opt.best.z_p * 1e6);
    o.write(
        "beam_field.svg",
        &heatmap(&title, &focus.intensity(), g.x.n, g.y.n, extent, "um", 128),
    )?;
    let mut summary = CsvTable::new(&[
        "captured_fraction",
        "z_p_um",
        "w0_um",
        "dz_p_um",
        "overlap",
        "transmission",
        "eta_spatial",
    ]);
    summary.push([
        Num(opt.captured_fraction),
        Num(opt.best.z_p * 1e6),
        Num(opt.best.w0 * 1e6),
        Num(opt.best.dz * 1e6),
        Num(opt.best.overlap),
        Num(b.transmission),
        Num(opt.eta_spatial),
    ]);
    o.write("beam_summary.csv", summary.as_str())?;
    println!(
        "captured fraction at NA {}: {:.4}",
        b.na, opt.captured_fraction
    );
    println!(
        "best plane z_p = {:.3} um: w0 = {:.3} um, dz_p = {:.3} um, overlap = {:.4}, eta_spatial = {:.4}",
        opt.best.z_p * 1e6,
        opt.best.w0 * 1e6,
        opt.best.dz * 1e6,
        opt.best.overlap,
        opt.eta_spatial
    );
    o.finish(
        "beam",
        &Echo {
            config: &p.config,
            seed,
        },
    )
}

/// Spurious four-wave-mixing channels competing with the main conversion.
pub fn cmd_noise(p: &Prepared, out: &Path, seed: u64) -> Result<Outputs> {
    let procs = competing_process_scan(&p.quartet, &p.curve, &p.material, p.geometry.r)?;
    let mut t = CsvTable::new(&[
        "process",
        "lambda_signal_um",
        "lambda_partner_um",
        "delta_k_per_um",
        "coherence_length_um",
        "frequency_weight",
        "extrapolated",
    ]);
    for c in &procs {
        t.push([
            c.kind.label().to_string(),
            Num(c.lambda_signal / 1e-6).to_string(),
            Num(c.lambda_partner / 1e-6).to_string(),
            Num(c.delta_k * 1e-6).to_string(),
            Num(c.coherence_length / 1e-6).to_string(),
            Num(c.frequency_weight).to_string(),
            c.extrapolated.to_string(),
        ]);
        println!(
            "{:<22} {:.4} um + {:.4} um: L = {:.3} um{}",
            c.kind.label(),
            c.lambda_signal * 1e6,
            c.lambda_partner * 1e6,
            c.coherence_length * 1e6,
            if c.extrapolated {
                " (bulk-index partner)"
            } else {
                ""
            }
        );
    }
    let mut o = Outputs::new(out);
    o.write("competing.csv", t.as_str())?;
    o.finish(
        "noise",
        &Echo {
            config: &p.config,
            seed,
        },
    )
}
