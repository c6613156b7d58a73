//! Pump-budget and quality-factor sweeps of the device pipeline, and the
//! search for the saturating pump budget.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cavityqed::{DeviceContext, EfficiencyReport, ReportFlag};
use crate::io::{CsvTable, Num};
use crate::numeric::golden_section_max;
use crate::{Error, Result};

/// Spatial overlap achieved by the optimised free-space collection.
pub const DEFAULT_SPATIAL_EFFICIENCY: f64 = 0.66;
pub const DEFAULT_P_MAX: f64 = 1e4;

const SATURATION_GRID: usize = 40;
const SATURATION_P_MIN: f64 = 1e-3;
const SATURATION_TOL: f64 = 1e-3;

pub const SWEEP_HEADER: [&str; 9] = [
    "Q_cav",
    "r_ZPL",
    "P_budget_W",
    "g_nl",
    "eta_idler",
    "beta",
    "eta_emitter",
    "eta_signal_loss",
    "flag",
];

/// Splits a budget `P = 2 sqrt(P_A P_B)` into pump powers with `P_A / P_B = ratio`.
pub fn split_budget(p_budget: f64) -> (f64, f64) {
    split_budget_ratio(p_budget, 1.0)
}

pub fn split_budget_ratio(p_budget: f64, ratio: f64) -> (f64, f64) {
    let s = ratio.sqrt();
    (0.5 * p_budget * s, 0.5 * p_budget / s)
}

/// `eta = eta_spatial * eta_idler`.
pub fn total_efficiency(eta_idler: f64, eta_spatial: f64) -> f64 {
    eta_idler * eta_spatial
}

/// Fraction of the total loss `1 - eta` that is due to the emitter, `(1 - beta) / (1 - eta)`.
pub fn loss_ratio(beta: f64, eta: f64) -> Result<f64> {
    if !(eta < 1.0) {
        return Err(Error::invalid(format!(
            "loss ratio needs eta < 1, got {eta}"
        )));
    }
    Ok((1.0 - beta) / (1.0 - eta))
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub q_bar: Vec<f64>,
    pub r_zpl: Vec<f64>,
    pub p_budget: Vec<f64>,
    #[serde(default = "default_p_max")]
    pub p_max: f64,
    /// `P_A / P_B`; 1 is the symmetric split.
    #[serde(default = "default_ratio")]
    pub pump_ratio: f64,
    pub context: DeviceContext,
}

fn default_p_max() -> f64 {
    DEFAULT_P_MAX
}

fn default_ratio() -> f64 {
    1.0
}

fn check_grid(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::invalid(format!("{name} grid is empty")));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid(format!(
            "{name} grid has non-finite entries"
        )));
    }
    if v.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!(
            "{name} grid must be strictly increasing"
        )));
    }
    Ok(())
}

impl SweepSpec {
    pub fn new(
        q_bar: Vec<f64>,
        r_zpl: Vec<f64>,
        p_budget: Vec<f64>,
        context: DeviceContext,
    ) -> Result<Self> {
        let s = Self {
            q_bar,
            r_zpl,
            p_budget,
            p_max: DEFAULT_P_MAX,
            pump_ratio: 1.0,
            context,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_grid("Q", &self.q_bar)?;
        check_grid("r_ZPL", &self.r_zpl)?;
        check_grid("P_budget", &self.p_budget)?;
        if self.q_bar[0] <= 0.0 {
            return Err(Error::invalid("Q values must be positive"));
        }
        if self.r_zpl[0] < 0.0 || self.r_zpl[self.r_zpl.len() - 1] > 1.0 {
            return Err(Error::invalid("r_ZPL values must lie in [0, 1]"));
        }
        if !(self.p_max > 0.0) {
            return Err(Error::invalid("P_max must be positive"));
        }
        if self.p_budget[0] < 0.0 || self.p_budget[self.p_budget.len() - 1] > self.p_max {
            return Err(Error::invalid(format!(
                "P_budget values must lie in [0, {}]",
                self.p_max
            )));
        }
        if !(self.pump_ratio > 0.0 && self.pump_ratio.is_finite()) {
            return Err(Error::invalid("pump ratio must be positive"));
        }
        self.context.validate()
    }

    pub fn len(&self) -> usize {
        self.q_bar.len() * self.r_zpl.len() * self.p_budget.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid point `i` in lexicographic (Q, r_ZPL, P_budget) order.
    fn point(&self, i: usize) -> (f64, f64, f64) {
        let np = self.p_budget.len();
        let nr = self.r_zpl.len();
        (
            self.q_bar[i / (nr * np)],
            self.r_zpl[(i / np) % nr],
            self.p_budget[i % np],
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    DegenerateFallback,
    /// The point could not be evaluated; yields are NaN.
    Failed,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::DegenerateFallback => "degenerate_fallback",
            RowStatus::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub q_bar: f64,
    pub r_zpl: f64,
    pub p_budget: f64,
    pub g_nl: f64,
    pub report: EfficiencyReport,
    pub status: RowStatus,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn eta_idler(&self) -> f64 {
        self.report.eta_idler
    }

    pub fn beta(&self) -> f64 {
        self.report.beta
    }
}

/// One device evaluation at `(q_bar, r_zpl, p_budget)`.
pub fn evaluate_point(
    ctx: &DeviceContext,
    q_bar: f64,
    r_zpl: f64,
    p_budget: f64,
    ratio: f64,
) -> Result<(f64, EfficiencyReport)> {
    let ctx = ctx.with_r_zpl(r_zpl)?;
    let (p_a, p_b) = split_budget_ratio(p_budget, ratio);
    let ev = ctx.trace(q_bar, &ctx.pump_drive(p_a, p_b))?;
    Ok((ev.inputs.g_nl, ev.report))
}

fn row(spec: &SweepSpec, i: usize) -> SweepRow {
    let (q_bar, r_zpl, p_budget) = spec.point(i);
    match evaluate_point(&spec.context, q_bar, r_zpl, p_budget, spec.pump_ratio) {
        Ok((g_nl, report)) => SweepRow {
            q_bar,
            r_zpl,
            p_budget,
            g_nl,
            report,
            status: match report.flag {
                ReportFlag::Ok => RowStatus::Ok,
                ReportFlag::DegenerateFallback => RowStatus::DegenerateFallback,
            },
            error: None,
        },
        Err(e) => SweepRow {
            q_bar,
            r_zpl,
            p_budget,
            g_nl: f64::NAN,
            report: EfficiencyReport {
                eta_idler: f64::NAN,
                beta: f64::NAN,
                eta_emitter: f64::NAN,
                eta_signal_loss: f64::NAN,
                flag: ReportFlag::Ok,
            },
            status: RowStatus::Failed,
            error: Some(e.to_string()),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    /// Rayon's current pool.
    Parallel,
}

/// Evaluates every grid point in parallel; rows come back in lexicographic grid order.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    sweep_with(spec, Execution::Parallel)
}

pub fn sweep_with(spec: &SweepSpec, exec: Execution) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(match exec {
        Execution::Serial => (0..spec.len()).map(|i| row(spec, i)).collect(),
        Execution::Parallel => (0..spec.len())
            .into_par_iter()
            .map(|i| row(spec, i))
            .collect(),
    })
}

pub fn sweep_table(rows: &[SweepRow]) -> CsvTable {
    let mut t = CsvTable::new(&SWEEP_HEADER);
    for r in rows {
        t.push([
            Num(r.q_bar).to_string(),
            Num(r.r_zpl).to_string(),
            Num(r.p_budget).to_string(),
            Num(r.g_nl).to_string(),
            Num(r.report.eta_idler).to_string(),
            Num(r.report.beta).to_string(),
            Num(r.report.eta_emitter).to_string(),
            Num(r.report.eta_signal_loss).to_string(),
            r.status.as_str().to_string(),
        ]);
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaturationResult {
    pub q_bar: f64,
    pub r_zpl: f64,
    pub p_star: f64,
    pub eta_star: f64,
    pub beta_star: f64,
    /// The maximum sits at `P_max`, so the true saturation point lies beyond the cap.
    pub at_boundary: bool,
    /// `eta(P* * 1.01)` and `eta(P* / 1.01)` do not exceed `eta_star`.
    pub confirmed: bool,
    /// Local maxima seen on the coarse grid.
    pub grid_maxima: usize,
}

/// Maximiser of `eta_idler` over `P_budget in (0, P_max]`: a coarse log grid,
/// then golden-section refinement in `ln P` around every local grid maximum.
pub fn find_saturation(
    q_bar: f64,
    r_zpl: f64,
    ctx: &DeviceContext,
    p_max: f64,
) -> Result<SaturationResult> {
    find_saturation_ratio(q_bar, r_zpl, ctx, p_max, 1.0)
}

pub fn find_saturation_ratio(
    q_bar: f64,
    r_zpl: f64,
    ctx: &DeviceContext,
    p_max: f64,
    ratio: f64,
) -> Result<SaturationResult> {
    if !(p_max > 0.0) {
        return Err(Error::invalid("P_max must be positive"));
    }
    let ctx = ctx.with_r_zpl(r_zpl)?;
    let eval = |p: f64| -> Result<EfficiencyReport> {
        let (p_a, p_b) = split_budget_ratio(p, ratio);
        ctx.evaluate(q_bar, p_a, p_b)
    };
    let p_lo = SATURATION_P_MIN.min(p_max * 1e-3);
    let grid = log_grid(p_lo, p_max, SATURATION_GRID);
    let reports = grid.iter().map(|&p| eval(p)).collect::<Result<Vec<_>>>()?;
    let eta: Vec<f64> = reports.iter().map(|r| r.eta_idler).collect();

    let n = grid.len();
    let peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = i == 0 || eta[i] > eta[i - 1];
            let right = i == n - 1 || eta[i] >= eta[i + 1];
            left && right
        })
        .collect();

    let mut best = (grid[0], reports[0]);
    for (&p, r) in grid.iter().zip(&reports) {
        if r.eta_idler > best.1.eta_idler {
            best = (p, *r);
        }
    }
    for &i in &peaks {
        if i == n - 1 {
            continue;
        }
        let a = grid[i.saturating_sub(1)].ln();
        let b = grid[i + 1].ln();
        let g = golden_section_max(
            |x| {
                eval(x.exp())
                    .map(|r| r.eta_idler)
                    .unwrap_or(f64::NEG_INFINITY)
            },
            a,
            b,
            SATURATION_TOL,
        );
        let p = g.x.exp().min(p_max);
        if g.value > best.1.eta_idler {
            best = (p, eval(p)?);
        }
    }

    let (p_star, at_star) = best;
    let at_boundary = p_star >= p_max * (1.0 - 1e-12);
    let below = eval(p_star / 1.01)?.eta_idler <= at_star.eta_idler;
    let above = at_boundary || eval((p_star * 1.01).min(p_max))?.eta_idler <= at_star.eta_idler;
    Ok(SaturationResult {
        q_bar,
        r_zpl,
        p_star,
        eta_star: at_star.eta_idler,
        beta_star: at_star.beta,
        at_boundary,
        confirmed: below && above,
        grid_maxima: peaks.len(),
    })
}

/// Saturation point for every `(Q, r_ZPL)` pair, in lexicographic order.
pub fn saturation_grid(
    q_bar: &[f64],
    r_zpl: &[f64],
    ctx: &DeviceContext,
    p_max: f64,
    exec: Execution,
) -> Result<Vec<SaturationResult>> {
    check_grid("Q", q_bar)?;
    check_grid("r_ZPL", r_zpl)?;
    let nr = r_zpl.len();
    let one = |i: usize| find_saturation(q_bar[i / nr], r_zpl[i % nr], ctx, p_max);
    match exec {
        Execution::Serial => (0..q_bar.len() * nr).map(one).collect(),
        Execution::Parallel => (0..q_bar.len() * nr).into_par_iter().map(one).collect(),
    }
}

pub const SATURATION_HEADER: [&str; 9] = [
    "Q_cav",
    "r_ZPL",
    "P_star_W",
    "eta_star",
    "beta_star",
    "eta_total",
    "loss_ratio",
    "at_boundary",
    "confirmed",
];

pub fn saturation_table(results: &[SaturationResult], eta_spatial: f64) -> CsvTable {
    let mut t = CsvTable::new(&SATURATION_HEADER);
    for s in results {
        let eta = total_efficiency(s.eta_star, eta_spatial);
        let ratio = loss_ratio(s.beta_star, eta).unwrap_or(f64::NAN);
        t.push([
            Num(s.q_bar).to_string(),
            Num(s.r_zpl).to_string(),
            Num(s.p_star).to_string(),
            Num(s.eta_star).to_string(),
            Num(s.beta_star).to_string(),
            Num(eta).to_string(),
            Num(ratio).to_string(),
            s.at_boundary.to_string(),
            s.confirmed.to_string(),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::MaterialIndex;
    use proptest::prelude::*;

    fn ctx() -> DeviceContext {
        DeviceContext::reference(&MaterialIndex::diamond()).unwrap()
    }

    #[test]
    fn budget_split() {
        assert_eq!(split_budget(15.2), (7.6, 7.6));
        assert_eq!(split_budget(0.0), (0.0, 0.0));
        let (a, b) = split_budget_ratio(10.0, 4.0);
        assert!((a / b - 4.0).abs() < 1e-12);
        assert!((2.0 * (a * b).sqrt() - 10.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn split_round_trips(p in 0.0f64..1e4, ratio in 0.01f64..100.0) {
            let (a, b) = split_budget_ratio(p, ratio);
            prop_assert!((2.0 * (a * b).sqrt() - p).abs() <= 1e-12 * p.max(1.0));
        }
    }

    #[test]
    fn headline_products() {
        assert!((total_efficiency(0.853, 0.21) - 0.18).abs() < 0.005);
        assert!((total_efficiency(0.853, 0.66) - 0.56).abs() < 0.005);
        assert_eq!(total_efficiency(0.0, 0.66), 0.0);
    }

    #[test]
    fn loss_ratio_limits() {
        assert_eq!(loss_ratio(1.0, 0.3).unwrap(), 0.0);
        assert!((loss_ratio(0.4, 0.4).unwrap() - 1.0).abs() < 1e-15);
        assert!(loss_ratio(0.5, 1.0).is_err());
    }

    #[test]
    fn grid_order_is_lexicographic() {
        let spec = SweepSpec::new(
            vec![1e4, 1e5],
            vec![0.24, 0.48],
            vec![0.0, 1.0, 10.0],
            ctx(),
        )
        .unwrap();
        let rows = sweep(&spec).unwrap();
        assert_eq!(rows.len(), 12);
        assert_eq!(
            (rows[0].q_bar, rows[0].r_zpl, rows[0].p_budget),
            (1e4, 0.24, 0.0)
        );
        assert_eq!(
            (rows[4].q_bar, rows[4].r_zpl, rows[4].p_budget),
            (1e4, 0.48, 1.0)
        );
        assert_eq!(
            (rows[11].q_bar, rows[11].r_zpl, rows[11].p_budget),
            (1e5, 0.48, 10.0)
        );
        for r in &rows {
            assert!(r.report.is_conserving());
        }
    }

    #[test]
    fn zero_budget_row_has_no_idler() {
        let spec = SweepSpec::new(vec![1e5], vec![0.48], vec![0.0], ctx()).unwrap();
        let r = &sweep(&spec).unwrap()[0];
        assert_eq!(r.eta_idler(), 0.0);
        assert!(r.beta() > 0.0 && r.beta() < 1.0);
    }

    #[test]
    fn invalid_grids_rejected() {
        assert!(SweepSpec::new(vec![], vec![0.5], vec![1.0], ctx()).is_err());
        assert!(SweepSpec::new(vec![1e5, 1e4], vec![0.5], vec![1.0], ctx()).is_err());
        assert!(SweepSpec::new(vec![1e5], vec![0.5], vec![2e4], ctx()).is_err());
    }

    #[test]
    fn saturation_beats_its_grid() {
        let c = ctx();
        let s = find_saturation(1e5, 0.48, &c, 1e4).unwrap();
        assert!(s.confirmed);
        assert!(!s.at_boundary);
        assert!(s.eta_star <= s.beta_star);
        for p in log_grid(1e-3, 1e4, 40) {
            assert!(
                c.with_r_zpl(0.48)
                    .unwrap()
                    .evaluate(1e5, p / 2.0, p / 2.0)
                    .unwrap()
                    .eta_idler
                    <= s.eta_star + 1e-12
            );
        }
    }

    #[test]
    fn small_cap_reports_boundary() {
        let s = find_saturation(1e5, 0.48, &ctx(), 0.5).unwrap();
        assert!(s.at_boundary);
        assert_eq!(s.p_star, 0.5);
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-3, 1e4, 40);
        assert_eq!(g.len(), 40);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[39], 1e4);
    }
}
