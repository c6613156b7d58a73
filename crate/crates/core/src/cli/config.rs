use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::beamprop::{synthetic, FarField, PlaneGrid, SpatialConfig};
use crate::cavityqed::{DeviceContext, EmitterParams, NonlinearMedium};
use crate::constants::DIAMOND_N2;
use crate::dispersion::{
    mode_number, CavityMode, EffectiveIndexCurve, FwmQuartet, MaterialIndex, ModeLabel,
    RingGeometry,
};
use crate::io::read_to_string;
use crate::numeric::Interpolation;
use crate::sweeps::{log_grid, SweepSpec, DEFAULT_P_MAX, DEFAULT_SPATIAL_EFFICIENCY};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// One JSON document drives every subcommand. Lengths are in micrometres
/// unless the field name says otherwise; relative paths resolve against the
/// directory holding the config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub material: MaterialConfig,
    #[serde(default)]
    pub dispersion: DispersionConfig,
    #[serde(default)]
    pub quartet: QuartetConfig,
    #[serde(default)]
    pub emitter: EmitterConfig,
    #[serde(default)]
    pub device: DeviceConfig,
    #[serde(default)]
    pub phasematch: PhasematchConfig,
    #[serde(default)]
    pub efficiency: EfficiencyConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub saturation: SaturationConfig,
    #[serde(default)]
    pub beam: BeamConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    pub r_um: f64,
    pub w_um: f64,
    pub t_cav_um: f64,
    pub d_ref_um: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            r_um: 6.0,
            w_um: 0.75,
            t_cav_um: 0.55,
            d_ref_um: 0.87,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MaterialConfig {
    /// Sellmeier pole file (`B,lambda_um`); the built-in diamond model when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub window_um: (f64, f64),
}

impl Default for MaterialConfig {
    fn default() -> Self {
        Self {
            path: None,
            window_um: (0.3, 6.0),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DispersionConfig {
    /// n_eff table (`lambda_um,n_eff`); the shipped diamond ring table when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub interpolation: Interpolation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuartetConfig {
    pub lambda_sig_um: f64,
    pub lambda_a_um: f64,
    pub lambda_b_um: f64,
}

impl Default for QuartetConfig {
    fn default() -> Self {
        Self {
            lambda_sig_um: 0.615,
            lambda_a_um: 2.095,
            lambda_b_um: 0.750,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EmitterConfig {
    pub tau_e_ns: f64,
    pub r_debye: f64,
    pub r_qe: f64,
    pub lambda_zpl_um: f64,
}

impl Default for EmitterConfig {
    fn default() -> Self {
        let e = EmitterParams::snv();
        Self {
            tau_e_ns: e.tau_e * 1e9,
            r_debye: e.r_debye,
            r_qe: e.r_qe,
            lambda_zpl_um: e.lambda_zpl * 1e6,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeviceConfig {
    pub v_cav_m3: f64,
    pub n2_m2_per_w: f64,
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub alpha_sig: f64,
    pub q_idl: f64,
    /// Detunings (rad/s).
    pub delta_sig: f64,
    pub delta_idl: f64,
    /// Pump phases (rad).
    pub xi_a: f64,
    pub xi_b: f64,
    /// `P_A / P_B` for a given budget.
    pub pump_ratio: f64,
}

impl Default for DeviceConfig {
    fn default() -> Self {
        Self {
            v_cav_m3: 7.3e-19,
            n2_m2_per_w: DIAMOND_N2,
            alpha_a: 1.0,
            alpha_b: 1.0,
            alpha_sig: 0.0,
            q_idl: 7.8,
            delta_sig: 0.0,
            delta_idl: 0.0,
            xi_a: 0.0,
            xi_b: 0.0,
            pump_ratio: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhasematchConfig {
    /// Both pump resonances must fall inside this wavelength window.
    pub pump_window_um: (f64, f64),
}

impl Default for PhasematchConfig {
    fn default() -> Self {
        Self {
            pump_window_um: (0.5, 2.2),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EfficiencyConfig {
    pub q_bar: f64,
    pub p_budget_w: f64,
    /// Overrides `r_Debye * r_QE` when set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_zpl: Option<f64>,
    pub eta_spatial: f64,
    /// Replaces the computed `eta_idler` in the total-efficiency product.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_idler_override: Option<f64>,
}

impl Default for EfficiencyConfig {
    fn default() -> Self {
        Self {
            q_bar: 1e5,
            p_budget_w: 15.2,
            r_zpl: None,
            eta_spatial: 0.21,
            eta_idler_override: None,
        }
    }
}

/// Either explicit values or `{"log_from": a, "log_to": b, "points": n}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Values(Vec<f64>),
    Log {
        log_from: f64,
        log_to: f64,
        points: usize,
    },
    Linear {
        from: f64,
        to: f64,
        points: usize,
    },
}

impl GridSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        match *self {
            GridSpec::Values(ref v) => Ok(v.clone()),
            GridSpec::Log {
                log_from,
                log_to,
                points,
            } => {
                if !(log_from > 0.0 && log_to > log_from) || points == 0 {
                    return Err(Error::invalid(
                        "log grid needs 0 < log_from < log_to and points > 0",
                    ));
                }
                Ok(log_grid(log_from, log_to, points))
            }
            GridSpec::Linear { from, to, points } => {
                if points == 0 || (points > 1 && !(to > from)) {
                    return Err(Error::invalid("linear grid needs from < to and points > 0"));
                }
                if points == 1 {
                    return Ok(vec![from]);
                }
                Ok((0..points)
                    .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub q_bar: Vec<f64>,
    pub r_zpl: Vec<f64>,
    pub p_budget_w: GridSpec,
    pub p_max_w: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            q_bar: vec![1e3, 1e4, 1e5, 1e6],
            r_zpl: vec![0.48],
            p_budget_w: GridSpec::Log {
                log_from: 1e-3,
                log_to: 1e4,
                points: 141,
            },
            p_max_w: DEFAULT_P_MAX,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SaturationConfig {
    pub q_bar: GridSpec,
    pub r_zpl: Vec<f64>,
    pub p_max_w: f64,
    pub eta_spatial: f64,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        Self {
            q_bar: GridSpec::Log {
                log_from: 1e3,
                log_to: 1e6,
                points: 13,
            },
            r_zpl: vec![0.04, 0.24, 0.48, 1.0],
            p_max_w: DEFAULT_P_MAX,
            eta_spatial: DEFAULT_SPATIAL_EFFICIENCY,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FarFieldSource {
    /// CSV with a `<stem>.json` sidecar giving the wavelength.
    File { path: PathBuf },
    /// Radially polarised doughnut of angular width `theta`.
    Radial {
        theta: f64,
        lambda_um: f64,
        samples: usize,
    },
    /// x-polarised Gaussian of angular width `theta`.
    Gaussian {
        theta: f64,
        lambda_um: f64,
        samples: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BeamConfig {
    pub far_field: FarFieldSource,
    pub na: f64,
    pub z_um: GridSpec,
    pub transmission: f64,
    pub plane_half_width_um: f64,
    pub plane_samples: usize,
    pub apply_waveplate: bool,
    pub w0_range_um: (f64, f64),
    pub dz_range_um: (f64, f64),
}

impl Default for BeamConfig {
    fn default() -> Self {
        Self {
            far_field: FarFieldSource::Radial {
                theta: 0.5,
                lambda_um: 1.301,
                samples: 201,
            },
            na: 0.82,
            z_um: GridSpec::Linear {
                from: 0.0,
                to: 20.0,
                points: 9,
            },
            transmission: 0.9,
            plane_half_width_um: 20.0,
            plane_samples: 257,
            apply_waveplate: true,
            w0_range_um: (0.3, 30.0),
            dz_range_um: (-40.0, 40.0),
        }
    }
}

/// A validated configuration with every referenced file loaded.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub config: RunConfig,
    pub base_dir: PathBuf,
    pub geometry: RingGeometry,
    pub material: MaterialIndex,
    pub curve: EffectiveIndexCurve,
    pub quartet: FwmQuartet,
    pub context: DeviceContext,
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn unit(x: f64, name: &str) -> Result<f64> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(Error::invalid(format!(
            "{name} must lie in [0, 1], got {x}"
        )))
    }
}

impl RunConfig {
    pub fn parse(text: &str, source: &Path) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Json {
            path: source.to_path_buf(),
            source: e,
        })?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!(
                "{}: unsupported schema_version {} (expected {SCHEMA_VERSION})",
                source.display(),
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Prepared> {
        let cfg = Self::parse(&read_to_string(path)?, path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        cfg.prepare(&base)
    }

    /// Checks every value and loads every referenced file.
    pub fn prepare(self, base_dir: &Path) -> Result<Prepared> {
        let g = &self.geometry;
        let geometry = RingGeometry::new(
            g.r_um * 1e-6,
            g.w_um * 1e-6,
            g.t_cav_um * 1e-6,
            g.d_ref_um * 1e-6,
        )?;
        let window = (
            self.material.window_um.0 * 1e-6,
            self.material.window_um.1 * 1e-6,
        );
        let material = match &self.material.path {
            Some(p) => {
                let p = resolve(base_dir, p);
                MaterialIndex::from_csv(&read_to_string(&p)?, &p.display().to_string(), window)?
            }
            None => MaterialIndex::diamond(),
        };
        let curve = match &self.dispersion.path {
            Some(p) => {
                let p = resolve(base_dir, p);
                EffectiveIndexCurve::from_csv(
                    &read_to_string(&p)?,
                    &p.display().to_string(),
                    self.dispersion.interpolation,
                )?
            }
            None => EffectiveIndexCurve::diamond_ring_example(),
        };

        let q = &self.quartet;
        let mode = |label, lambda_um: f64| -> Result<CavityMode> {
            let lambda = lambda_um * 1e-6;
            let m = mode_number(&curve, geometry.r, lambda)?.round();
            Ok(CavityMode::new(
                label,
                m as u32,
                lambda,
                curve.n_eff(lambda)?,
            ))
        };
        let quartet = FwmQuartet::from_pumps(
            mode(ModeLabel::Signal, q.lambda_sig_um)?,
            mode(ModeLabel::PumpA, q.lambda_a_um)?,
            mode(ModeLabel::PumpB, q.lambda_b_um)?,
        )?;

        let e = &self.emitter;
        let emitter =
            EmitterParams::new(e.tau_e_ns * 1e-9, e.r_debye, e.r_qe, e.lambda_zpl_um * 1e-6)?;
        let d = &self.device;
        let medium = NonlinearMedium::new(d.n2_m2_per_w, d.v_cav_m3)?;
        let mut context = DeviceContext::new(quartet, &material, medium, emitter)?;
        context.alpha_a = d.alpha_a;
        context.alpha_b = d.alpha_b;
        context.alpha_sig = d.alpha_sig;
        context.q_idl = d.q_idl;
        context.delta_sig = d.delta_sig;
        context.delta_idl = d.delta_idl;
        context.xi_a = d.xi_a;
        context.xi_b = d.xi_b;
        context.validate()?;
        if !(d.alpha_a >= 0.0 && d.alpha_b >= 0.0 && d.alpha_sig >= 0.0) {
            return Err(Error::invalid("coupling ratios alpha must be non-negative"));
        }
        if !(d.pump_ratio > 0.0) {
            return Err(Error::invalid("pump_ratio must be positive"));
        }

        let (lo, hi) = self.phasematch.pump_window_um;
        if !(lo > 0.0 && hi >= lo) {
            return Err(Error::invalid(
                "phasematch.pump_window_um must be positive and ordered",
            ));
        }
        let eff = &self.efficiency;
        if !(eff.q_bar > 0.0) || !(eff.p_budget_w >= 0.0) {
            return Err(Error::invalid(
                "efficiency needs q_bar > 0 and p_budget_w >= 0",
            ));
        }
        unit(eff.eta_spatial, "efficiency.eta_spatial")?;
        if let Some(r) = eff.r_zpl {
            unit(r, "efficiency.r_zpl")?;
        }
        if let Some(x) = eff.eta_idler_override {
            unit(x, "efficiency.eta_idler_override")?;
        }

        let prepared = Prepared {
            config: self,
            base_dir: base_dir.to_path_buf(),
            geometry,
            material,
            curve,
            quartet,
            context,
        };
        prepared.sweep_spec()?;
        prepared.saturation_q()?;
        let s = &prepared.config.saturation;
        if !(s.p_max_w > 0.0) {
            return Err(Error::invalid("saturation.p_max_w must be positive"));
        }
        unit(s.eta_spatial, "saturation.eta_spatial")?;
        for &r in &s.r_zpl {
            unit(r, "saturation.r_zpl")?;
        }
        prepared.spatial_config()?;
        prepared.beam_z()?;
        prepared.far_field()?;
        let b = &prepared.config.beam;
        if !(b.na > 0.0 && b.na <= 1.0) {
            return Err(Error::invalid("beam.na must lie in (0, 1]"));
        }
        unit(b.transmission, "beam.transmission")?;
        Ok(prepared)
    }
}

impl Prepared {
    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        let s = &self.config.sweep;
        let spec = SweepSpec {
            q_bar: s.q_bar.clone(),
            r_zpl: s.r_zpl.clone(),
            p_budget: s.p_budget_w.values()?,
            p_max: s.p_max_w,
            pump_ratio: self.config.device.pump_ratio,
            context: self.context.clone(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn saturation_q(&self) -> Result<Vec<f64>> {
        let q = self.config.saturation.q_bar.values()?;
        if q.is_empty() || q.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::invalid("saturation.q_bar must hold positive values"));
        }
        Ok(q)
    }

    pub fn beam_z(&self) -> Result<Vec<f64>> {
        let z = self.config.beam.z_um.values()?;
        if z.is_empty() {
            return Err(Error::invalid("beam.z_um is empty"));
        }
        Ok(z.into_iter().map(|v| v * 1e-6).collect())
    }

    pub fn spatial_config(&self) -> Result<SpatialConfig> {
        let b = &self.config.beam;
        let cfg = SpatialConfig {
            plane: PlaneGrid::square(b.plane_half_width_um * 1e-6, b.plane_samples)?,
            w0_range: (b.w0_range_um.0 * 1e-6, b.w0_range_um.1 * 1e-6),
            dz_range: (b.dz_range_um.0 * 1e-6, b.dz_range_um.1 * 1e-6),
            apply_waveplate: b.apply_waveplate,
            ..SpatialConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn far_field(&self) -> Result<FarField> {
        let na = self.config.beam.na;
        match &self.config.beam.far_field {
            FarFieldSource::File { path } => FarField::read(&resolve(&self.base_dir, path)),
            FarFieldSource::Radial {
                theta,
                lambda_um,
                samples,
            } => synthetic::radial_far_field(lambda_um * 1e-6, *theta, na.min(1.0), *samples),
            FarFieldSource::Gaussian {
                theta,
                lambda_um,
                samples,
            } => synthetic::gaussian_far_field(lambda_um * 1e-6, *theta, na.min(1.0), *samples),
        }
    }

    pub fn output_dir(&self, cli_out: Option<&Path>) -> PathBuf {
        match (cli_out, &self.config.output_dir) {
            (Some(p), _) => p.to_path_buf(),
            (None, Some(p)) => resolve(&self.base_dir, p),
            (None, None) => PathBuf::from("out"),
        }
    }
}
