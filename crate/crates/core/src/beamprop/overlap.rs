use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{FarField, PlaneGrid, TransversePlaneField};
use super::polarization::s_waveplate;
use super::propagate::{clip_na, debye_wolf};
use crate::numeric::golden_section_max;
use crate::{Error, Result};

/// Fundamental Gaussian whose waist lies `dz` past the evaluation plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianBeamSpec {
    pub w0: f64,
    pub dz: f64,
    pub lambda: f64,
}

impl GaussianBeamSpec {
    pub fn new(w0: f64, dz: f64, lambda: f64) -> Result<Self> {
        if !(w0 > 0.0) || !(lambda > 0.0) || !dz.is_finite() {
            return Err(Error::invalid(
                "Gaussian beam needs w0 > 0, lambda > 0 and finite dz",
            ));
        }
        Ok(Self { w0, dz, lambda })
    }

    pub fn rayleigh_range(&self) -> f64 {
        std::f64::consts::PI * self.w0 * self.w0 / self.lambda
    }

    /// `(q0 / q) exp(i k rho^2 / (2 q))` with `q = -dz - i z_R`; carries the
    /// curvature and Gouy phase at distance `-dz` from the waist.
    pub fn field_at(&self, rho2: f64) -> Complex64 {
        let k = 2.0 * std::f64::consts::PI / self.lambda;
        let zr = self.rayleigh_range();
        let q = Complex64::new(-self.dz, -zr);
        let q0 = Complex64::new(0.0, -zr);
        q0 / q * (Complex64::new(0.0, k) * rho2 / (2.0 * q)).exp()
    }
}

/// Precomputed `E_x^*`, `rho^2` and total power of a plane field.
struct OverlapTarget {
    ex_conj: Vec<Complex64>,
    rho2: Vec<f64>,
    power: f64,
    da: f64,
}

impl OverlapTarget {
    fn new(field: &TransversePlaneField) -> Result<Self> {
        let power = field.power();
        if !(power > 0.0) {
            return Err(Error::ZeroPower);
        }
        let rho2 = (0..field.e.len())
            .map(|i| {
                let (x, y) = field.xy(i);
                x * x + y * y
            })
            .collect();
        Ok(Self {
            ex_conj: field.e.iter().map(|v| v[0].conj()).collect(),
            rho2,
            power,
            da: field.grid.da(),
        })
    }

    fn overlap(&self, spec: &GaussianBeamSpec) -> f64 {
        let mut cross = Complex64::new(0.0, 0.0);
        let mut gg = 0.0;
        for (e, &r2) in self.ex_conj.iter().zip(&self.rho2) {
            let g = spec.field_at(r2);
            cross += e * g;
            gg += g.norm_sqr();
        }
        let gg = gg * self.da;
        if !(gg > 0.0) {
            return 0.0;
        }
        ((cross * self.da).norm_sqr() / (self.power * gg)).min(1.0)
    }
}

/// `|int E_x^* E_g dA|^2 / (int |E|^2 dA int |E_g|^2 dA)`, with all three
/// field components in the denominator.
pub fn gaussian_overlap(field: &TransversePlaneField, spec: &GaussianBeamSpec) -> Result<f64> {
    Ok(OverlapTarget::new(field)?.overlap(spec))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpatialConfig {
    pub plane: PlaneGrid,
    /// Search interval for the Gaussian waist (m).
    pub w0_range: (f64, f64),
    /// Search interval for the waist offset (m).
    pub dz_range: (f64, f64),
    pub tolerance: f64,
    pub max_sweeps: usize,
    /// Apply the S-waveplate after focusing. Disable for fields that are
    /// already linearly polarised.
    pub apply_waveplate: bool,
}

impl Default for SpatialConfig {
    fn default() -> Self {
        Self {
            plane: PlaneGrid::square(20e-6, 257).expect("static grid"),
            w0_range: (0.3e-6, 30e-6),
            dz_range: (-40e-6, 40e-6),
            tolerance: 1e-4,
            max_sweeps: 60,
            apply_waveplate: true,
        }
    }
}

impl SpatialConfig {
    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.w0_range;
        if !(a > 0.0 && b > a) {
            return Err(Error::invalid("w0 range must be positive and increasing"));
        }
        if !(self.dz_range.1 > self.dz_range.0) {
            return Err(Error::invalid("dz range must be increasing"));
        }
        if !(self.tolerance > 0.0) || self.max_sweeps == 0 {
            return Err(Error::invalid(
                "optimizer needs a positive tolerance and at least one sweep",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneFit {
    pub z_p: f64,
    pub w0: f64,
    pub dz: f64,
    pub overlap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpatialOptimum {
    pub best: PlaneFit,
    pub eta_spatial: f64,
    /// Power fraction inside the NA.
    pub captured_fraction: f64,
    pub planes: Vec<PlaneFit>,
}

/// Best Gaussian `(w0, dz)` for one plane field by coordinate descent with a
/// golden-section line search on each coordinate (`w0` in log scale).
pub fn fit_gaussian(
    field: &TransversePlaneField,
    lambda: f64,
    cfg: &SpatialConfig,
) -> Result<PlaneFit> {
    cfg.validate()?;
    let target = OverlapTarget::new(field)?;
    let eval = |w0: f64, dz: f64| target.overlap(&GaussianBeamSpec { w0, dz, lambda });

    // Start from the second-moment width of the intensity.
    let total: f64 = field.intensity().iter().sum();
    let m2: f64 = field
        .intensity()
        .iter()
        .zip(&target.rho2)
        .map(|(i, r)| i * r)
        .sum::<f64>()
        / total;
    let (lo, hi) = cfg.w0_range;
    let mut w0 = (2.0 * m2).sqrt().clamp(lo, hi);
    let mut dz = 0.0f64.clamp(cfg.dz_range.0, cfg.dz_range.1);
    let mut best = eval(w0, dz);
    let line_tol = cfg.tolerance * 0.1;
    for _ in 0..cfg.max_sweeps {
        let prev = (w0, dz, best);
        let g = golden_section_max(|lw| eval(lw.exp(), dz), lo.ln(), hi.ln(), line_tol);
        if g.value > best {
            w0 = g.x.exp();
            best = g.value;
        }
        let span = cfg.dz_range.1 - cfg.dz_range.0;
        let g = golden_section_max(
            |d| eval(w0, d),
            cfg.dz_range.0,
            cfg.dz_range.1,
            line_tol * span,
        );
        if g.value > best {
            dz = g.x;
            best = g.value;
        }
        let zr = std::f64::consts::PI * w0 * w0 / lambda;
        let moved = ((w0 - prev.0) / w0).abs() + ((dz - prev.1) / zr).abs();
        if best - prev.2 <= cfg.tolerance * best.max(1e-300) && moved <= cfg.tolerance {
            break;
        }
    }
    Ok(PlaneFit {
        z_p: field.z,
        w0,
        dz,
        overlap: best,
    })
}

/// Clips to `na`, focuses onto each plane in `z_values`, optionally applies the
/// S-waveplate and fits a Gaussian. The best plane wins, the smallest `z_p` on
/// ties; `eta_spatial = transmission * overlap`.
pub fn optimize_spatial(
    field: &FarField,
    na: f64,
    z_values: &[f64],
    transmission: f64,
    cfg: &SpatialConfig,
) -> Result<SpatialOptimum> {
    cfg.validate()?;
    if z_values.is_empty() {
        return Err(Error::invalid("no focal planes to search"));
    }
    if !(0.0..=1.0).contains(&transmission) {
        return Err(Error::invalid("transmission must lie in [0, 1]"));
    }
    let (clipped, captured_fraction) = clip_na(field, na)?;
    let planes = z_values
        .par_iter()
        .map(|&z| {
            let plane = debye_wolf(&clipped, &cfg.plane, z)?;
            let plane = if cfg.apply_waveplate {
                s_waveplate(&plane)
            } else {
                plane
            };
            fit_gaussian(&plane, field.lambda, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = planes[0];
    for p in &planes[1..] {
        if p.overlap > best.overlap || (p.overlap == best.overlap && p.z_p < best.z_p) {
            best = *p;
        }
    }
    Ok(SpatialOptimum {
        best,
        eta_spatial: transmission * best.overlap,
        captured_fraction,
        planes,
    })
}

/// Focal-plane field after the waveplate, for plotting and export.
pub fn focus_plane(
    field: &FarField,
    na: f64,
    grid: &PlaneGrid,
    z: f64,
    apply_waveplate: bool,
) -> Result<TransversePlaneField> {
    let (clipped, _) = clip_na(field, na)?;
    let plane = debye_wolf(&clipped, grid, z)?;
    Ok(if apply_waveplate {
        s_waveplate(&plane)
    } else {
        plane
    })
}
