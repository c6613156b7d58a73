use crate::numeric::{Interpolation, MonotoneCubic};
use crate::{Error, Result};

use super::MaterialIndex;

const DIAMOND_RING_TABLE: &str = include_str!("../../data/diamond_ring_neff.csv");

/// Tabulated effective index of the confined ring mode versus vacuum wavelength.
#[derive(Debug, Clone)]
pub struct EffectiveIndexCurve {
    lambda: Vec<f64>,
    n_eff: Vec<f64>,
    interpolation: Interpolation,
    interp: MonotoneCubic,
}

impl EffectiveIndexCurve {
    /// `samples` are `(lambda [m], n_eff)` pairs with strictly increasing wavelength.
    pub fn new(samples: &[(f64, f64)], interpolation: Interpolation) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid(
                "effective-index curve needs at least two samples",
            ));
        }
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::invalid(format!(
                    "effective-index wavelengths must be strictly increasing ({:e} then {:e} m)",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(lambda, n) in samples {
            if !(lambda > 0.0) || !(n > 1.0) {
                return Err(Error::invalid(format!(
                    "effective index {n} at {lambda:e} m must exceed 1"
                )));
            }
        }
        let lambda: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let n_eff: Vec<f64> = samples.iter().map(|s| s.1).collect();
        let interp = MonotoneCubic::new(lambda.clone(), n_eff.clone());
        Ok(Self {
            lambda,
            n_eff,
            interpolation,
            interp,
        })
    }

    /// Flat curve used by analytic checks.
    pub fn constant(n_eff: f64, range: (f64, f64)) -> Result<Self> {
        Self::new(&[(range.0, n_eff), (range.1, n_eff)], Interpolation::Linear)
    }

    /// Parses a `lambda_um,n_eff` table.
    pub fn from_csv(text: &str, source_name: &str, interpolation: Interpolation) -> Result<Self> {
        let rows = crate::io::read_numeric_csv(text, source_name, &["lambda_um", "n_eff"])?;
        // Re-run the ordering check here so the error can cite the offending line.
        for (i, w) in rows.windows(2).enumerate() {
            if !(w[1][0] > w[0][0]) {
                return Err(Error::Parse {
                    source_name: source_name.to_string(),
                    line: i as u64 + 3,
                    msg: "lambda_um must be strictly increasing".into(),
                });
            }
        }
        let samples: Vec<(f64, f64)> = rows.iter().map(|r| (r[0] * 1e-6, r[1])).collect();
        Self::new(&samples, interpolation)
    }

    /// Shipped example table for a 6 um radius, 0.75 um wide diamond ring.
    pub fn diamond_ring_example() -> Self {
        Self::from_csv(
            DIAMOND_RING_TABLE,
            "diamond_ring_neff.csv",
            Interpolation::MonotoneCubic,
        )
        .expect("shipped table is valid")
    }

    pub fn range(&self) -> (f64, f64) {
        self.interp.domain()
    }

    pub fn contains(&self, lambda: f64) -> bool {
        let (lo, hi) = self.range();
        lambda >= lo && lambda <= hi
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.lambda.iter().copied().zip(self.n_eff.iter().copied())
    }

    pub fn n_eff(&self, lambda: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if !(lambda >= lo && lambda <= hi) {
            return Err(Error::InterpolationDomain { lambda, lo, hi });
        }
        Ok(match self.interpolation {
            Interpolation::Linear => self.interp.eval_linear(lambda),
            Interpolation::MonotoneCubic => self.interp.eval(lambda),
        })
    }

    /// Checks `n_eff < n_bulk` at every sample.
    pub fn validate_against(&self, material: &MaterialIndex) -> Result<()> {
        for (lambda, n) in self.samples() {
            let bulk = material.bulk_index(lambda)?;
            if n >= bulk {
                return Err(Error::invalid(format!(
                    "effective index {n} at {lambda:e} m is not below the bulk index {bulk}"
                )));
            }
        }
        Ok(())
    }
}
