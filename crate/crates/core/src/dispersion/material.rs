use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One Sellmeier term `B lambda^2 / (lambda^2 - lambda_0^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SellmeierPole {
    pub b: f64,
    /// Resonance wavelength in micrometres, the unit the coefficients are tabulated in.
    pub lambda_um: f64,
}

/// Bulk refractive index model `n^2 = 1 + sum_i B_i lambda^2 / (lambda^2 - lambda_i^2)`
/// restricted to a validity window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialIndex {
    poles: Vec<SellmeierPole>,
    window: (f64, f64),
}

const DIAMOND_POLES: &str = include_str!("../../data/diamond_sellmeier.csv");

const WINDOW_CHECK_SAMPLES: usize = 512;

impl MaterialIndex {
    /// Builds the model and checks that the index is real, above one and
    /// non-increasing over the window.
    pub fn new(poles: Vec<SellmeierPole>, window: (f64, f64)) -> Result<Self> {
        let (lo, hi) = window;
        if poles.is_empty() {
            return Err(Error::invalid("material needs at least one Sellmeier pole"));
        }
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::invalid(format!(
                "invalid material window [{lo:e}, {hi:e}] m"
            )));
        }
        for p in &poles {
            if !(p.b.is_finite() && p.b >= 0.0 && p.lambda_um >= 0.0) {
                return Err(Error::invalid(format!("invalid Sellmeier pole {p:?}")));
            }
            if p.lambda_um * 1e-6 >= lo {
                return Err(Error::invalid(format!(
                    "Sellmeier pole at {} um lies inside or above the window start",
                    p.lambda_um
                )));
            }
        }
        let material = Self { poles, window };
        let mut prev = f64::INFINITY;
        for i in 0..=WINDOW_CHECK_SAMPLES {
            let lambda = lo + (hi - lo) * i as f64 / WINDOW_CHECK_SAMPLES as f64;
            let n = material.eval(lambda);
            if !(n.is_finite() && n > 1.0) {
                return Err(Error::invalid(format!(
                    "index {n} at {lambda:e} m is not a real index above 1"
                )));
            }
            if n > prev {
                return Err(Error::invalid(format!(
                    "index increases near {lambda:e} m (anomalous dispersion)"
                )));
            }
            prev = n;
        }
        Ok(material)
    }

    /// Two-pole diamond model over 0.3-6 um, coefficients read from the shipped data file.
    pub fn diamond() -> Self {
        let poles = parse_poles(DIAMOND_POLES, "diamond_sellmeier.csv")
            .expect("shipped diamond table parses");
        Self::new(poles, (0.3e-6, 6.0e-6)).expect("shipped diamond table is valid")
    }

    /// Reads a `B,lambda_um` table.
    pub fn from_csv(text: &str, source_name: &str, window: (f64, f64)) -> Result<Self> {
        Self::new(parse_poles(text, source_name)?, window)
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn poles(&self) -> &[SellmeierPole] {
        &self.poles
    }

    /// Index in the long-wavelength limit, `sqrt(1 + sum B_i)`.
    pub fn static_limit(&self) -> f64 {
        (1.0 + self.poles.iter().map(|p| p.b).sum::<f64>()).sqrt()
    }

    /// Bulk index at vacuum wavelength `lambda` (m).
    pub fn bulk_index(&self, lambda: f64) -> Result<f64> {
        let (lo, hi) = self.window;
        if !(lambda >= lo && lambda <= hi) {
            return Err(Error::OutOfWindow { lambda, lo, hi });
        }
        Ok(self.eval(lambda))
    }

    fn eval(&self, lambda: f64) -> f64 {
        let l2 = (lambda * 1e6).powi(2);
        let n2 = 1.0
            + self
                .poles
                .iter()
                .map(|p| p.b * l2 / (l2 - p.lambda_um * p.lambda_um))
                .sum::<f64>();
        n2.sqrt()
    }
}

fn parse_poles(text: &str, source_name: &str) -> Result<Vec<SellmeierPole>> {
    let rows = crate::io::read_numeric_csv(text, source_name, &["B", "lambda_um"])?;
    Ok(rows
        .into_iter()
        .map(|r| SellmeierPole {
            b: r[0],
            lambda_um: r[1],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    // Direct evaluation of the two-pole form at 0.615 um:
    // l2 = 0.378225; 0.3306*l2/(l2-0.030625) = 0.359727; 4.3356*l2/(l2-0.011236) = 4.468342;
    // n = sqrt(5.828069) = 2.414139.
    #[test]
    fn diamond_at_signal_wavelength() {
        let n = MaterialIndex::diamond().bulk_index(0.615e-6).unwrap();
        assert!((n - 2.414139).abs() < 1e-6, "{n}");
    }

    #[test]
    fn diamond_long_wavelength_limit() {
        let m = MaterialIndex::diamond();
        let limit = (1.0f64 + 0.3306 + 4.3356).sqrt();
        assert!((m.static_limit() - limit).abs() < 1e-15);
        assert!((limit - 2.380).abs() < 1e-3);
        let n = m.bulk_index(6.0e-6).unwrap();
        assert!(n > limit && n - limit < 2e-3);
    }

    #[test]
    fn below_window_is_a_domain_error() {
        let err = MaterialIndex::diamond().bulk_index(0.2e-6).unwrap_err();
        assert!(matches!(err, Error::OutOfWindow { .. }));
        assert!(err.to_string().contains("3e-7"));
    }

    #[test]
    fn rejects_pole_inside_window() {
        let poles = vec![SellmeierPole {
            b: 1.0,
            lambda_um: 0.5,
        }];
        assert!(MaterialIndex::new(poles, (0.3e-6, 6e-6)).is_err());
    }

    #[test]
    fn csv_errors_cite_lines() {
        let err =
            MaterialIndex::from_csv("B,lambda_um\n0.33,0.175\nx,0.1\n", "m.csv", (0.3e-6, 6e-6))
                .unwrap_err();
        assert!(err.to_string().starts_with("m.csv:3"), "{err}");
    }
}
