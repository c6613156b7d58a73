use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

pub type CoefficientMatrix = Matrix3<Complex64>;

/// Initial state with the emitter excited and both cavity modes empty.
pub const EMITTER_EXCITED: [f64; 3] = [1.0, 0.0, 0.0];

/// Rates (rad/s) entering the coupled-amplitude matrix. Couplings are stored
/// as magnitudes: their phases can be absorbed into the signal and idler
/// amplitudes without changing any `|c_j|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct HamiltonianInputs {
    pub g_e: f64,
    pub g_nl: f64,
    pub m_e: f64,
    pub m_sig: f64,
    pub gamma_idl: f64,
    pub delta_sig: f64,
    pub delta_idl: f64,
}

impl HamiltonianInputs {
    pub fn validate(&self) -> Result<()> {
        let rates = [self.g_e, self.g_nl, self.m_e, self.m_sig, self.gamma_idl];
        if rates.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return Err(Error::invalid(format!(
                "rates must be finite and non-negative: {self:?}"
            )));
        }
        if !(self.delta_sig.is_finite() && self.delta_idl.is_finite()) {
            return Err(Error::invalid("detunings must be finite"));
        }
        Ok(())
    }
}

/// ```text
///     | M_e/2    i g_e                 0                   |
/// A = | i g_e    M_sig/2 + i D_sig     i g_nl              |
///     | 0        i g_nl                Gamma_idl/2 + i D_idl |
/// ```
pub fn build_matrix(inputs: &HamiltonianInputs) -> CoefficientMatrix {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let zero = c(0.0, 0.0);
    Matrix3::new(
        c(inputs.m_e / 2.0, 0.0),
        c(0.0, inputs.g_e),
        zero,
        c(0.0, inputs.g_e),
        c(inputs.m_sig / 2.0, inputs.delta_sig),
        c(0.0, inputs.g_nl),
        zero,
        c(0.0, inputs.g_nl),
        c(inputs.gamma_idl / 2.0, inputs.delta_idl),
    )
}

pub(crate) fn initial_state(c0: [f64; 3]) -> Vector3<Complex64> {
    Vector3::new(c0[0].into(), c0[1].into(), c0[2].into())
}
