use serde::Serialize;

use crate::dispersion::ModeLabel;
use crate::{Error, Result};

/// Linear coupling and loss rates of one cavity mode, all in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeRates {
    pub role: ModeLabel,
    pub omega: f64,
    pub q_cav: f64,
    pub alpha: f64,
    /// Intrinsic cavity loss `omega / (2 Q_cav)`.
    pub gamma_cav: f64,
    /// Channel coupling rate.
    pub gamma: f64,
    /// Loss rate.
    pub loss: f64,
    /// Total damping `gamma + loss`.
    pub gamma_bar: f64,
}

/// Fills the channel and loss rates of `role` in units of `Gamma_cav`:
///
/// | role   | channel  | loss          |
/// |--------|----------|---------------|
/// | signal | 0        | 1 + alpha_sig |
/// | pumps  | alpha    | 1             |
/// | idler  | 1        | 0             |
pub fn rates_for(role: ModeLabel, omega: f64, q_cav: f64, alpha: f64) -> Result<ModeRates> {
    if !(q_cav > 0.0) || !(omega > 0.0) {
        return Err(Error::invalid(format!(
            "rates need omega > 0 and Q_cav > 0 (got {omega:e}, {q_cav:e})"
        )));
    }
    if !(alpha >= 0.0) {
        return Err(Error::invalid(format!(
            "bus-coupling ratio must be non-negative (got {alpha})"
        )));
    }
    let gamma_cav = omega / (2.0 * q_cav);
    let (gamma, loss) = match role {
        ModeLabel::Signal => (0.0, (1.0 + alpha) * gamma_cav),
        ModeLabel::PumpA | ModeLabel::PumpB => (alpha * gamma_cav, gamma_cav),
        ModeLabel::Idler => (gamma_cav, 0.0),
    };
    Ok(ModeRates {
        role,
        omega,
        q_cav,
        alpha,
        gamma_cav,
        gamma,
        loss,
        gamma_bar: gamma + loss,
    })
}
