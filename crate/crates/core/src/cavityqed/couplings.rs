use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{C0, HBAR};
use crate::{Error, Result};

/// Emitter photophysics. `r_zpl = r_debye * r_qe` is the bulk probability that a
/// decay is radiative into the zero-phonon line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmitterParams {
    /// Bulk radiative lifetime (s).
    pub tau_e: f64,
    pub r_debye: f64,
    pub r_qe: f64,
    /// Zero-phonon-line wavelength (m).
    pub lambda_zpl: f64,
}

impl EmitterParams {
    pub fn new(tau_e: f64, r_debye: f64, r_qe: f64, lambda_zpl: f64) -> Result<Self> {
        let e = Self {
            tau_e,
            r_debye,
            r_qe,
            lambda_zpl,
        };
        e.validate()?;
        Ok(e)
    }

    /// Emitter specified directly by its ZPL fraction (Debye-Waller factor
    /// carries all of it, unit quantum efficiency).
    pub fn with_r_zpl(tau_e: f64, r_zpl: f64, lambda_zpl: f64) -> Result<Self> {
        Self::new(tau_e, r_zpl, 1.0, lambda_zpl)
    }

    /// SnV centre: Debye-Waller 0.6, quantum efficiency 0.8, 4.5 ns lifetime.
    pub fn snv() -> Self {
        Self {
            tau_e: 4.5e-9,
            r_debye: 0.6,
            r_qe: 0.8,
            lambda_zpl: 0.615e-6,
        }
    }

    pub fn r_zpl(&self) -> f64 {
        self.r_debye * self.r_qe
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau_e > 0.0) || !(self.lambda_zpl > 0.0) {
            return Err(Error::invalid(
                "emitter lifetime and wavelength must be positive",
            ));
        }
        if !(0.0..=1.0).contains(&self.r_debye) || !(0.0..=1.0).contains(&self.r_qe) {
            return Err(Error::invalid(
                "Debye-Waller factor and quantum efficiency must lie in [0, 1]",
            ));
        }
        Ok(())
    }
}

/// Waveguide pump injection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpDrive {
    pub p_a: f64,
    pub p_b: f64,
    pub xi_a: f64,
    pub xi_b: f64,
    pub alpha_a: f64,
    pub alpha_b: f64,
}

impl PumpDrive {
    pub fn validate(&self) -> Result<()> {
        if !(self.p_a >= 0.0 && self.p_b >= 0.0) {
            return Err(Error::invalid("pump powers must be non-negative"));
        }
        if !(self.alpha_a >= 0.0 && self.alpha_b >= 0.0) {
            return Err(Error::invalid("pump coupling ratios must be non-negative"));
        }
        Ok(())
    }
}

/// Kerr medium filling the cavity mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearMedium {
    /// Nonlinear refractive index (m^2/W).
    pub n2: f64,
    /// Cavity mode volume (m^3).
    pub v_cav: f64,
}

impl NonlinearMedium {
    pub fn new(n2: f64, v_cav: f64) -> Result<Self> {
        if !(n2 > 0.0 && v_cav > 0.0) {
            return Err(Error::invalid("n2 and V_cav must be strictly positive"));
        }
        Ok(Self { n2, v_cav })
    }

    /// Diamond with the 7.3e-19 m^3 idler mode volume of the 6 um ring.
    pub fn diamond_ring() -> Self {
        Self {
            n2: crate::constants::DIAMOND_N2,
            v_cav: 7.3e-19,
        }
    }
}

/// Intracavity classical pump amplitude, normalised so `|a|^2` is the photon number:
/// `a = -(i e^{i xi} / omega) sqrt(4 alpha P Q_cav / (hbar (alpha + 1)^2))`.
pub fn pump_amplitude(omega: f64, power: f64, q_cav: f64, alpha: f64, xi: f64) -> Complex64 {
    let magnitude = (4.0 * alpha * power * q_cav / (HBAR * (alpha + 1.0).powi(2))).sqrt() / omega;
    -Complex64::i() * Complex64::from_polar(1.0, xi) * magnitude
}

/// Nonlinear coupling strength `2 hbar omega_bar^2 c0 n2 / (n_bar^2 V_cav)` (rad/s)
/// with geometric means over the four modes.
pub fn nonlinear_strength(omegas: [f64; 4], indices: [f64; 4], medium: &NonlinearMedium) -> f64 {
    let omega_bar2 = omegas.iter().product::<f64>().sqrt();
    let n_bar2 = indices.iter().product::<f64>().sqrt();
    2.0 * HBAR * omega_bar2 * C0 * medium.n2 / (n_bar2 * medium.v_cav)
}

/// `g_nl = Delta a_A conj(a_B)`.
pub fn nonlinear_coupling(delta: f64, a_a: Complex64, a_b: Complex64) -> Complex64 {
    delta * a_a * a_b.conj()
}

/// Purcell factor of the signal mode.
pub fn purcell(lambda_sig: f64, n_sig: f64, q_sig_cav: f64, v_cav: f64) -> f64 {
    3.0 / (4.0 * PI) * (lambda_sig / n_sig).powi(3) * q_sig_cav / v_cav
}

/// Emitter-cavity coupling `g_e = (1/2) sqrt(F_p M_sig 2 pi r_zpl / tau_e)` (rad/s).
pub fn emitter_coupling(purcell_factor: f64, m_sig: f64, r_zpl: f64, tau_e: f64) -> f64 {
    0.5 * (purcell_factor * m_sig * 2.0 * PI * r_zpl / tau_e).sqrt()
}

/// Non-ZPL decay rate of the emitter, `2 pi (1 - r_zpl) / tau_e` (rad/s).
pub fn emitter_loss(r_zpl: f64, tau_e: f64) -> f64 {
    2.0 * PI * (1.0 - r_zpl) / tau_e
}

/// Full linewidth `lambda / Q` of a resonance (m).
pub fn idler_linewidth(lambda: f64, q: f64) -> f64 {
    lambda / q
}

/// Quality factor from stored energy and dissipated power, `Q = omega U / P_d`.
pub fn q_from_energy(omega: f64, stored_energy: f64, dissipated_power: f64) -> Result<f64> {
    if !(dissipated_power > 0.0) {
        return Err(Error::UndefinedQuality);
    }
    if !(stored_energy >= 0.0) {
        return Err(Error::invalid("stored energy must be non-negative"));
    }
    Ok(omega * stored_energy / dissipated_power)
}
