use serde::Serialize;

use std::f64::consts::PI;

use crate::constants::{omega_from_wavelength, wavelength_from_omega};
use crate::Result;

use super::{resonant_wavelength, EffectiveIndexCurve, FwmQuartet, MaterialIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessKind {
    /// The designed FFWM process itself.
    Main,
    /// Same frequencies with pump A co-propagating (symmetric injection),
    /// momentum sum `m_sig + m_A - m_B`.
    CoPropagatingPumps,
    /// Spontaneous FWM `2 omega_B -> omega_sig' + omega_x`.
    DegenerateB,
    /// Spontaneous FWM `omega_A + omega_B -> omega_sig' + omega_x`.
    PumpPair,
}

impl ProcessKind {
    pub fn label(self) -> &'static str {
        match self {
            ProcessKind::Main => "main",
            ProcessKind::CoPropagatingPumps => "co_propagating_pumps",
            ProcessKind::DegenerateB => "2B->sig'+x",
            ProcessKind::PumpPair => "A+B->sig'+x",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompetingProcess {
    pub kind: ProcessKind,
    /// Wavelength of the spurious signal-band photon (m).
    pub lambda_signal: f64,
    /// Wavelength of the photon generated alongside it (m).
    pub lambda_partner: f64,
    /// In-plane mismatch `sum_i c_i n_eff,i p_i k_0,i` (rad/m).
    pub delta_k: f64,
    /// `pi / |delta_k|`, infinite when exactly phase matched (m).
    pub coherence_length: f64,
    /// `omega_bar^2` of this process relative to the main one.
    pub frequency_weight: f64,
    /// The partner wavelength fell outside the n_eff table and its in-plane
    /// momentum was taken from the bulk index.
    pub extrapolated: bool,
}

/// Phase mismatch, coherence length and relative coupling weight of the
/// designed process and the competing processes it can seed in the signal band.
///
/// Resonant cavity modes contribute exactly `m / r` of in-plane momentum. The
/// spurious signal-band photon sits in the resonance adjacent to the signal
/// (`m_sig - 1`); its partner is placed by energy conservation and takes its
/// momentum from the n_eff table, or from the bulk index when off-table.
pub fn competing_process_scan(
    quartet: &FwmQuartet,
    curve: &EffectiveIndexCurve,
    material: &MaterialIndex,
    r: f64,
) -> Result<Vec<CompetingProcess>> {
    let [w_sig, w_a, w_b, w_idl] = quartet.omegas();
    let main_weight = (w_sig * w_a * w_b * w_idl).sqrt();
    let (m_sig, m_a, m_b) = (quartet.sig.m as i64, quartet.a.m as i64, quartet.b.m as i64);

    let finish = |kind, lambda_signal, lambda_partner, delta_k: f64, weight: f64, extrapolated| {
        CompetingProcess {
            kind,
            lambda_signal,
            lambda_partner,
            delta_k,
            coherence_length: if delta_k == 0.0 {
                f64::INFINITY
            } else {
                PI / delta_k.abs()
            },
            frequency_weight: weight / main_weight,
            extrapolated,
        }
    };

    let mut out = vec![
        finish(
            ProcessKind::Main,
            quartet.sig.lambda,
            quartet.idl.lambda,
            (m_sig - m_a - m_b) as f64 / r,
            main_weight,
            false,
        ),
        finish(
            ProcessKind::CoPropagatingPumps,
            quartet.sig.lambda,
            quartet.idl.lambda,
            (m_sig + m_a - m_b) as f64 / r,
            main_weight,
            false,
        ),
    ];

    let m_adj = quartet.sig.m.saturating_sub(1);
    let lambda_adj = resonant_wavelength(curve, r, m_adj)?;
    let w_adj = omega_from_wavelength(lambda_adj);

    let in_plane_k = |lambda: f64| -> Result<(f64, bool)> {
        match curve.n_eff(lambda) {
            Ok(n) => Ok((2.0 * PI * n / lambda, false)),
            Err(_) => Ok((2.0 * PI * material.bulk_index(lambda)? / lambda, true)),
        }
    };

    let spurious = [
        (ProcessKind::DegenerateB, 2.0 * w_b, 2 * m_b, w_b * w_b),
        (ProcessKind::PumpPair, w_a + w_b, m_a + m_b, w_a * w_b),
    ];
    for (kind, w_in, m_in, w_in_product) in spurious {
        let w_x = w_in - w_adj;
        if !(w_x > 0.0) {
            continue;
        }
        let lambda_x = wavelength_from_omega(w_x);
        let (k_x, extrapolated) = in_plane_k(lambda_x)?;
        let delta_k = (m_in - m_adj as i64) as f64 / r - k_x;
        let weight = (w_in_product * w_adj * w_x).sqrt();
        out.push(finish(
            kind,
            lambda_adj,
            lambda_x,
            delta_k,
            weight,
            extrapolated,
        ));
    }
    Ok(out)
}
