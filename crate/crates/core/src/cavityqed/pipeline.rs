use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dispersion::{FwmQuartet, MaterialIndex, ModeLabel};
use crate::{Error, Result};

use super::couplings::{
    emitter_coupling, emitter_loss, nonlinear_coupling, nonlinear_strength, pump_amplitude,
    purcell, EmitterParams, NonlinearMedium, PumpDrive,
};
use super::rates::{rates_for, ModeRates};
use super::system::{HamiltonianInputs, EMITTER_EXCITED};
use super::yields::{solve_yields, EfficiencyReport};

/// Everything about the device except the shared cavity quality factor and the
/// pump powers, which are the swept quantities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeviceContext {
    pub quartet: FwmQuartet,
    /// Bulk index at the signal, pump A, pump B and idler wavelengths.
    pub indices: [f64; 4],
    pub medium: NonlinearMedium,
    pub emitter: EmitterParams,
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub alpha_sig: f64,
    /// Intrinsic idler quality factor, held independent of the pump/signal Q.
    pub q_idl: f64,
    pub delta_sig: f64,
    pub delta_idl: f64,
    pub xi_a: f64,
    pub xi_b: f64,
}

/// Intermediate quantities of one device evaluation, kept for traceability.
#[derive(Debug, Clone, Serialize)]
pub struct DeviceEvaluation {
    pub q_bar: f64,
    pub pumps: PumpDrive,
    pub rates: [ModeRates; 4],
    pub purcell: f64,
    pub nonlinear_strength: f64,
    pub a_a: [f64; 2],
    pub a_b: [f64; 2],
    /// Complex `g_nl` before reduction to its magnitude.
    pub g_nl: [f64; 2],
    pub inputs: HamiltonianInputs,
    pub report: EfficiencyReport,
}

impl DeviceEvaluation {
    pub fn g_nl_complex(&self) -> Complex64 {
        Complex64::new(self.g_nl[0], self.g_nl[1])
    }
}

impl DeviceContext {
    /// The 6 um diamond reference ring with an SnV emitter, critically coupled pumps and an
    /// uncoupled signal, on resonance.
    pub fn reference(material: &MaterialIndex) -> Result<Self> {
        Self::new(
            FwmQuartet::reference(),
            material,
            NonlinearMedium::diamond_ring(),
            EmitterParams::snv(),
        )
    }

    pub fn new(
        quartet: FwmQuartet,
        material: &MaterialIndex,
        medium: NonlinearMedium,
        emitter: EmitterParams,
    ) -> Result<Self> {
        let w = quartet.wavelengths();
        let indices = [
            material.bulk_index(w[0])?,
            material.bulk_index(w[1])?,
            material.bulk_index(w[2])?,
            material.bulk_index(w[3])?,
        ];
        Ok(Self {
            quartet,
            indices,
            medium,
            emitter,
            alpha_a: 1.0,
            alpha_b: 1.0,
            alpha_sig: 0.0,
            q_idl: 7.8,
            delta_sig: 0.0,
            delta_idl: 0.0,
            xi_a: 0.0,
            xi_b: 0.0,
        })
    }

    pub fn with_r_zpl(&self, r_zpl: f64) -> Result<Self> {
        let mut next = self.clone();
        next.emitter =
            EmitterParams::with_r_zpl(self.emitter.tau_e, r_zpl, self.emitter.lambda_zpl)?;
        Ok(next)
    }

    pub fn validate(&self) -> Result<()> {
        self.quartet.validate()?;
        self.emitter.validate()?;
        NonlinearMedium::new(self.medium.n2, self.medium.v_cav)?;
        if self.indices.iter().any(|n| !(*n > 1.0)) {
            return Err(Error::invalid("bulk indices must exceed 1"));
        }
        if !(self.q_idl > 0.0) {
            return Err(Error::invalid("idler quality factor must be positive"));
        }
        Ok(())
    }

    pub fn pump_drive(&self, p_a: f64, p_b: f64) -> PumpDrive {
        PumpDrive {
            p_a,
            p_b,
            xi_a: self.xi_a,
            xi_b: self.xi_b,
            alpha_a: self.alpha_a,
            alpha_b: self.alpha_b,
        }
    }

    /// All rates and couplings at shared intrinsic quality factor `q_bar` under `pumps`.
    pub fn trace(&self, q_bar: f64, pumps: &PumpDrive) -> Result<DeviceEvaluation> {
        pumps.validate()?;
        let q = &self.quartet;
        let rates = [
            rates_for(ModeLabel::Signal, q.sig.omega, q_bar, self.alpha_sig)?,
            rates_for(ModeLabel::PumpA, q.a.omega, q_bar, pumps.alpha_a)?,
            rates_for(ModeLabel::PumpB, q.b.omega, q_bar, pumps.alpha_b)?,
            rates_for(ModeLabel::Idler, q.idl.omega, self.q_idl, 0.0)?,
        ];
        let a_a = pump_amplitude(q.a.omega, pumps.p_a, q_bar, pumps.alpha_a, pumps.xi_a);
        let a_b = pump_amplitude(q.b.omega, pumps.p_b, q_bar, pumps.alpha_b, pumps.xi_b);
        let delta = nonlinear_strength(q.omegas(), self.indices, &self.medium);
        let g_nl = nonlinear_coupling(delta, a_a, a_b);

        let m_sig = rates[0].loss;
        let f_p = purcell(q.sig.lambda, self.indices[0], q_bar, self.medium.v_cav);
        let r_zpl = self.emitter.r_zpl();
        let inputs = HamiltonianInputs {
            g_e: emitter_coupling(f_p, m_sig, r_zpl, self.emitter.tau_e),
            g_nl: g_nl.norm(),
            m_e: emitter_loss(r_zpl, self.emitter.tau_e),
            m_sig,
            gamma_idl: rates[3].gamma,
            delta_sig: self.delta_sig,
            delta_idl: self.delta_idl,
        };
        let report = solve_yields(&inputs, EMITTER_EXCITED)?;
        Ok(DeviceEvaluation {
            q_bar,
            pumps: *pumps,
            rates,
            purcell: f_p,
            nonlinear_strength: delta,
            a_a: [a_a.re, a_a.im],
            a_b: [a_b.re, a_b.im],
            g_nl: [g_nl.re, g_nl.im],
            inputs,
            report,
        })
    }

    pub fn evaluate(&self, q_bar: f64, p_a: f64, p_b: f64) -> Result<EfficiencyReport> {
        Ok(self.trace(q_bar, &self.pump_drive(p_a, p_b))?.report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_matrix_entries() {
        let ctx = DeviceContext::reference(&MaterialIndex::diamond()).unwrap();
        let ev = ctx.trace(1e5, &ctx.pump_drive(7.6, 7.6)).unwrap();
        let i = ev.inputs;
        // M_sig = omega_sig / 2e5 = 3.0629e15 / 2e5
        assert!(
            (i.m_sig - 1.5314e10).abs() / 1.5314e10 < 1e-3,
            "{}",
            i.m_sig
        );
        // Gamma_idl = omega_idl / 15.6 with lambda_idl = 1.2987 um
        assert!(
            (i.gamma_idl - 9.298e13).abs() / 9.298e13 < 1e-3,
            "{}",
            i.gamma_idl
        );
        assert!((i.m_e - 7.2606e8).abs() / 7.2606e8 < 1e-4);
        assert!((ev.purcell - 540.7).abs() < 1.0, "{}", ev.purcell);
        assert!((i.g_e - 3.72e10).abs() / 3.72e10 < 0.01, "{}", i.g_e);
        assert!((i.g_nl - 1.2e13).abs() / 1.2e13 < 0.08, "{}", i.g_nl);
        assert!(ev.report.is_conserving());
    }

    #[test]
    fn pump_phases_do_not_change_yields() {
        let mut ctx = DeviceContext::reference(&MaterialIndex::diamond()).unwrap();
        let base = ctx.evaluate(1e5, 3.0, 3.0).unwrap();
        ctx.xi_a = 0.7;
        ctx.xi_b = -2.1;
        let rotated = ctx.evaluate(1e5, 3.0, 3.0).unwrap();
        assert!((base.eta_idler - rotated.eta_idler).abs() < 1e-13);
    }

    #[test]
    fn no_pump_no_idler() {
        let ctx = DeviceContext::reference(&MaterialIndex::diamond()).unwrap();
        let r = ctx.evaluate(1e5, 0.0, 0.0).unwrap();
        assert!(r.eta_idler.abs() < 1e-15);
        assert!(r.beta > 0.0 && r.beta < 1.0);
    }
}
