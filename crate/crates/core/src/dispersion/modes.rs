use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::omega_from_wavelength;
use crate::numeric::bisect;
use crate::{Error, Result};

use super::EffectiveIndexCurve;

/// Relative tolerance on `omega_sig + omega_A - omega_B - omega_idl = 0`.
pub const FREQUENCY_TOLERANCE: f64 = 1e-9;

/// Ring radius, width, thickness and reflector gap (m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingGeometry {
    pub r: f64,
    pub w: f64,
    pub t_cav: f64,
    pub d_ref: f64,
}

impl RingGeometry {
    pub fn new(r: f64, w: f64, t_cav: f64, d_ref: f64) -> Result<Self> {
        let g = Self { r, w, t_cav, d_ref };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.r, self.w, self.t_cav, self.d_ref];
        if all.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::invalid(format!(
                "ring geometry fields must be positive: {self:?}"
            )));
        }
        if self.r <= self.w / 2.0 {
            return Err(Error::invalid(
                "ring radius must exceed half the ring width",
            ));
        }
        Ok(())
    }

    /// r = 6 um, w = 0.75 um, t_cav = 0.55 um, d_ref = 0.87 um.
    pub fn reference() -> Self {
        Self {
            r: 6.0e-6,
            w: 0.75e-6,
            t_cav: 0.55e-6,
            d_ref: 0.87e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeLabel {
    Signal,
    PumpA,
    PumpB,
    Idler,
}

impl ModeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeLabel::Signal => "sig",
            ModeLabel::PumpA => "A",
            ModeLabel::PumpB => "B",
            ModeLabel::Idler => "idl",
        }
    }

    /// Sign `c` of the mode in the Bragg-scattering energy balance.
    pub fn interaction_sign(self) -> Sign {
        match self {
            ModeLabel::Signal | ModeLabel::PumpA => Sign::Plus,
            ModeLabel::PumpB | ModeLabel::Idler => Sign::Minus,
        }
    }

    /// Propagation direction `p` that turns the in-plane momentum sum into
    /// `m_sig - m_A - m_B`: pump A counter-propagates against signal and pump B.
    pub fn propagation(self) -> Sign {
        match self {
            ModeLabel::PumpA => Sign::Minus,
            _ => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One optical resonance taking part in the mixing process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityMode {
    pub label: ModeLabel,
    /// Azimuthal mode number; zero for the out-of-plane idler.
    pub m: u32,
    /// Vacuum wavelength (m).
    pub lambda: f64,
    /// Angular frequency (rad/s), always `2 pi c0 / lambda`.
    pub omega: f64,
    pub p: Sign,
    pub c: Sign,
    /// In-plane effective index, so that `n_eff k_0 = m / r`; zero for the idler.
    pub n_eff: f64,
}

impl CavityMode {
    /// Mode with the default sign conventions for `label`.
    pub fn new(label: ModeLabel, m: u32, lambda: f64, n_eff: f64) -> Self {
        Self {
            label,
            m,
            lambda,
            omega: omega_from_wavelength(lambda),
            p: label.propagation(),
            c: label.interaction_sign(),
            n_eff,
        }
    }

    /// Resonant mode `m` of `curve` on a ring of radius `r`.
    pub fn resonant(label: ModeLabel, curve: &EffectiveIndexCurve, r: f64, m: u32) -> Result<Self> {
        let lambda = resonant_wavelength(curve, r, m)?;
        Ok(Self::new(label, m, lambda, curve.n_eff(lambda)?))
    }
}

/// Signal, two pumps and the generated idler.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FwmQuartet {
    pub sig: CavityMode,
    pub a: CavityMode,
    pub b: CavityMode,
    pub idl: CavityMode,
}

impl FwmQuartet {
    pub fn new(sig: CavityMode, a: CavityMode, b: CavityMode, idl: CavityMode) -> Result<Self> {
        let q = Self { sig, a, b, idl };
        q.validate()?;
        Ok(q)
    }

    /// Builds the quartet from the signal and pumps, placing the idler at
    /// `omega_sig + omega_A - omega_B` with `m_idl = 0`.
    pub fn from_pumps(sig: CavityMode, a: CavityMode, b: CavityMode) -> Result<Self> {
        let omega_idl = sig.omega + a.omega - b.omega;
        if !(omega_idl > 0.0) {
            return Err(Error::invalid(
                "pump frequencies leave no positive idler frequency",
            ));
        }
        let lambda_idl = crate::constants::wavelength_from_omega(omega_idl);
        let mut idl = CavityMode::new(ModeLabel::Idler, 0, lambda_idl, 0.0);
        idl.omega = omega_idl;
        Self::new(sig, a, b, idl)
    }

    /// The quartet of the 6 um diamond ring: m = 143/28/115 at 0.615/2.095/0.750 um,
    /// in-plane indices fixed by the resonance condition.
    pub fn reference() -> Self {
        let r = RingGeometry::reference().r;
        let mode = |label, m: u32, lambda: f64| {
            CavityMode::new(label, m, lambda, m as f64 * lambda / (2.0 * PI * r))
        };
        Self::from_pumps(
            mode(ModeLabel::Signal, 143, 0.615e-6),
            mode(ModeLabel::PumpA, 28, 2.095e-6),
            mode(ModeLabel::PumpB, 115, 0.750e-6),
        )
        .expect("reference quartet is consistent")
    }

    pub fn modes(&self) -> [&CavityMode; 4] {
        [&self.sig, &self.a, &self.b, &self.idl]
    }

    pub fn wavelengths(&self) -> [f64; 4] {
        [
            self.sig.lambda,
            self.a.lambda,
            self.b.lambda,
            self.idl.lambda,
        ]
    }

    pub fn omegas(&self) -> [f64; 4] {
        [self.sig.omega, self.a.omega, self.b.omega, self.idl.omega]
    }

    /// Relative residual of the energy balance.
    pub fn frequency_mismatch(&self) -> f64 {
        (self.sig.omega + self.a.omega - self.b.omega - self.idl.omega) / self.sig.omega
    }

    /// `m_sig - m_A - m_B`, zero for a phase-matched quartet.
    pub fn azimuthal_mismatch(&self) -> i64 {
        self.sig.m as i64 - self.a.m as i64 - self.b.m as i64
    }

    pub fn validate(&self) -> Result<()> {
        let expected = [
            ModeLabel::Signal,
            ModeLabel::PumpA,
            ModeLabel::PumpB,
            ModeLabel::Idler,
        ];
        for (mode, label) in self.modes().into_iter().zip(expected) {
            if mode.label != label {
                return Err(Error::invalid(format!(
                    "expected {} mode, found {}",
                    label.as_str(),
                    mode.label.as_str()
                )));
            }
            if mode.c != label.interaction_sign() {
                return Err(Error::invalid(format!(
                    "mode {} has the wrong interaction sign",
                    label.as_str()
                )));
            }
            if !(mode.lambda > 0.0 && mode.omega > 0.0) {
                return Err(Error::invalid(format!(
                    "mode {} needs a positive wavelength",
                    label.as_str()
                )));
            }
            let rel = (mode.omega - omega_from_wavelength(mode.lambda)).abs() / mode.omega;
            if rel > FREQUENCY_TOLERANCE {
                return Err(Error::invalid(format!(
                    "mode {} frequency disagrees with its wavelength",
                    label.as_str()
                )));
            }
        }
        if self.idl.m != 0 {
            return Err(Error::invalid("idler must be the m = 0 mode"));
        }
        if self.azimuthal_mismatch() != 0 {
            return Err(Error::invalid(format!(
                "azimuthal numbers violate m_sig = m_A + m_B ({} != {} + {})",
                self.sig.m, self.a.m, self.b.m
            )));
        }
        if self.frequency_mismatch().abs() > FREQUENCY_TOLERANCE {
            return Err(Error::invalid(format!(
                "energy mismatch {:e} exceeds tolerance",
                self.frequency_mismatch()
            )));
        }
        Ok(())
    }
}

/// Real-valued azimuthal number `2 pi r n_eff(lambda) / lambda` of the ring mode at `lambda`.
pub fn mode_number(curve: &EffectiveIndexCurve, r: f64, lambda: f64) -> Result<f64> {
    Ok(2.0 * PI * r * curve.n_eff(lambda)? / lambda)
}

/// Wavelength at which the ring supports azimuthal order `m`.
///
/// The curve samples are scanned for the interval where `mode_number - m`
/// changes sign; bisection then runs to the floating-point resolution of the
/// bracket, which keeps `|mode_number(lambda*) - m|` well below 1e-9.
pub fn resonant_wavelength(curve: &EffectiveIndexCurve, r: f64, m: u32) -> Result<f64> {
    let (lo, hi) = curve.range();
    let target = m as f64;
    let f = |lambda: f64| {
        mode_number(curve, r, lambda)
            .map(|v| v - target)
            .unwrap_or(f64::NAN)
    };
    let no_resonance = Error::NoResonance { m, lo, hi };
    if m == 0 || f(lo) < 0.0 || f(hi) > 0.0 {
        return Err(no_resonance);
    }
    let mut bracket = None;
    let knots: Vec<f64> = curve.samples().map(|s| s.0).collect();
    for w in knots.windows(2) {
        if f(w[0]) >= 0.0 && f(w[1]) <= 0.0 {
            bracket = Some((w[0], w[1]));
            break;
        }
    }
    let (a, b) = bracket.ok_or(no_resonance)?;
    bisect(f, a, b, 0.0).ok_or(Error::NoResonance { m, lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Interpolation;

    fn flat(n: f64) -> EffectiveIndexCurve {
        EffectiveIndexCurve::constant(n, (0.5e-6, 10e-6)).unwrap()
    }

    #[test]
    fn constant_curve_mode_number() {
        let m = mode_number(&flat(2.0), 1e-6, 2.0 * PI * 1e-6).unwrap();
        assert!((m - 2.0).abs() < 1e-12);
        let m2 = mode_number(&flat(2.0), 2e-6, 2.0 * PI * 1e-6).unwrap();
        assert!((m2 - 4.0).abs() < 1e-12);
    }

    #[test]
    fn constant_curve_resonance() {
        let lambda = resonant_wavelength(&flat(2.0), 1e-6, 2).unwrap();
        assert!((lambda - 2.0 * PI * 1e-6).abs() / lambda < 1e-14);
    }

    // n_eff is fixed so that m = 143 exactly at 0.615 um: n = 143 * 0.615 / (2 pi 6) = 2.332813578...
    #[test]
    fn reference_signal_anchor() {
        let n = 143.0 * 0.615 / (2.0 * PI * 6.0);
        assert!((n - 2.3328).abs() < 1e-4);
        let curve = EffectiveIndexCurve::new(
            &[(0.5e-6, n + 0.05), (0.615e-6, n), (0.8e-6, n - 0.07)],
            Interpolation::MonotoneCubic,
        )
        .unwrap();
        let m = mode_number(&curve, 6e-6, 0.615e-6).unwrap();
        assert!((m - 143.0).abs() < 1e-9);
        let back = resonant_wavelength(&curve, 6e-6, 143).unwrap();
        assert!((back - 0.615e-6).abs() / 0.615e-6 < 1e-12);
    }

    #[test]
    fn order_above_range_has_no_resonance() {
        let curve = EffectiveIndexCurve::diamond_ring_example();
        let (lo, _) = curve.range();
        let top = mode_number(&curve, 6e-6, lo).unwrap().ceil() as u32 + 1;
        assert!(matches!(
            resonant_wavelength(&curve, 6e-6, top),
            Err(Error::NoResonance { .. })
        ));
    }

    #[test]
    fn reference_quartet_is_consistent() {
        let q = FwmQuartet::reference();
        assert_eq!(q.azimuthal_mismatch(), 0);
        assert!(q.frequency_mismatch().abs() < 1e-15);
        assert!((q.idl.lambda - 1.2987e-6).abs() < 1e-10, "{}", q.idl.lambda);
    }

    #[test]
    fn broken_quartet_is_rejected() {
        let q = FwmQuartet::reference();
        let mut b = q.b;
        b.m = 114;
        assert!(FwmQuartet::new(q.sig, q.a, b, q.idl).is_err());
        let mut idl = q.idl;
        idl.lambda *= 1.001;
        idl.omega = omega_from_wavelength(idl.lambda);
        assert!(FwmQuartet::new(q.sig, q.a, q.b, idl).is_err());
    }

    #[test]
    fn degenerate_pumps_return_signal_wavelength() {
        let sig = CavityMode::new(ModeLabel::Signal, 20, 0.6e-6, 2.0);
        let a = CavityMode::new(ModeLabel::PumpA, 10, 0.8e-6, 2.0);
        let b = CavityMode::new(ModeLabel::PumpB, 10, 0.8e-6, 2.0);
        let q = FwmQuartet::from_pumps(sig, a, b).unwrap();
        assert!((q.idl.lambda - sig.lambda).abs() / sig.lambda < 1e-14);
    }
}
