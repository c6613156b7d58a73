use crate::{Error, Result};

use super::{resonant_wavelength, CavityMode, EffectiveIndexCurve, FwmQuartet, ModeLabel};

/// Enumerates every split `m_A + m_B = m_sig` whose two pump resonances fall
/// inside `window` (m), returning the phase-matched quartets sorted by idler
/// wavelength. An empty window yields an empty list.
pub fn solve_fpm(
    curve: &EffectiveIndexCurve,
    r: f64,
    sig: &CavityMode,
    window: (f64, f64),
) -> Result<Vec<FwmQuartet>> {
    if sig.label != ModeLabel::Signal || sig.m < 2 {
        return Err(Error::invalid("solve_fpm needs a signal mode with m >= 2"));
    }
    let (lo, hi) = window;
    let (c_lo, c_hi) = curve.range();
    if lo < c_lo || hi > c_hi {
        let lambda = if lo < c_lo { lo } else { hi };
        return Err(Error::InterpolationDomain {
            lambda,
            lo: c_lo,
            hi: c_hi,
        });
    }
    if !(hi > lo) {
        return Ok(Vec::new());
    }

    // resonances[m] for 1 <= m < m_sig, restricted to the window
    let resonances: Vec<Option<f64>> = (0..sig.m)
        .map(|m| {
            if m == 0 {
                return None;
            }
            resonant_wavelength(curve, r, m)
                .ok()
                .filter(|l| *l >= lo && *l <= hi)
        })
        .collect();

    let mut out = Vec::new();
    for m_a in 1..sig.m {
        let m_b = sig.m - m_a;
        let (Some(lambda_a), Some(lambda_b)) = (resonances[m_a as usize], resonances[m_b as usize])
        else {
            continue;
        };
        let a = CavityMode::new(ModeLabel::PumpA, m_a, lambda_a, curve.n_eff(lambda_a)?);
        let b = CavityMode::new(ModeLabel::PumpB, m_b, lambda_b, curve.n_eff(lambda_b)?);
        if let Ok(q) = FwmQuartet::from_pumps(*sig, a, b) {
            out.push(q);
        }
    }
    out.sort_by(|x, y| x.idl.lambda.total_cmp(&y.idl.lambda));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::mode_number;

    #[test]
    fn reference_split_is_found() {
        let curve = EffectiveIndexCurve::diamond_ring_example();
        let r = 6e-6;
        let sig = CavityMode::resonant(ModeLabel::Signal, &curve, r, 143).unwrap();
        assert!((sig.lambda - 0.615e-6).abs() < 1e-12);
        let quartets = solve_fpm(&curve, r, &sig, (0.5e-6, 2.2e-6)).unwrap();
        let q = quartets
            .iter()
            .find(|q| q.a.m == 28)
            .expect("m_A = 28 present");
        assert_eq!(q.b.m, 115);
        assert!((q.a.lambda - 2.095e-6).abs() < 1e-12);
        assert!((q.b.lambda - 0.750e-6).abs() < 1e-12);
        assert!((q.idl.lambda - 1.301e-6).abs() / 1.301e-6 < 2e-3);
        assert!(mode_number(&curve, r, q.a.lambda).unwrap() - 28.0 < 1e-9);
        for w in quartets.windows(2) {
            assert!(w[0].idl.lambda <= w[1].idl.lambda);
        }
    }

    #[test]
    fn empty_window_gives_empty_list() {
        let curve = EffectiveIndexCurve::diamond_ring_example();
        let sig = CavityMode::resonant(ModeLabel::Signal, &curve, 6e-6, 143).unwrap();
        assert!(solve_fpm(&curve, 6e-6, &sig, (1e-6, 1e-6))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn window_outside_curve_is_error() {
        let curve = EffectiveIndexCurve::diamond_ring_example();
        let sig = CavityMode::resonant(ModeLabel::Signal, &curve, 6e-6, 143).unwrap();
        assert!(solve_fpm(&curve, 6e-6, &sig, (0.4e-6, 2e-6)).is_err());
    }
}
