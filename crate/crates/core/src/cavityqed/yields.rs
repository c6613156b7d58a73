use nalgebra::SMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

use super::eigen::{eigensolve, EigenSolution};
use super::system::{build_matrix, initial_state, HamiltonianInputs};

/// Bound on `|eta_idler + eta_emitter + eta_signal_loss - 1|`.
pub const CONSERVATION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ReportFlag {
    /// Closed-form modal sums.
    #[default]
    Ok,
    /// Eigenvalues nearly coincide or the eigenbasis is near-defective; yields
    /// come from the Lyapunov integral instead.
    DegenerateFallback,
}

impl ReportFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportFlag::Ok => "ok",
            ReportFlag::DegenerateFallback => "degenerate_fallback",
        }
    }
}

/// Probabilities that one emitter decay ends in each loss channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct EfficiencyReport {
    /// Radiated into the idler far-field.
    pub eta_idler: f64,
    /// `1 - eta_emitter`: decay into the ZPL cavity channel.
    pub beta: f64,
    /// Lossy (non-ZPL) emitter decay.
    pub eta_emitter: f64,
    /// Intrinsic loss of the signal mode.
    pub eta_signal_loss: f64,
    pub flag: ReportFlag,
}

impl EfficiencyReport {
    fn from_yields(
        eta_emitter: f64,
        eta_signal_loss: f64,
        eta_idler: f64,
        flag: ReportFlag,
    ) -> Self {
        Self {
            eta_idler,
            beta: 1.0 - eta_emitter,
            eta_emitter,
            eta_signal_loss,
            flag,
        }
    }

    pub fn total(&self) -> f64 {
        self.eta_idler + self.eta_emitter + self.eta_signal_loss
    }

    pub fn is_conserving(&self) -> bool {
        (self.total() - 1.0).abs() <= CONSERVATION_TOLERANCE
    }
}

/// Channel yields from the modal expansion:
/// `int_0^inf |c_r(t)|^2 dt = sum_{j,k} a_j a_k^* v_r^(j) v_r^(k)* / (lambda_j + lambda_k^*)`,
/// weighted by the decay rate of channel `r`.
pub fn efficiencies(
    sol: &EigenSolution,
    gamma_idl: f64,
    m_e: f64,
    m_sig: f64,
) -> Result<EfficiencyReport> {
    let mut occupation = [0.0; 3];
    for j in 0..3 {
        for k in 0..3 {
            let denom = sol.eigenvalues[j] + sol.eigenvalues[k].conj();
            if !(denom.re > 0.0) {
                return Err(Error::DivergentIntegral {
                    real_part: denom.re,
                });
            }
            let ww = sol.weights[j] * sol.weights[k].conj();
            for (r, occ) in occupation.iter_mut().enumerate() {
                *occ += (ww * sol.vectors[(r, j)] * sol.vectors[(r, k)].conj() / denom).re;
            }
        }
    }
    Ok(EfficiencyReport::from_yields(
        m_e * occupation[0],
        m_sig * occupation[1],
        gamma_idl * occupation[2],
        ReportFlag::Ok,
    ))
}

/// Channel yields from the occupation integrals `X = int_0^inf c c^H dt`,
/// which solve `A X + X A^H = c(0) c(0)^H`. Valid whether or not `A` is
/// diagonalisable.
pub fn lyapunov_yields(inputs: &HamiltonianInputs, c0: [f64; 3]) -> Result<EfficiencyReport> {
    let a = build_matrix(inputs);
    let scale = a.norm();
    if !(scale > 0.0) {
        return Err(Error::Numerical("coefficient matrix is zero".into()));
    }
    let b = a.unscale(scale);
    let c = initial_state(c0);
    let rhs_m = c * c.adjoint();

    // column-major vec: vec(B X + X B^H) = (I (x) B + conj(B) (x) I) vec(X)
    let mut kron = SMatrix::<Complex64, 9, 9>::zeros();
    let mut rhs = SMatrix::<Complex64, 9, 1>::zeros();
    for col in 0..3 {
        for row in 0..3 {
            let i = col * 3 + row;
            rhs[i] = rhs_m[(row, col)];
            for k in 0..3 {
                kron[(i, col * 3 + k)] += b[(row, k)];
                kron[(i, k * 3 + row)] += b[(col, k)].conj();
            }
        }
    }
    let x = kron
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("singular Lyapunov system".into()))?;
    let occ = |r: usize| x[r * 3 + r].re / scale;
    if !(0..3).all(|r| occ(r).is_finite()) {
        return Err(Error::Numerical("non-finite Lyapunov solution".into()));
    }
    Ok(EfficiencyReport::from_yields(
        inputs.m_e * occ(0),
        inputs.m_sig * occ(1),
        inputs.gamma_idl * occ(2),
        ReportFlag::DegenerateFallback,
    ))
}

/// Builds `A`, diagonalises it and evaluates the yields, switching to the
/// Lyapunov integral when the eigenbasis is unreliable.
pub fn solve_yields(inputs: &HamiltonianInputs, c0: [f64; 3]) -> Result<EfficiencyReport> {
    inputs.validate()?;
    let a = build_matrix(inputs);
    let closed = match eigensolve(&a, c0) {
        Ok(sol) if !sol.near_degenerate() => {
            efficiencies(&sol, inputs.gamma_idl, inputs.m_e, inputs.m_sig).ok()
        }
        Ok(_) | Err(Error::DegenerateSystem { .. }) | Err(Error::Numerical(_)) => None,
        Err(e) => return Err(e),
    };
    let norm2: f64 = c0.iter().map(|v| v * v).sum();
    match closed {
        Some(report)
            if (report.total() - norm2).abs() <= CONSERVATION_TOLERANCE * norm2.max(1.0) =>
        {
            Ok(report)
        }
        _ => {
            let report = lyapunov_yields(inputs, c0)?;
            if (report.total() - norm2).abs() > CONSERVATION_TOLERANCE * norm2.max(1.0) {
                return Err(Error::Numerical(format!(
                    "yields sum to {} after fallback",
                    report.total()
                )));
            }
            Ok(report)
        }
    }
}
