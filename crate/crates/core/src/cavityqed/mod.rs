//! Emitter / signal / idler coupled-amplitude model.
//!
//! The classical pumps only enter through the nonlinear coupling `g_nl`, so the
//! single-excitation dynamics reduce to `c'(t) = -A c(t)` for the amplitudes
//! `(c_e, c_sig, c_idl)` with a complex-symmetric 3x3 matrix `A`. Channel
//! yields are time integrals of `|c_j|^2` weighted by the rate of that channel;
//! they are evaluated in closed form from the eigen-decomposition of `A`.

mod couplings;
mod eigen;
mod pipeline;
mod rates;
mod system;
mod yields;

pub use couplings::{
    emitter_coupling, emitter_loss, idler_linewidth, nonlinear_coupling, nonlinear_strength,
    pump_amplitude, purcell, q_from_energy, EmitterParams, NonlinearMedium, PumpDrive,
};
pub use eigen::{eigensolve, EigenSolution, DEGENERACY_GAP, MAX_CONDITION, RESIDUAL_TOLERANCE};
pub use pipeline::{DeviceContext, DeviceEvaluation};
pub use rates::{rates_for, ModeRates};
pub use system::{build_matrix, CoefficientMatrix, HamiltonianInputs, EMITTER_EXCITED};
pub use yields::{
    efficiencies, lyapunov_yields, solve_yields, EfficiencyReport, ReportFlag,
    CONSERVATION_TOLERANCE,
};
