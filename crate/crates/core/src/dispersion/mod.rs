//! Material and modal dispersion, whispering-gallery-mode discretisation and
//! the frequency phase-matching (FPM) solver.
//!
//! Lengths are SI metres throughout; the CSV readers convert from micrometres.

mod competing;
mod curve;
mod fpm;
mod material;
mod modes;

pub use competing::{competing_process_scan, CompetingProcess, ProcessKind};
pub use curve::EffectiveIndexCurve;
pub use fpm::solve_fpm;
pub use material::{MaterialIndex, SellmeierPole};
pub use modes::{
    mode_number, resonant_wavelength, CavityMode, FwmQuartet, ModeLabel, RingGeometry, Sign,
    FREQUENCY_TOLERANCE,
};

use std::f64::consts::PI;

/// Round-trip phase of the idler across the cavity thickness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutOfPlanePhase {
    pub radians: f64,
    /// Set when the phase exceeds pi, i.e. the idler no longer builds up
    /// constructively against the uniform-phase polarization.
    pub exceeds_pi: bool,
}

/// Phase `2 pi n t_cav / lambda_idl` accumulated by the idler over the optical
/// path through the ring thickness.
pub fn out_of_plane_phase(geometry: &RingGeometry, index: f64, lambda_idl: f64) -> OutOfPlanePhase {
    let radians = 2.0 * PI * index * geometry.t_cav / lambda_idl;
    OutOfPlanePhase {
        radians,
        exceeds_pi: radians > PI,
    }
}
