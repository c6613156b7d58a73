//! Simulation and design toolkit for free-space phase-matched four-wave mixing
//! (FFWM) in whispering-gallery ring resonators.
//!
//! The crate is organised around the chain that takes a single photon from an
//! emitter embedded in the ring to a Gaussian fiber mode:
//!
//! * [`dispersion`]: material and modal dispersion, azimuthal mode
//!   discretisation, the frequency phase-matching solver and the scan of
//!   competing nonlinear processes.
//! * [`cavityqed`]: rates and couplings of the non-Hermitian emitter/signal/idler
//!   model, the exact 3x3 eigen-solution and the channel yields
//!   (`eta_idler`, `beta`, ...).
//! * [`sweeps`]: pump-budget sweeps and saturation search.
//! * [`beamprop`]: Debye-Wolf focusing of the idler far-field, S-waveplate
//!   conversion and Gaussian overlap.
//! * [`cli`]: JSON run configuration, CSV/SVG/manifest emission and the
//!   subcommands behind the `ffwm` binary.
//!
//! Runnable walkthroughs of every capability live in `examples/`.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beamprop;
pub mod cavityqed;
pub mod cli;
pub mod constants;
pub mod dispersion;
mod error;
pub mod io;
pub mod numeric;
pub mod sweeps;

pub use error::{Error, Result};
