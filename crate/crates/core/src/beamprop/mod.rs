//! Vectorial focusing of the idler far-field, S-waveplate polarisation
//! conversion and Gaussian mode matching.
//!
//! A far-field is a set of ray strengths `a(s_x, s_y)` on a uniform grid of
//! direction cosines. [`debye_wolf`] maps it to the field on a transverse
//! plane, [`s_waveplate`] converts radial to linear polarisation and
//! [`gaussian_overlap`] scores the result against a fundamental Gaussian.

mod field;
mod overlap;
mod polarization;
mod propagate;
pub mod synthetic;

pub use field::{
    Axis, FarField, FarFieldMeta, PlaneGrid, TransversePlaneField, Vec3, FARFIELD_HEADER,
    PLANE_HEADER,
};
pub use overlap::{
    fit_gaussian, focus_plane, gaussian_overlap, optimize_spatial, GaussianBeamSpec, PlaneFit,
    SpatialConfig, SpatialOptimum,
};
pub use polarization::s_waveplate;
pub use propagate::{clip_na, debye_wolf, MIN_SZ};
