//! Physical constants shared by every module.

use sha2::{Digest, Sha256};

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum speed of light (m/s).
pub const C0: f64 = 2.997_924_58e8;

/// Nonlinear refractive index of diamond in the infrared (m^2/W).
pub const DIAMOND_N2: f64 = 8.2e-20;

/// Name/value pairs of every constant that enters a computation.
pub fn table() -> [(&'static str, f64); 3] {
    [
        ("hbar_J_s", HBAR),
        ("c0_m_per_s", C0),
        ("diamond_n2_m2_per_W", DIAMOND_N2),
    ]
}

/// SHA-256 over the canonical text form of [`table`], recorded in run manifests.
pub fn table_hash() -> String {
    let mut hasher = Sha256::new();
    for (name, value) in table() {
        hasher.update(format!("{name}={value:e}\n").as_bytes());
    }
    hex::encode(hasher.finalize())
}

/// Angular frequency (rad/s) of a vacuum wavelength (m).
#[inline]
pub fn omega_from_wavelength(lambda: f64) -> f64 {
    2.0 * std::f64::consts::PI * C0 / lambda
}

/// Vacuum wavelength (m) of an angular frequency (rad/s).
#[inline]
pub fn wavelength_from_omega(omega: f64) -> f64 {
    2.0 * std::f64::consts::PI * C0 / omega
}
