//! Analytic far-fields used as stand-ins for simulated ring emission.

use num_complex::Complex64;

use super::field::FarField;
use crate::Result;

/// Transverse x-polarised Gaussian angular spectrum, `a_x / s_z = exp(-s^2 / theta^2)`,
/// with `a_z` fixed by `a . s = 0`. Focuses to a waist of [`gaussian_waist`].
pub fn gaussian_far_field(lambda: f64, theta: f64, s_max: f64, n: usize) -> Result<FarField> {
    FarField::from_fn(lambda, s_max, n, |sx, sy, sz| {
        let g = (-(sx * sx + sy * sy) / (theta * theta)).exp();
        [
            Complex64::new(sz * g, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-sx * g, 0.0),
        ]
    })
}

/// Focal waist `2 / (k theta)` of [`gaussian_far_field`] in the paraxial limit.
pub fn gaussian_waist(lambda: f64, theta: f64) -> f64 {
    lambda / (std::f64::consts::PI * theta)
}

/// Radially polarised doughnut, `a = (rho / theta) exp(-rho^2 / theta^2) (s_z cos phi, s_z sin phi, -rho)`
/// with `rho = sqrt(s_x^2 + s_y^2)`.
pub fn radial_far_field(lambda: f64, theta: f64, s_max: f64, n: usize) -> Result<FarField> {
    FarField::from_fn(lambda, s_max, n, |sx, sy, sz| {
        let rho2 = sx * sx + sy * sy;
        let g = (-rho2 / (theta * theta)).exp() / theta;
        [
            Complex64::new(g * sz * sx, 0.0),
            Complex64::new(g * sz * sy, 0.0),
            Complex64::new(-g * rho2, 0.0),
        ]
    })
}

/// Unit radiance into every direction of the forward hemisphere, x-polarised.
pub fn uniform_hemisphere(lambda: f64, n: usize) -> Result<FarField> {
    FarField::from_fn(lambda, 1.0, n, |_, _, _| {
        [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]
    })
}
