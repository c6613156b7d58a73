use super::field::TransversePlaneField;

/// Applies the S-waveplate Jones matrix `[[cos phi, sin phi], [sin phi, -cos phi]]`
/// at azimuth `phi = atan2(y, x)` of every sample; `E_z` is passed through.
pub fn s_waveplate(field: &TransversePlaneField) -> TransversePlaneField {
    let mut out = field.clone();
    for (idx, v) in out.e.iter_mut().enumerate() {
        let (x, y) = field.xy(idx);
        let (s, c) = y.atan2(x).sin_cos();
        let (ex, ey) = (v[0], v[1]);
        v[0] = ex * c + ey * s;
        v[1] = ex * s - ey * c;
    }
    out
}
