use num_complex::Complex64;
use rayon::prelude::*;

use super::field::{norm2, FarField, PlaneGrid, TransversePlaneField, Vec3, ZERO3};
use crate::{Error, Result};

/// Smallest `s_z` the focusing integral accepts on a nonzero sample.
pub const MIN_SZ: f64 = 1e-3;

/// Zeroes every sample with `sqrt(s_x^2 + s_y^2) > na`; returns the clipped
/// field and its share of the original radiated power.
pub fn clip_na(field: &FarField, na: f64) -> Result<(FarField, f64)> {
    if !(na > 0.0 && na <= 1.0) {
        return Err(Error::invalid(format!("NA must lie in (0, 1], got {na}")));
    }
    let total = field.power();
    if !(total > 0.0) {
        return Err(Error::ZeroPower);
    }
    let clipped = field.map(|x, y, v| {
        if (x * x + y * y).sqrt() > na {
            ZERO3
        } else {
            *v
        }
    });
    let kept = clipped.power();
    Ok((clipped, kept / total))
}

/// `E(x, y, z) = -(i k / 2 pi) int a / s_z exp[i k (s_x x + s_y y + s_z z)] ds_x ds_y`
/// by midpoint quadrature on the far-field grid. The kernel factorises in `x`
/// and `y`, so the double sum is evaluated as two dense matrix products.
pub fn debye_wolf(field: &FarField, grid: &PlaneGrid, z: f64) -> Result<TransversePlaneField> {
    let k = field.k();
    let (nsx, nsy) = (field.sx.n, field.sy.n);
    let (nx, ny) = (grid.x.n, grid.y.n);

    // b = a / s_z * exp(i k s_z z) * ds^2, per component, row-major in s_y.
    let mut b = vec![ZERO3; nsx * nsy];
    for j in 0..nsy {
        for i in 0..nsx {
            let (sx, sy, v) = field.sample(i, j);
            if norm2(v) == 0.0 {
                continue;
            }
            let sz2 = 1.0 - sx * sx - sy * sy;
            let sz = if sz2 > 0.0 { sz2.sqrt() } else { 0.0 };
            if sz < MIN_SZ {
                return Err(Error::IllConditionedIntegral { sz });
            }
            let w = Complex64::from_polar(field.ds2() / sz, k * sz * z);
            b[j * nsx + i] = [v[0] * w, v[1] * w, v[2] * w];
        }
    }
    let live_rows: Vec<usize> = (0..nsy)
        .filter(|&j| b[j * nsx..(j + 1) * nsx].iter().any(|v| norm2(v) > 0.0))
        .collect();

    let px: Vec<Complex64> = (0..nx)
        .flat_map(|ix| {
            let x = grid.x.at(ix);
            (0..nsx).map(move |i| Complex64::from_polar(1.0, k * field.sx.at(i) * x))
        })
        .collect();
    let py: Vec<Complex64> = (0..ny)
        .flat_map(|iy| {
            let y = grid.y.at(iy);
            live_rows
                .iter()
                .map(move |&j| Complex64::from_polar(1.0, k * field.sy.at(j) * y))
        })
        .collect();

    // c[r][ix] = sum_i b[row_r][i] * px[ix][i]
    let c: Vec<Vec3> = live_rows
        .par_iter()
        .flat_map_iter(|&j| {
            let row = &b[j * nsx..(j + 1) * nsx];
            let px = &px;
            (0..nx).map(move |ix| {
                let p = &px[ix * nsx..(ix + 1) * nsx];
                let mut acc = ZERO3;
                for (v, ph) in row.iter().zip(p) {
                    acc[0] += v[0] * ph;
                    acc[1] += v[1] * ph;
                    acc[2] += v[2] * ph;
                }
                acc
            })
        })
        .collect();

    let pre = Complex64::new(0.0, -k / (2.0 * std::f64::consts::PI));
    let nr = live_rows.len();
    let e: Vec<Vec3> = (0..ny)
        .into_par_iter()
        .flat_map_iter(|iy| {
            let p = &py[iy * nr..(iy + 1) * nr];
            let c = &c;
            (0..nx).map(move |ix| {
                let mut acc = ZERO3;
                for (r, ph) in p.iter().enumerate() {
                    let v = &c[r * nx + ix];
                    acc[0] += v[0] * ph;
                    acc[1] += v[1] * ph;
                    acc[2] += v[2] * ph;
                }
                [acc[0] * pre, acc[1] * pre, acc[2] * pre]
            })
        })
        .collect();
    TransversePlaneField::new(*grid, z, e)
}
