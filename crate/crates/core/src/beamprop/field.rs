use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::io::{read_numeric_csv, read_to_string, CsvTable, Num};
use crate::{Error, Result};

pub type Vec3 = [Complex64; 3];

pub(crate) const ZERO3: Vec3 = [Complex64 { re: 0.0, im: 0.0 }; 3];

pub const FARFIELD_HEADER: [&str; 8] = [
    "sx", "sy", "re_ax", "im_ax", "re_ay", "im_ay", "re_az", "im_az",
];
pub const PLANE_HEADER: [&str; 8] = [
    "x_um", "y_um", "re_ex", "im_ex", "re_ey", "im_ey", "re_ez", "im_ez",
];

pub(crate) fn norm2(v: &Vec3) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// Uniform axis `start + i * step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub start: f64,
    pub step: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(start: f64, step: f64, n: usize) -> Result<Self> {
        if n == 0 || !(step > 0.0) || !start.is_finite() {
            return Err(Error::invalid(format!(
                "axis needs n > 0 and step > 0, got n = {n}, step = {step}"
            )));
        }
        Ok(Self { start, step, n })
    }

    /// `n` points spanning `[-half, half]`.
    pub fn centered(half: f64, n: usize) -> Result<Self> {
        if n < 2 || !(half > 0.0) {
            return Err(Error::invalid(
                "centred axis needs n >= 2 and a positive half-width",
            ));
        }
        Self::new(-half, 2.0 * half / (n - 1) as f64, n)
    }

    pub fn at(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.at(i)).collect()
    }

    /// Recovers a uniform axis from (possibly repeated, unsorted) coordinates.
    fn infer(coords: &[f64], name: &str) -> Result<Self> {
        let mut v: Vec<f64> = coords.to_vec();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        if v.len() < 2 {
            return Err(Error::invalid(format!(
                "{name} grid needs at least two distinct values"
            )));
        }
        let step = (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64;
        for (i, x) in v.iter().enumerate() {
            if (x - (v[0] + step * i as f64)).abs() > 1e-6 * step {
                return Err(Error::invalid(format!(
                    "{name} grid is not uniformly spaced"
                )));
            }
        }
        Self::new(v[0], step, v.len())
    }

    fn index_of(&self, x: f64) -> Option<usize> {
        let f = (x - self.start) / self.step;
        let i = f.round();
        ((f - i).abs() < 1e-6 && i >= 0.0 && (i as usize) < self.n).then_some(i as usize)
    }
}

/// Ray strengths `a(s_x, s_y)` on a uniform direction-cosine grid. Samples are
/// stored row-major with `s_y` as the slow index; samples at or outside the
/// unit circle are held at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FarField {
    pub lambda: f64,
    pub sx: Axis,
    pub sy: Axis,
    pub a: Vec<Vec3>,
}

impl FarField {
    pub fn new(lambda: f64, sx: Axis, sy: Axis, a: Vec<Vec3>) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::invalid("wavelength must be positive"));
        }
        if a.len() != sx.n * sy.n {
            return Err(Error::invalid(format!(
                "expected {} far-field samples, got {}",
                sx.n * sy.n,
                a.len()
            )));
        }
        let f = Self { lambda, sx, sy, a };
        for j in 0..sy.n {
            for i in 0..sx.n {
                let v = &f.a[j * sx.n + i];
                if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                    return Err(Error::invalid("far-field sample is not finite"));
                }
                let (x, y) = (sx.at(i), sy.at(j));
                if x * x + y * y >= 1.0 && norm2(v) > 0.0 {
                    return Err(Error::invalid(format!(
                        "far-field sample at (s_x, s_y) = ({x}, {y}) lies outside the unit circle"
                    )));
                }
            }
        }
        Ok(f)
    }

    /// Samples `f` on an `n x n` grid over `[-s_max, s_max]^2`, zero outside the unit circle.
    pub fn from_fn<F: Fn(f64, f64, f64) -> Vec3>(
        lambda: f64,
        s_max: f64,
        n: usize,
        f: F,
    ) -> Result<Self> {
        let axis = Axis::centered(s_max, n)?;
        let mut a = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                let (x, y) = (axis.at(i), axis.at(j));
                let s2 = x * x + y * y;
                a.push(if s2 < 1.0 {
                    f(x, y, (1.0 - s2).sqrt())
                } else {
                    ZERO3
                });
            }
        }
        Self::new(lambda, axis, axis, a)
    }

    pub fn k(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.lambda
    }

    pub fn ds2(&self) -> f64 {
        self.sx.step * self.sy.step
    }

    pub fn sample(&self, i: usize, j: usize) -> (f64, f64, &Vec3) {
        (self.sx.at(i), self.sy.at(j), &self.a[j * self.sx.n + i])
    }

    fn weighted_sum(&self, pow: i32) -> f64 {
        let mut total = 0.0;
        for j in 0..self.sy.n {
            for i in 0..self.sx.n {
                let (x, y, v) = self.sample(i, j);
                let p = norm2(v);
                if p > 0.0 {
                    total += p / (1.0 - x * x - y * y).sqrt().powi(pow);
                }
            }
        }
        total * self.ds2()
    }

    /// Radiated power `int |a|^2 dOmega = int |a|^2 / s_z ds_x ds_y`.
    pub fn power(&self) -> f64 {
        self.weighted_sum(1)
    }

    /// `int |a|^2 / s_z^2 ds_x ds_y`, which equals `int |E|^2 dA` over any
    /// transverse plane after the Debye-Wolf integral.
    pub fn plane_norm(&self) -> f64 {
        self.weighted_sum(2)
    }

    pub fn map<F: Fn(f64, f64, &Vec3) -> Vec3>(&self, f: F) -> Self {
        let mut out = self.clone();
        for j in 0..self.sy.n {
            for i in 0..self.sx.n {
                let (x, y, v) = self.sample(i, j);
                out.a[j * self.sx.n + i] = f(x, y, v);
            }
        }
        out
    }

    /// Reads the far-field CSV; the wavelength comes from the sidecar file
    /// `<stem>.json` holding `{"wavelength_um": ...}`.
    pub fn read(path: &Path) -> Result<Self> {
        let sidecar = path.with_extension("json");
        let meta: FarFieldMeta =
            serde_json::from_str(&read_to_string(&sidecar)?).map_err(|source| Error::Json {
                path: sidecar.clone(),
                source,
            })?;
        Self::from_csv(
            &read_to_string(path)?,
            &path.display().to_string(),
            meta.wavelength_um * 1e-6,
        )
    }

    pub fn from_csv(text: &str, source_name: &str, lambda: f64) -> Result<Self> {
        let rows = read_numeric_csv(text, source_name, &FARFIELD_HEADER)?;
        let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r[1]).collect();
        let sx = Axis::infer(&xs, "s_x")?;
        let sy = Axis::infer(&ys, "s_y")?;
        let mut a = vec![ZERO3; sx.n * sy.n];
        for (line, r) in rows.iter().enumerate() {
            let bad = || Error::Parse {
                source_name: source_name.to_string(),
                line: line as u64 + 2,
                msg: "sample off the uniform grid".into(),
            };
            let i = sx.index_of(r[0]).ok_or_else(bad)?;
            let j = sy.index_of(r[1]).ok_or_else(bad)?;
            a[j * sx.n + i] = [
                Complex64::new(r[2], r[3]),
                Complex64::new(r[4], r[5]),
                Complex64::new(r[6], r[7]),
            ];
        }
        Self::new(lambda, sx, sy, a)
    }

    pub fn to_csv(&self) -> CsvTable {
        let mut t = CsvTable::new(&FARFIELD_HEADER);
        for j in 0..self.sy.n {
            for i in 0..self.sx.n {
                let (x, y, v) = self.sample(i, j);
                t.push(
                    [x, y, v[0].re, v[0].im, v[1].re, v[1].im, v[2].re, v[2].im]
                        .map(|f| Num(f).to_string()),
                );
            }
        }
        t
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FarFieldMeta {
    pub wavelength_um: f64,
}

/// Uniform transverse sampling grid of an observation plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneGrid {
    pub x: Axis,
    pub y: Axis,
}

impl PlaneGrid {
    pub fn square(half_width: f64, n: usize) -> Result<Self> {
        let a = Axis::centered(half_width, n)?;
        Ok(Self { x: a, y: a })
    }

    pub fn len(&self) -> usize {
        self.x.n * self.y.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn da(&self) -> f64 {
        self.x.step * self.y.step
    }
}

/// Complex field on a transverse plane at axial offset `z` from the focus.
#[derive(Debug, Clone, PartialEq)]
pub struct TransversePlaneField {
    pub grid: PlaneGrid,
    pub z: f64,
    pub e: Vec<Vec3>,
}

impl TransversePlaneField {
    pub fn new(grid: PlaneGrid, z: f64, e: Vec<Vec3>) -> Result<Self> {
        if e.len() != grid.len() {
            return Err(Error::invalid(format!(
                "expected {} plane samples, got {}",
                grid.len(),
                e.len()
            )));
        }
        Ok(Self { grid, z, e })
    }

    pub fn from_fn<F: Fn(f64, f64) -> Vec3>(grid: PlaneGrid, z: f64, f: F) -> Self {
        let mut e = Vec::with_capacity(grid.len());
        for j in 0..grid.y.n {
            for i in 0..grid.x.n {
                e.push(f(grid.x.at(i), grid.y.at(j)));
            }
        }
        Self { grid, z, e }
    }

    pub fn xy(&self, idx: usize) -> (f64, f64) {
        (
            self.grid.x.at(idx % self.grid.x.n),
            self.grid.y.at(idx / self.grid.x.n),
        )
    }

    /// `int |E|^2 dA` over all three components.
    pub fn power(&self) -> f64 {
        self.e.iter().map(norm2).sum::<f64>() * self.grid.da()
    }

    pub fn transverse_power(&self) -> f64 {
        self.e
            .iter()
            .map(|v| v[0].norm_sqr() + v[1].norm_sqr())
            .sum::<f64>()
            * self.grid.da()
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.e.iter().map(norm2).collect()
    }

    pub fn to_csv(&self) -> CsvTable {
        let mut t = CsvTable::new(&PLANE_HEADER);
        for (idx, v) in self.e.iter().enumerate() {
            let (x, y) = self.xy(idx);
            t.push(
                [
                    x * 1e6,
                    y * 1e6,
                    v[0].re,
                    v[0].im,
                    v[1].re,
                    v[1].im,
                    v[2].re,
                    v[2].im,
                ]
                .map(|f| Num(f).to_string()),
            );
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn farfield_csv_round_trip() {
        let f = FarField::from_fn(1.3e-6, 0.5, 5, |x, y, _| {
            [
                Complex64::new(x, y),
                Complex64::new(0.0, 1.0),
                Complex64::new(-y, 0.0),
            ]
        })
        .unwrap();
        let t = f.to_csv();
        let back = FarField::from_csv(t.as_str(), "ff.csv", 1.3e-6).unwrap();
        assert_eq!(back.sx.n, 5);
        for (a, b) in f.a.iter().zip(&back.a) {
            for c in 0..3 {
                assert!((a[c] - b[c]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn farfield_rejects_ragged_grid() {
        let text = "sx,sy,re_ax,im_ax,re_ay,im_ay,re_az,im_az\n0,0,1,0,0,0,0,0\n0.1,0,1,0,0,0,0,0\n0.3,0,1,0,0,0,0,0\n";
        assert!(FarField::from_csv(text, "ff.csv", 1e-6).is_err());
    }

    #[test]
    fn samples_outside_unit_circle_rejected() {
        let axis = Axis::centered(1.0, 3).unwrap();
        let mut a = vec![ZERO3; 9];
        a[0] = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(FarField::new(1e-6, axis, axis, a).is_err());
    }

    #[test]
    fn hemisphere_power_is_two_pi() {
        // |a| = 1 everywhere: int dOmega over the hemisphere.
        let one = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let f = FarField::from_fn(1e-6, 1.0, 801, |_, _, _| one).unwrap();
        let p = f.power();
        assert!(
            (p - 2.0 * std::f64::consts::PI).abs() / (2.0 * std::f64::consts::PI) < 0.02,
            "{p}"
        );
    }
}
