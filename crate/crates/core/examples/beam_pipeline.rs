//! Focus a radially polarised idler far-field, convert it with the
//! S-waveplate and find the best Gaussian fiber-mode match.
//!
//! cargo run --example beam_pipeline -- [far_field.csv]
//!
//! Without an argument a synthetic doughnut far-field is used. A CSV far-field
//! needs a `<stem>.json` sidecar holding `{"wavelength_um": ...}`.

use std::path::Path;

use ffwm::beamprop::synthetic::radial_far_field;
use ffwm::beamprop::{
    clip_na, debye_wolf, fit_gaussian, optimize_spatial, s_waveplate, FarField, PlaneGrid,
    SpatialConfig,
};

fn main() -> ffwm::Result<()> {
    let field = match std::env::args().nth(1) {
        Some(p) => FarField::read(Path::new(&p))?,
        None => radial_far_field(1.301e-6, 0.5, 0.95, 201)?,
    };
    let na = 0.9;

    let (clipped, captured) = clip_na(&field, na)?;
    let grid = PlaneGrid::square(12e-6, 161)?;
    let focal = debye_wolf(&clipped, &grid, 0.0)?;
    let converted = s_waveplate(&focal);
    let cfg = SpatialConfig {
        plane: grid,
        ..Default::default()
    };
    println!("captured inside NA {na}: {captured:.4}");
    println!(
        "overlap at z = 0: {:.4} as focused, {:.4} after the waveplate",
        fit_gaussian(&focal, field.lambda, &cfg)?.overlap,
        fit_gaussian(&converted, field.lambda, &cfg)?.overlap
    );

    let z: Vec<f64> = (0..6).map(|i| i as f64 * 1e-6).collect();
    let cfg = SpatialConfig {
        plane: grid,
        ..Default::default()
    };
    let opt = optimize_spatial(&field, na, &z, 0.95, &cfg)?;
    for p in &opt.planes {
        println!(
            "  z = {:>4.1} um: w0 = {:.3} um, dz = {:>6.2} um, overlap {:.4}",
            p.z_p * 1e6,
            p.w0 * 1e6,
            p.dz * 1e6,
            p.overlap
        );
    }
    println!(
        "eta_spatial = {:.4} (overlap {:.4} at z = {:.1} um)",
        opt.eta_spatial,
        opt.best.overlap,
        opt.best.z_p * 1e6
    );
    Ok(())
}
