//! Saturated idler efficiency over cavity Q and emitter quality, with the
//! headline efficiency chain.
//!
//! cargo run --example saturation

use ffwm::cavityqed::DeviceContext;
use ffwm::dispersion::MaterialIndex;
use ffwm::sweeps::{
    log_grid, saturation_grid, total_efficiency, Execution, DEFAULT_P_MAX,
    DEFAULT_SPATIAL_EFFICIENCY,
};

fn main() -> ffwm::Result<()> {
    let ctx = DeviceContext::reference(&MaterialIndex::diamond())?;
    let q = log_grid(1e3, 1e6, 7);
    let r = [0.04, 0.24, 0.48, 1.0];
    let grid = saturation_grid(&q, &r, &ctx, DEFAULT_P_MAX, Execution::Parallel)?;

    print!("{:>8}", "Q_bar");
    for rr in r {
        print!("  r={rr:<5}");
    }
    println!();
    for chunk in grid.chunks(r.len()) {
        print!("{:>8.1e}", chunk[0].q_bar);
        for s in chunk {
            print!(
                "  {:.4}{}",
                s.eta_star,
                if s.at_boundary { "+" } else { " " }
            );
        }
        println!();
    }
    println!("+ maximum at the {DEFAULT_P_MAX} W cap");

    let s = grid
        .iter()
        .find(|s| s.q_bar == 1e5 && s.r_zpl == 0.48)
        .expect("grid point");
    println!(
        "Q = 1e5, r = 0.48: P* = {:.3} W, eta* = {:.4}, beta* = {:.4}, total = {:.4}",
        s.p_star,
        s.eta_star,
        s.beta_star,
        total_efficiency(s.eta_star, DEFAULT_SPATIAL_EFFICIENCY)
    );
    Ok(())
}
