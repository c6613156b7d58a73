//! Enumerate the phase-matched pump pairs for the 6 um diamond ring and
//! compare against the designed quartet.
//!
//! cargo run --example phase_matching

use ffwm::dispersion::{
    out_of_plane_phase, solve_fpm, CavityMode, EffectiveIndexCurve, FwmQuartet, MaterialIndex,
    ModeLabel, RingGeometry,
};

fn main() -> ffwm::Result<()> {
    let geometry = RingGeometry::reference();
    let material = MaterialIndex::diamond();
    let curve = EffectiveIndexCurve::diamond_ring_example();
    curve.validate_against(&material)?;

    let design = FwmQuartet::reference();
    println!(
        "design: {} = {} + {}, idler {:.4} um",
        design.sig.m,
        design.a.m,
        design.b.m,
        design.idl.lambda * 1e6
    );

    let sig = CavityMode::resonant(ModeLabel::Signal, &curve, geometry.r, design.sig.m)?;
    println!(
        "signal resonance m = {} at {:.4} um (n_eff {:.4})",
        sig.m,
        sig.lambda * 1e6,
        sig.n_eff
    );

    let quartets = solve_fpm(&curve, geometry.r, &sig, (0.5e-6, 2.2e-6))?;
    println!(
        "{} pump splits with both pumps in 0.5-2.2 um; idlers beyond 1 um:",
        quartets.len()
    );
    println!(
        "{:>5} {:>5} {:>9} {:>9} {:>9} {:>8}",
        "m_A", "m_B", "lam_A", "lam_B", "lam_idl", "phase"
    );
    for q in quartets.iter().filter(|q| q.idl.lambda > 1e-6) {
        let n_idl = material.bulk_index(q.idl.lambda).unwrap_or(f64::NAN);
        let phase = out_of_plane_phase(&geometry, n_idl, q.idl.lambda);
        println!(
            "{:>5} {:>5} {:>9.4} {:>9.4} {:>9.4} {:>7.2}{}",
            q.a.m,
            q.b.m,
            q.a.lambda * 1e6,
            q.b.lambda * 1e6,
            q.idl.lambda * 1e6,
            phase.radians,
            if phase.exceeds_pi { "*" } else { "" }
        );
    }
    println!("* out-of-plane phase above pi");
    Ok(())
}
