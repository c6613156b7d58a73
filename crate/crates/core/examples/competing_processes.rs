//! Coherence lengths of the four-wave-mixing processes that compete with the
//! designed conversion in the reference diamond ring.
//!
//! cargo run --example competing_processes

use ffwm::dispersion::{
    competing_process_scan, EffectiveIndexCurve, FwmQuartet, MaterialIndex, RingGeometry,
};

fn main() -> ffwm::Result<()> {
    let quartet = FwmQuartet::reference();
    let curve = EffectiveIndexCurve::diamond_ring_example();
    let material = MaterialIndex::diamond();
    let r = RingGeometry::reference().r;

    for p in competing_process_scan(&quartet, &curve, &material, r)? {
        let l = if p.coherence_length.is_finite() {
            format!("{:.3} um", p.coherence_length * 1e6)
        } else {
            "inf".into()
        };
        println!(
            "{:<22} {:.4} + {:.4} um  dk = {:>9.4} /um  L = {:<10} weight {:.3}{}",
            p.kind.label(),
            p.lambda_signal * 1e6,
            p.lambda_partner * 1e6,
            p.delta_k * 1e-6,
            l,
            p.frequency_weight,
            if p.extrapolated { "  (bulk index)" } else { "" }
        );
    }
    Ok(())
}
