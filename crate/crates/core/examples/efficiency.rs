//! Single operating point of the reference device: rates, couplings and the
//! resulting retrieval efficiency.
//!
//! cargo run --example efficiency -- [Q_bar] [P_budget_W]

use ffwm::cavityqed::DeviceContext;
use ffwm::dispersion::MaterialIndex;
use ffwm::sweeps::{loss_ratio, split_budget, total_efficiency};

fn main() -> ffwm::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<f64>().expect("numeric argument"));
    let q_bar = args.next().unwrap_or(1e5);
    let p_budget = args.next().unwrap_or(15.2);

    let ctx = DeviceContext::reference(&MaterialIndex::diamond())?;
    let (p_a, p_b) = split_budget(p_budget);
    let ev = ctx.trace(q_bar, &ctx.pump_drive(p_a, p_b))?;

    println!("Q_bar = {q_bar:e}, P_budget = {p_budget} W ({p_a} W + {p_b} W)");
    for m in &ev.rates {
        println!(
            "  {:<6} Q = {:>10.3e}  total damping {:.4e} rad/s",
            m.role.as_str(),
            m.q_cav,
            m.gamma_bar
        );
    }
    println!("  Purcell factor     {:.1}", ev.purcell);
    println!("  g_e                {:.4e} rad/s", ev.inputs.g_e);
    println!("  g_nl               {:.4e} rad/s", ev.inputs.g_nl);

    let r = ev.report;
    println!("eta_idler = {:.4}, beta = {:.4}", r.eta_idler, r.beta);
    println!(
        "eta_emitter = {:.4}, eta_signal_loss = {:.4} ({})",
        r.eta_emitter,
        r.eta_signal_loss,
        r.flag.as_str()
    );
    if let Ok(ratio) = loss_ratio(r.beta, r.eta_idler) {
        println!("loss ratio (beta - eta) / (1 - eta) = {ratio:.4}");
    }
    for eta_spatial in [0.21, 0.66] {
        println!(
            "total with eta_spatial = {eta_spatial}: {:.4}",
            total_efficiency(r.eta_idler, eta_spatial)
        );
    }
    Ok(())
}
