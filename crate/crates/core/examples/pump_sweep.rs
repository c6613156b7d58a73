//! Idler efficiency against pump budget for several cavity Q values,
//! written as CSV and SVG.
//!
//! cargo run --example pump_sweep -- [out_dir]

use std::path::PathBuf;

use ffwm::cavityqed::DeviceContext;
use ffwm::dispersion::MaterialIndex;
use ffwm::io::svg::{LinePlot, Series};
use ffwm::io::write_string;
use ffwm::sweeps::{log_grid, sweep, sweep_table, SweepSpec};

fn main() -> ffwm::Result<()> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "out/pump_sweep".into()),
    );
    let ctx = DeviceContext::reference(&MaterialIndex::diamond())?;
    let q_values = vec![1e3, 1e4, 1e5, 1e6];
    let budgets = log_grid(1e-3, 1e4, 141);
    let spec = SweepSpec::new(q_values.clone(), vec![0.48], budgets.clone(), ctx)?;
    let rows = sweep(&spec)?;

    let mut plot = LinePlot {
        title: "eta_idler vs pump budget (r_ZPL = 0.48)".into(),
        x_label: "P_budget (W)".into(),
        y_label: "efficiency".into(),
        log_x: true,
        series: Vec::new(),
    };
    for (q, chunk) in q_values.iter().zip(rows.chunks(budgets.len())) {
        let (i, best) = chunk
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.eta_idler().total_cmp(&b.1.eta_idler()))
            .expect("non-empty grid");
        println!(
            "Q = {q:.0e}: best grid point eta = {:.4} at {:.3} W (index {i})",
            best.eta_idler(),
            best.p_budget
        );
        plot.series.push(Series::new(
            format!("eta Q={q:.0e}"),
            chunk.iter().map(|r| (r.p_budget, r.eta_idler())).collect(),
        ));
        plot.series.push(
            Series::new(
                format!("beta Q={q:.0e}"),
                chunk.iter().map(|r| (r.p_budget, r.beta())).collect(),
            )
            .dashed(),
        );
    }

    write_string(&out.join("sweep.csv"), sweep_table(&rows).as_str())?;
    write_string(&out.join("sweep.svg"), &plot.render())?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}
