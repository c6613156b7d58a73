use proptest::prelude::*;

use ffwm::cavityqed::DeviceContext;
use ffwm::dispersion::MaterialIndex;
use ffwm::sweeps::{
    find_saturation, log_grid, saturation_grid, saturation_table, split_budget, split_budget_ratio,
    sweep_table, sweep_with, Execution, RowStatus, SweepSpec,
};

fn ctx() -> DeviceContext {
    DeviceContext::reference(&MaterialIndex::diamond()).unwrap()
}

#[test]
fn sweeps_repeat_exactly() {
    let spec = SweepSpec::new(
        vec![1e4, 1e5],
        vec![0.24, 0.48],
        log_grid(1e-2, 1e3, 31),
        ctx(),
    )
    .unwrap();
    let a = sweep_table(&sweep_with(&spec, Execution::Serial).unwrap());
    let b = sweep_table(&sweep_with(&spec, Execution::Parallel).unwrap());
    let c = sweep_table(&sweep_with(&spec, Execution::Parallel).unwrap());
    assert_eq!(a.as_str(), b.as_str());
    assert_eq!(b.as_str(), c.as_str());
    assert_eq!(a.rows(), spec.len());
}

#[test]
fn saturation_grid_is_order_independent() {
    let c = ctx();
    let q = [1e3, 1e5];
    let r = [0.04, 0.48];
    let s = saturation_table(
        &saturation_grid(&q, &r, &c, 1e4, Execution::Serial).unwrap(),
        0.66,
    );
    let p = saturation_table(
        &saturation_grid(&q, &r, &c, 1e4, Execution::Parallel).unwrap(),
        0.66,
    );
    assert_eq!(s.as_str(), p.as_str());
}

#[test]
fn saturation_beats_every_grid_point() {
    let c = ctx();
    for (q, r) in [(1e3, 0.48), (1e4, 0.24), (1e5, 0.48), (1e6, 0.04)] {
        let sat = find_saturation(q, r, &c, 1e4).unwrap();
        let spec = SweepSpec::new(vec![q], vec![r], log_grid(1e-3, 1e4, 200), c.clone()).unwrap();
        let rows = sweep_with(&spec, Execution::Parallel).unwrap();
        let best = rows.iter().map(|row| row.eta_idler()).fold(0.0, f64::max);
        assert!(
            sat.eta_star >= best - 1e-12,
            "Q {q:e} r {r}: {} < {best}",
            sat.eta_star
        );
        assert!(sat.beta_star >= sat.eta_star);
        assert!(sat.confirmed || sat.at_boundary);
        assert!(rows.iter().all(|row| row.status != RowStatus::Failed));
    }
}

proptest! {
    #[test]
    fn split_preserves_the_budget(p in 0.0f64..1e4, ratio in 0.01f64..100.0) {
        let (a, b) = split_budget(p);
        prop_assert!((2.0 * (a * b).sqrt() - p).abs() <= 1e-12 * p.max(1.0));
        let (a, b) = split_budget_ratio(p, ratio);
        prop_assert!((2.0 * (a * b).sqrt() - p).abs() <= 1e-10 * p.max(1.0));
        if p > 0.0 {
            prop_assert!((a / b - ratio).abs() <= 1e-10 * ratio);
        }
    }

    #[test]
    fn yields_stay_physical(q in 2.0f64..7.0, r in 0.01f64..1.0, p in -3.0f64..4.0) {
        let c = ctx();
        let spec = SweepSpec::new(vec![10f64.powf(q)], vec![r], vec![10f64.powf(p)], c).unwrap();
        let row = &sweep_with(&spec, Execution::Serial).unwrap()[0];
        let rep = &row.report;
        prop_assert_eq!(row.status, RowStatus::Ok);
        prop_assert!((rep.total() - 1.0).abs() < 1e-6);
        prop_assert!(rep.eta_idler >= -1e-12 && rep.beta >= rep.eta_idler - 1e-12);
        prop_assert!(rep.beta <= 1.0 + 1e-12);
    }
}
