mod common;

use ffwm::cavityqed::{
    lyapunov_yields, solve_yields, HamiltonianInputs, ReportFlag, EMITTER_EXCITED,
};

fn close(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn closed_form_matches_time_stepping() {
    for inputs in common::random_rate_sets(100, 42) {
        let rep = solve_yields(&inputs, EMITTER_EXCITED).unwrap();
        let oracle = common::rk4_yields(&inputs, EMITTER_EXCITED, 0.02, 1e-13);
        let closed = [rep.eta_emitter, rep.eta_signal_loss, rep.eta_idler];
        assert!(
            close(closed, oracle, 1e-6),
            "{inputs:?}\n{closed:?}\n{oracle:?}"
        );
        assert!((rep.total() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn lyapunov_route_agrees_with_eigen_route() {
    for inputs in common::random_rate_sets(60, 3) {
        let a = solve_yields(&inputs, EMITTER_EXCITED).unwrap();
        let b = lyapunov_yields(&inputs, EMITTER_EXCITED).unwrap();
        assert!(
            close(
                [a.eta_emitter, a.eta_signal_loss, a.eta_idler],
                [b.eta_emitter, b.eta_signal_loss, b.eta_idler],
                1e-9
            ),
            "{inputs:?}"
        );
    }
}

#[test]
fn signal_start_state() {
    // Starting in the signal mode exercises the off-diagonal weights.
    let inputs = HamiltonianInputs {
        g_e: 0.7,
        g_nl: 1.1,
        m_e: 0.4,
        m_sig: 0.9,
        gamma_idl: 2.5,
        delta_sig: 0.2,
        delta_idl: -0.1,
    };
    let c0 = [0.0, 1.0, 0.0];
    let rep = solve_yields(&inputs, c0).unwrap();
    let oracle = common::rk4_yields(&inputs, c0, 0.01, 1e-14);
    assert!(
        close(
            [rep.eta_emitter, rep.eta_signal_loss, rep.eta_idler],
            oracle,
            1e-7
        ),
        "{rep:?} {oracle:?}"
    );
}

#[test]
fn exceptional_point_uses_fallback() {
    // g_nl = 0, zero detuning and g_e = |m_e - m_sig| / 4 put the emitter/signal
    // block at its exceptional point.
    let inputs = HamiltonianInputs {
        g_e: 0.25,
        g_nl: 0.0,
        m_e: 2.0,
        m_sig: 1.0,
        gamma_idl: 3.0,
        delta_sig: 0.0,
        delta_idl: 0.0,
    };
    let rep = solve_yields(&inputs, EMITTER_EXCITED).unwrap();
    assert_eq!(rep.flag, ReportFlag::DegenerateFallback);
    let oracle = common::rk4_yields(&inputs, EMITTER_EXCITED, 0.01, 1e-14);
    assert!(
        close(
            [rep.eta_emitter, rep.eta_signal_loss, rep.eta_idler],
            oracle,
            1e-7
        ),
        "{rep:?} {oracle:?}"
    );
    assert_eq!(rep.eta_idler, 0.0);
}

#[test]
fn no_idler_loss_means_no_idler() {
    let inputs = HamiltonianInputs {
        g_e: 1.0,
        g_nl: 1.0,
        m_e: 0.5,
        m_sig: 1.0,
        gamma_idl: 0.0,
        delta_sig: 0.0,
        delta_idl: 0.0,
    };
    match solve_yields(&inputs, EMITTER_EXCITED) {
        Ok(rep) => assert!(rep.eta_idler.abs() < 1e-12),
        Err(e) => assert!(
            e.to_string().contains("diverge") || e.to_string().contains("defective"),
            "{e}"
        ),
    }
}
