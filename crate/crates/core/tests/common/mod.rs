#![allow(dead_code)]

use ffwm::cavityqed::{build_matrix, HamiltonianInputs};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Channel yields `(eta_emitter, eta_signal_loss, eta_idler)` by classical RK4
/// on the augmented state `(c, y)` with `c' = -A c` and `y_r' = w_r |c_r|^2`.
/// The step is `h = h_scale / max |row sum of A|` and integration stops once
/// the remaining population is below `tail`.
pub fn rk4_yields(inputs: &HamiltonianInputs, c0: [f64; 3], h_scale: f64, tail: f64) -> [f64; 3] {
    let a = build_matrix(inputs);
    let m: Vec<[Complex64; 3]> = (0..3).map(|i| [a[(i, 0)], a[(i, 1)], a[(i, 2)]]).collect();
    let scale = (0..3)
        .map(|i| m[i].iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let h = h_scale / scale;
    let w = [inputs.m_e, inputs.m_sig, inputs.gamma_idl];

    type State = ([Complex64; 3], [f64; 3]);
    let rhs = |s: &State| -> State {
        let mut dc = [Complex64::new(0.0, 0.0); 3];
        for (d, row) in dc.iter_mut().zip(&m) {
            *d = -row.iter().zip(&s.0).map(|(a, c)| a * c).sum::<Complex64>();
        }
        let dy = [
            w[0] * s.0[0].norm_sqr(),
            w[1] * s.0[1].norm_sqr(),
            w[2] * s.0[2].norm_sqr(),
        ];
        (dc, dy)
    };
    let axpy = |s: &State, k: &State, f: f64| -> State {
        let mut o = *s;
        for i in 0..3 {
            o.0[i] += k.0[i] * f;
            o.1[i] += k.1[i] * f;
        }
        o
    };

    let mut s: State = (
        [
            Complex64::new(c0[0], 0.0),
            Complex64::new(c0[1], 0.0),
            Complex64::new(c0[2], 0.0),
        ],
        [0.0; 3],
    );
    for _ in 0..50_000_000u64 {
        let pop: f64 = s.0.iter().map(|c| c.norm_sqr()).sum();
        if pop < tail {
            break;
        }
        let k1 = rhs(&s);
        let k2 = rhs(&axpy(&s, &k1, h / 2.0));
        let k3 = rhs(&axpy(&s, &k2, h / 2.0));
        let k4 = rhs(&axpy(&s, &k3, h));
        for i in 0..3 {
            s.0[i] += (k1.0[i] + k2.0[i] * 2.0 + k3.0[i] * 2.0 + k4.0[i]) * (h / 6.0);
            s.1[i] += (k1.1[i] + 2.0 * k2.1[i] + 2.0 * k3.1[i] + k4.1[i]) * (h / 6.0);
        }
    }
    s.1
}

/// Rate sets around an O(1) template: per-entry factors in [0.3, 3] and a
/// global scale spanning `10^-3 .. 10^3`.
pub fn random_rate_sets(n: usize, seed: u64) -> Vec<HamiltonianInputs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let global = 10f64.powf(-3.0 + 6.0 * i as f64 / (n - 1).max(1) as f64);
            let mut f = || global * 10f64.powf(rng.random_range(-0.523..0.477));
            let mut inputs = HamiltonianInputs {
                g_e: f(),
                g_nl: 1.5 * f(),
                m_e: 0.5 * f(),
                m_sig: f(),
                gamma_idl: 2.0 * f(),
                delta_sig: 0.3 * f(),
                delta_idl: -0.5 * f(),
            };
            if i % 5 == 0 {
                inputs.delta_sig = 0.0;
                inputs.delta_idl = 0.0;
            }
            inputs
        })
        .collect()
}
