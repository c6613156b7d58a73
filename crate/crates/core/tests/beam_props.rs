use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ffwm::beamprop::synthetic::{gaussian_far_field, radial_far_field};
use ffwm::beamprop::{
    clip_na, debye_wolf, gaussian_overlap, optimize_spatial, FarField, GaussianBeamSpec, PlaneGrid,
    SpatialConfig, TransversePlaneField,
};

const LAMBDA: f64 = 1.301e-6;

fn random_far_field(seed: u64, s_max: f64, n: usize) -> FarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape =
        FarField::from_fn(LAMBDA, s_max, n, |_, _, _| [Complex64::new(0.0, 0.0); 3]).unwrap();
    let mut a = shape.a.clone();
    for j in 0..n {
        for i in 0..n {
            let (sx, sy) = (shape.sx.at(i), shape.sy.at(j));
            if sx * sx + sy * sy < 0.98 {
                let mut c =
                    || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                a[j * n + i] = [c(), c(), c()];
            }
        }
    }
    FarField::new(LAMBDA, shape.sx, shape.sy, a).unwrap()
}

#[test]
fn focusing_is_linear() {
    let f = random_far_field(1, 0.8, 31);
    let g = radial_far_field(LAMBDA, 0.4, 0.8, 31).unwrap();
    let (alpha, beta) = (Complex64::new(0.3, -1.2), Complex64::new(-0.7, 0.4));
    let mixed = FarField::new(
        LAMBDA,
        f.sx,
        f.sy,
        f.a.iter()
            .zip(&g.a)
            .map(|(u, v)| {
                [
                    alpha * u[0] + beta * v[0],
                    alpha * u[1] + beta * v[1],
                    alpha * u[2] + beta * v[2],
                ]
            })
            .collect(),
    )
    .unwrap();
    let grid = PlaneGrid::square(4e-6, 17).unwrap();
    let z = 0.7e-6;
    let (ef, eg, em) = (
        debye_wolf(&f, &grid, z).unwrap(),
        debye_wolf(&g, &grid, z).unwrap(),
        debye_wolf(&mixed, &grid, z).unwrap(),
    );
    let scale =
        em.e.iter()
            .flat_map(|v| v.iter().map(|c| c.norm()))
            .fold(0.0, f64::max);
    for ((a, b), m) in ef.e.iter().zip(&eg.e).zip(&em.e) {
        for k in 0..3 {
            assert!((alpha * a[k] + beta * b[k] - m[k]).norm() <= 1e-12 * scale);
        }
    }
}

#[test]
fn parseval_at_256_squared() {
    for (field, na) in [
        (gaussian_far_field(LAMBDA, 0.3, 0.9, 181).unwrap(), 0.9),
        (radial_far_field(LAMBDA, 0.5, 0.95, 201).unwrap(), 0.95),
    ] {
        let (clipped, _) = clip_na(&field, na).unwrap();
        let plane = debye_wolf(&clipped, &PlaneGrid::square(20e-6, 256).unwrap(), 3e-6).unwrap();
        let ratio = plane.power() / clipped.plane_norm();
        assert!((ratio - 1.0).abs() < 0.01, "{ratio}");
    }
}

#[test]
fn clip_fraction_matches_analytic_cap() {
    // Radiance uniform in solid angle out to s = 0.95: the captured share is
    // (1 - cos theta_NA) / (1 - cos theta_max).
    let edge = 0.95f64;
    let f = FarField::from_fn(LAMBDA, 1.0, 1201, |sx, sy, _| {
        let on = if sx * sx + sy * sy < edge * edge {
            1.0
        } else {
            0.0
        };
        [
            Complex64::new(on, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]
    })
    .unwrap();
    let cap = |s: f64| 1.0 - (1.0 - s * s).sqrt();
    for na in [0.3, 0.6, 0.9] {
        let (_, frac) = clip_na(&f, na).unwrap();
        let analytic = cap(na) / cap(edge);
        assert!(
            (frac - analytic).abs() / analytic < 0.01,
            "NA {na}: {frac} vs {analytic}"
        );
    }
}

#[test]
fn clip_fraction_matches_polar_quadrature() {
    let theta = 0.5;
    let f = gaussian_far_field(LAMBDA, theta, 0.99, 401).unwrap();
    // |a|^2 / s_z for the Gaussian spectrum is (s_z^2 + s_x^2) g^2 / s_z; the s_x^2
    // term averages to rho^2 / 2 over the azimuth.
    let radial_density = |rho: f64| {
        let sz = (1.0 - rho * rho).sqrt();
        let g2 = (-2.0 * rho * rho / (theta * theta)).exp();
        2.0 * PI * rho * (sz * sz + rho * rho / 2.0) * g2 / sz
    };
    let integrate = |hi: f64| {
        let n = 20_000;
        let h = hi / n as f64;
        (0..n)
            .map(|i| radial_density((i as f64 + 0.5) * h) * h)
            .sum::<f64>()
    };
    for na in [0.4, 0.7, 0.9] {
        let (_, frac) = clip_na(&f, na).unwrap();
        let reference = integrate(na) / integrate(0.99);
        assert!(
            (frac - reference).abs() / reference < 0.01,
            "NA {na}: {frac} vs {reference}"
        );
    }
}

#[test]
fn grid_refinement_is_converged() {
    let z = [0.0, 1e-6];
    let run = |n_far: usize, n_plane: usize| {
        let f = gaussian_far_field(LAMBDA, 0.25, 0.7, n_far).unwrap();
        let cfg = SpatialConfig {
            plane: PlaneGrid::square(10e-6, n_plane).unwrap(),
            apply_waveplate: false,
            ..Default::default()
        };
        optimize_spatial(&f, 0.6, &z, 0.9, &cfg).unwrap()
    };
    let coarse = run(81, 101);
    let fine = run(161, 201);
    let change = (coarse.best.overlap - fine.best.overlap).abs() / fine.best.overlap;
    assert!(
        change < 0.005,
        "{} vs {}",
        coarse.best.overlap,
        fine.best.overlap
    );
    assert!((fine.eta_spatial - 0.9 * fine.best.overlap).abs() < 1e-15);
    assert!(fine.captured_fraction > 0.0 && fine.captured_fraction <= 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn overlap_is_a_probability(seed in 0u64..1000, w0_um in 0.5f64..8.0, dz_um in -10.0f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grid = PlaneGrid::square(8e-6, 33).unwrap();
        let vals: Vec<[Complex64; 3]> = (0..grid.len())
            .map(|_| {
                let mut c = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                [c(), c(), c()]
            })
            .collect();
        let field = TransversePlaneField::new(grid, 0.0, vals).unwrap();
        let spec = GaussianBeamSpec::new(w0_um * 1e-6, dz_um * 1e-6, LAMBDA).unwrap();
        let o = gaussian_overlap(&field, &spec).unwrap();
        prop_assert!((0.0..=1.0).contains(&o), "{o}");
    }
}
