use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::{Error, Result};

use super::system::{initial_state, CoefficientMatrix};

/// Per-eigenpair bound on `|A v - lambda v| / |A|`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Eigenvalue separation, relative to `|A|`, below which the closed-form yield
/// sums are considered unstable.
pub const DEGENERACY_GAP: f64 = 1e-8;
/// Eigenvector condition number above which the matrix is treated as defective.
pub const MAX_CONDITION: f64 = 1e12;

/// Eigen-decomposition of `A` together with the expansion weights of `c(0)`,
/// so that `c(t) = sum_j a_j exp(-lambda_j t) v_j`.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub eigenvalues: [Complex64; 3],
    /// Unit-norm eigenvectors as columns.
    pub vectors: Matrix3<Complex64>,
    pub weights: Vector3<Complex64>,
    /// Largest `|A v - lambda v| / |A|` over the three pairs.
    pub max_residual: f64,
    /// Frobenius condition number of the eigenvector matrix.
    pub condition: f64,
    /// Smallest pairwise eigenvalue distance relative to `|A|`.
    pub min_gap: f64,
}

impl EigenSolution {
    pub fn near_degenerate(&self) -> bool {
        self.min_gap < DEGENERACY_GAP
    }

    /// `c(t)` reconstructed from the modal expansion.
    pub fn amplitudes_at(&self, t: f64) -> Vector3<Complex64> {
        (0..3).fold(Vector3::zeros(), |acc, j| {
            acc + self.vectors.column(j) * (self.weights[j] * (-self.eigenvalues[j] * t).exp())
        })
    }
}

/// Diagonalises the 3x3 matrix through its characteristic cubic.
///
/// Roots come from Cardano's formula on the norm-scaled matrix followed by a
/// Newton polish; each eigenvector is the bilinear cross product of two rows
/// of `A - lambda I`. Eigenpairs are ordered by the index of their dominant
/// component and each vector is phased so that component is real positive.
pub fn eigensolve(a: &CoefficientMatrix, c0: [f64; 3]) -> Result<EigenSolution> {
    let scale = a.norm();
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Numerical(
            "coefficient matrix is zero or non-finite".into(),
        ));
    }
    let b = a.unscale(scale);

    let roots = cubic_roots(&b);
    let mut pairs: Vec<(Complex64, Vector3<Complex64>)> = Vec::with_capacity(3);
    for lambda in roots {
        let v = null_vector(&b, lambda).ok_or(Error::DegenerateSystem {
            condition: f64::INFINITY,
        })?;
        pairs.push((lambda, v));
    }
    pairs.sort_by(|x, y| {
        dominant_index(&x.1)
            .cmp(&dominant_index(&y.1))
            .then(x.0.re.total_cmp(&y.0.re))
    });

    let eigenvalues = [pairs[0].0 * scale, pairs[1].0 * scale, pairs[2].0 * scale];
    let vectors = Matrix3::from_columns(&[pairs[0].1, pairs[1].1, pairs[2].1]);

    let inverse = vectors.try_inverse().ok_or(Error::DegenerateSystem {
        condition: f64::INFINITY,
    })?;
    let condition = vectors.norm() * inverse.norm();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::DegenerateSystem { condition });
    }
    let weights = inverse * initial_state(c0);

    let max_residual = (0..3)
        .map(|j| {
            let v = vectors.column(j);
            (a * v - v * eigenvalues[j]).norm() / scale
        })
        .fold(0.0, f64::max);
    if !(max_residual <= RESIDUAL_TOLERANCE) {
        return Err(Error::Numerical(format!(
            "eigenpair residual {max_residual:e} exceeds tolerance"
        )));
    }

    let mut min_gap = f64::INFINITY;
    for i in 0..3 {
        for j in i + 1..3 {
            min_gap = min_gap.min((eigenvalues[i] - eigenvalues[j]).norm() / scale);
        }
    }

    Ok(EigenSolution {
        eigenvalues,
        vectors,
        weights,
        max_residual,
        condition,
        min_gap,
    })
}

/// Roots of `det(lambda I - B) = lambda^3 + p2 lambda^2 + p1 lambda + p0`.
fn cubic_roots(b: &CoefficientMatrix) -> [Complex64; 3] {
    let trace = b.trace();
    let minors = b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)] + b[(0, 0)] * b[(2, 2)]
        - b[(0, 2)] * b[(2, 0)]
        + b[(1, 1)] * b[(2, 2)]
        - b[(1, 2)] * b[(2, 1)];
    let det = b.determinant();
    let (p2, p1, p0) = (-trace, minors, -det);

    // depressed cubic y^3 + p y + q with lambda = y - p2/3
    let shift = p2 / 3.0;
    let p = p1 - p2 * p2 / 3.0;
    let q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let s1 = -q / 2.0 + disc;
    let s2 = -q / 2.0 - disc;
    let s = if s1.norm() >= s2.norm() { s1 } else { s2 };
    let u = s.cbrt();
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut roots = [Complex64::new(0.0, 0.0); 3];
    let mut uk = u;
    for root in roots.iter_mut() {
        let vk = if uk.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            -p / (3.0 * uk)
        };
        *root = uk + vk - shift;
        uk *= omega;
    }

    let poly = |x: Complex64| ((x + p2) * x + p1) * x + p0;
    let dpoly = |x: Complex64| (3.0 * x + 2.0 * p2) * x + p1;
    for root in roots.iter_mut() {
        for _ in 0..4 {
            let f = poly(*root);
            let df = dpoly(*root);
            if df.norm() == 0.0 {
                break;
            }
            let next = *root - f / df;
            if poly(next).norm() < f.norm() {
                *root = next;
            } else {
                break;
            }
        }
    }
    roots
}

fn cross(u: Vector3<Complex64>, w: Vector3<Complex64>) -> Vector3<Complex64> {
    Vector3::new(
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    )
}

fn null_vector(b: &CoefficientMatrix, lambda: Complex64) -> Option<Vector3<Complex64>> {
    let m = b - CoefficientMatrix::identity() * lambda;
    let rows: Vec<Vector3<Complex64>> = (0..3).map(|i| m.row(i).transpose()).collect();
    let candidates = [
        cross(rows[0], rows[1]),
        cross(rows[0], rows[2]),
        cross(rows[1], rows[2]),
    ];
    let best = candidates
        .into_iter()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))?;
    let norm = best.norm();
    if !(norm > 1e-300) {
        return None;
    }
    let mut v = best / Complex64::from(norm);

    // one step of inverse iteration tightens vectors of nearly-coincident roots
    let shifted = m + CoefficientMatrix::identity() * Complex64::new(1e-14, 0.0);
    if let Some(w) = shifted.lu().solve(&v) {
        let wn = w.norm();
        if wn.is_finite() && wn > 0.0 {
            let refined = w / Complex64::from(wn);
            if (m * refined).norm() < (m * v).norm() {
                v = refined;
            }
        }
    }

    let k = dominant_index(&v);
    let phase = v[k] / Complex64::from(v[k].norm());
    Some(v / phase)
}

fn dominant_index(v: &Vector3<Complex64>) -> usize {
    let mut best = 0;
    for i in 1..3 {
        if v[i].norm() > v[best].norm() * (1.0 + 1e-12) {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cavityqed::system::{build_matrix, HamiltonianInputs, EMITTER_EXCITED};

    #[test]
    fn diagonal_matrix_is_its_own_decomposition() {
        let a = build_matrix(&HamiltonianInputs {
            m_e: 1.0,
            m_sig: 3.0,
            gamma_idl: 7.0,
            ..Default::default()
        });
        let sol = eigensolve(&a, [0.3, -0.2, 0.9]).unwrap();
        for j in 0..3 {
            assert!((sol.eigenvalues[j] - a[(j, j)]).norm() < 1e-14);
        }
        assert!((sol.vectors - Matrix3::identity()).norm() < 1e-14);
        assert!((sol.weights - Vector3::new(0.3.into(), (-0.2).into(), 0.9.into())).norm() < 1e-14);
    }

    // With g_nl = 0 the emitter-signal block has eigenvalues
    // (a + d)/2 +- sqrt(((a - d)/2)^2 - g_e^2) with a = M_e/2, d = M_sig/2 + i D_sig.
    #[test]
    fn block_case_matches_quadratic_formula() {
        let inputs = HamiltonianInputs {
            g_e: 3.7e10,
            m_e: 7.3e8,
            m_sig: 1.5e10,
            gamma_idl: 9.3e13,
            delta_sig: 2e9,
            ..Default::default()
        };
        let a = build_matrix(&inputs);
        let sol = eigensolve(&a, EMITTER_EXCITED).unwrap();
        let (x, d) = (a[(0, 0)], a[(1, 1)]);
        let root = (((x - d) / 2.0).powi(2) - Complex64::from(inputs.g_e * inputs.g_e)).sqrt();
        let mut expected = [(x + d) / 2.0 + root, (x + d) / 2.0 - root, a[(2, 2)]];
        let mut got = sol.eigenvalues;
        let key = |z: &Complex64| (z.re, z.im);
        expected.sort_by(|p, q| key(p).partial_cmp(&key(q)).unwrap());
        got.sort_by(|p, q| key(p).partial_cmp(&key(q)).unwrap());
        for (e, g) in expected.iter().zip(&got) {
            assert!((e - g).norm() / e.norm() < 1e-12, "{e} vs {g}");
        }
    }

    #[test]
    fn reference_like_rates_reconstruct_initial_state() {
        let inputs = HamiltonianInputs {
            g_e: 3.7e10,
            g_nl: 1.2e13,
            m_e: 7.3e8,
            m_sig: 1.5e10,
            gamma_idl: 9.3e13,
            ..Default::default()
        };
        let sol = eigensolve(&build_matrix(&inputs), EMITTER_EXCITED).unwrap();
        assert!(sol.max_residual <= RESIDUAL_TOLERANCE);
        let c = sol.amplitudes_at(0.0);
        assert!((c - initial_state(EMITTER_EXCITED)).norm() < 1e-10);
        assert!(sol.eigenvalues.iter().all(|l| l.re > 0.0));
    }

    #[test]
    fn repeated_diagonal_is_flagged_degenerate() {
        let a = build_matrix(&HamiltonianInputs {
            m_e: 2.0,
            m_sig: 2.0,
            gamma_idl: 2.0,
            ..Default::default()
        });
        assert!(matches!(
            eigensolve(&a, EMITTER_EXCITED),
            Err(Error::DegenerateSystem { .. })
        ));
    }
}
