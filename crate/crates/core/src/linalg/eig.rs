//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation acts on a `(p, q)` plane. The off-diagonal entry
//! `a_pq = r e^{iφ}` is first made real by a phase on column `q`, then a real
//! Jacobi rotation annihilates it. Sweeps visit pairs in row-major order, so
//! the result is a deterministic function of the input.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{ComplexMatrix, HERMITIAN_TOL};
use crate::math::sqrt;
use crate::{Error, Result};

/// Convergence threshold on the off-diagonal Frobenius norm, relative to
/// `max(1, ‖H‖_F)`.
pub const EIG_OFFDIAG_TOL: f64 = 1e-12;

/// Maximum number of full sweeps before giving up.
pub const EIG_MAX_SWEEPS: usize = 100;

/// `H = V diag(eigenvalues) V^dagger` with eigenvalues ascending.
///
/// Each eigenvector column is phased so that its largest-magnitude component
/// (first one on ties) is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Rebuilds `V Λ V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        compose(&self.eigenvectors, &self.eigenvalues)
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// `V diag(values) V^dagger`.
pub(crate) fn compose(v: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let n = v.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in values.iter().enumerate() {
        if lambda == 0.0 {
            continue;
        }
        for i in 0..n {
            let vi = v[(i, k)] * lambda;
            if vi == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += vi * v[(j, k)].conj();
            }
        }
    }
    out
}

fn off_diagonal_norm_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Eigendecomposition of a Hermitian matrix.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    let deviation = h.hermitian_deviation()?;
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.rows();

    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(h[(i, i)].re, 0.0)
        } else {
            (h[(i, j)] + h[(j, i)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);

    let scale = h.frobenius_norm().max(1.0);
    let threshold = EIG_OFFDIAG_TOL * scale;
    let mut converged = off_diagonal_norm_sqr(&a) <= threshold * threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == EIG_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm_sqr(&a) <= threshold * threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    for k in 0..n {
        fix_phase(&mut eigenvectors, k);
    }
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let r = g.norm();
    if r < f64::MIN_POSITIVE {
        return;
    }
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Phase e = g / |g|; after the column-q phase the 2x2 block is real symmetric.
    let e = g / r;
    let ec = e.conj();
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + sqrt(theta * theta + 1.0))
    } else {
        -1.0 / (-theta + sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / sqrt(t * t + 1.0);
    let s = t * c;

    // G = [[c, s], [-s ē, c ē]] on columns (p, q).
    // A <- A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ec * s;
        a[(k, q)] = akp * s + akq * ec * c;
    }
    // A <- G^dagger A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * e * s;
        a[(q, k)] = apk * s + aqk * e * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);

    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * ec * s;
        v[(k, q)] = vkp * s + vkq * ec * c;
    }
}

fn fix_phase(v: &mut ComplexMatrix, col: usize) {
    let n = v.rows();
    let mut best = 0;
    let mut best_abs = -1.0;
    for i in 0..n {
        let m = v[(i, col)].norm();
        // Strictly larger by more than rounding noise, so ties keep the first index.
        if m > best_abs + 1e-12 {
            best = i;
            best_abs = m;
        }
    }
    if best_abs <= 0.0 {
        return;
    }
    let phase = v[(best, col)].conj() / best_abs;
    for i in 0..n {
        v[(i, col)] *= phase;
    }
    v[(best, col)] = Complex64::new(v[(best, col)].norm(), 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use crate::qstate::{random_hermitian, Rng};

    #[test]
    fn sigma_z_spectrum() {
        let e = eig_hermitian(&pauli::z()).unwrap();
        assert_eq!(e.eigenvalues, [-1.0, 1.0]);
    }

    #[test]
    fn sigma_x_spectrum_and_vectors() {
        let e = eig_hermitian(&pauli::x()).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        let s = 0.5f64.sqrt();
        // (|0> - |1>)/sqrt2 and (|0> + |1>)/sqrt2; the tie on magnitude picks index 0.
        let minus = e.eigenvectors.column(0);
        let plus = e.eigenvectors.column(1);
        assert!((minus[0] - Complex64::new(s, 0.0)).norm() < 1e-14);
        assert!((minus[1] - Complex64::new(-s, 0.0)).norm() < 1e-14);
        assert!((plus[0] - Complex64::new(s, 0.0)).norm() < 1e-14);
        assert!((plus[1] - Complex64::new(s, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sigma_y_is_complex() {
        let e = eig_hermitian(&pauli::y()).unwrap();
        assert!(e.reconstruct().max_abs_diff(&pauli::y()) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = pauli::x();
        m[(0, 1)] = Complex64::new(2.0, 0.0);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
        assert!(matches!(eig_hermitian(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn random_16x16_reconstruction() {
        let mut rng = Rng::new(7);
        let h = random_hermitian(&mut rng, 16).unwrap();
        let e = eig_hermitian(&h).unwrap();
        let scale = h.max_abs().max(1.0);
        assert!(e.reconstruct().max_abs_diff(&h) <= 1e-10 * scale);
        let vv = &e.eigenvectors.adjoint() * &e.eigenvectors;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(16)) <= 1e-10);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn degenerate_identity() {
        let e = eig_hermitian(&ComplexMatrix::identity(5)).unwrap();
        assert_eq!(e.eigenvalues, [1.0; 5]);
        assert_eq!(e.eigenvectors, ComplexMatrix::identity(5));
    }

    #[test]
    fn deterministic() {
        let mut rng = Rng::new(99);
        let h = random_hermitian(&mut rng, 9).unwrap();
        assert_eq!(eig_hermitian(&h).unwrap(), eig_hermitian(&h).unwrap());
    }
}
