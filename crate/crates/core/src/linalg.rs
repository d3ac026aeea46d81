//! Complex dense linear algebra helpers shared across the crate.
//!
//! Thin wrappers over nalgebra: type aliases, max-entry norms used by the
//! certificates, and a Hermitian eigendecomposition with a deterministic
//! eigenvalue ordering.

use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest entry modulus. Zero for empty matrices.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry modulus of `a - b`. Panics when the shapes differ.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff: shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entry modulus of `v - w` for vectors.
pub fn max_abs_diff_vec(v: &CVector, w: &CVector) -> f64 {
    assert_eq!(v.len(), w.len(), "max_abs_diff_vec: length mismatch");
    v.iter()
        .zip(w.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entry modulus of `m - I`. Panics when `m` is not square.
pub fn identity_violation(m: &CMatrix) -> f64 {
    assert!(m.is_square(), "identity_violation: matrix is not square");
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            worst = worst.max((m[(i, j)] - expected).norm());
        }
    }
    worst
}

/// Largest singular value. Zero for empty matrices.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |acc, s| acc.max(*s))
}

/// Numerical rank: number of singular values above `rel_tol * sigma_max`.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let sigma_max = sv.iter().fold(0.0f64, |acc, s| acc.max(*s));
    if sigma_max == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel_tol * sigma_max).count()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(g + g*)/2` before decomposing, so callers
/// may pass matrices that are Hermitian only up to rounding; how far the
/// input was from Hermitian is the caller's concern and is reported by the
/// relevant certificate, not here. Returns `(eigenvalues, eigenvectors)`
/// with real eigenvalues sorted in descending order (ties broken by the
/// original position, so the ordering is deterministic) and the matching
/// orthonormal eigenvectors as columns.
pub fn hermitian_eigen(g: &CMatrix) -> (DVector<f64>, CMatrix) {
    assert!(g.is_square(), "hermitian_eigen: matrix is not square");
    let n = g.nrows();
    let sym = (g + g.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("eigenvalues are finite")
            .then(i.cmp(&j))
    });
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lcg_matrix(n: usize, seed: u64) -> CMatrix {
        // Small deterministic pseudo-random fill, enough for smoke tests.
        let mut s = seed;
        let mut next = move || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        CMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let a = lcg_matrix(5, 7);
        let g = &a * a.adjoint();
        let (vals, vecs) = hermitian_eigen(&g);
        let diag = CMatrix::from_fn(5, 5, |i, j| {
            if i == j {
                c(vals[i], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        let back = &vecs * diag * vecs.adjoint();
        assert!(max_abs_diff(&back, &g) < 1e-12);
        assert!(identity_violation(&(vecs.adjoint() * &vecs)) < 1e-12);
        for i in 1..5 {
            assert!(vals[i - 1] >= vals[i]);
        }
    }

    #[test]
    fn operator_norm_of_unitary_is_one() {
        let m = lcg_matrix(4, 3);
        let q = m.qr().q();
        assert!((operator_norm(&q) - 1.0).abs() < 1e-12);
        assert!(identity_violation(&(q.adjoint() * &q)) < 1e-12);
    }

    #[test]
    fn rank_detects_deficiency() {
        let mut m = lcg_matrix(4, 11);
        let col = CVector::from_column_slice(m.column(0).as_slice());
        m.set_column(3, &col);
        assert_eq!(rank(&m, 1e-12), 3);
        assert_eq!(rank(&CMatrix::zeros(3, 3), 1e-12), 0);
    }

    #[test]
    fn kronecker_matches_definition() {
        let a = lcg_matrix(2, 21);
        let b = lcg_matrix(3, 22);
        let k = a.kronecker(&b);
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..3 {
                    for j2 in 0..3 {
                        let got = k[(i1 * 3 + i2, j1 * 3 + j2)];
                        let want = a[(i1, j1)] * b[(i2, j2)];
                        assert!((got - want).norm() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn eigen_handles_exact_diagonal() {
        let g = CMatrix::from_fn(4, 4, |i, j| {
            if i == j && i % 2 == 0 {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        });
        let (vals, vecs) = hermitian_eigen(&g);
        assert_eq!(vals.iter().filter(|v| **v > 0.5).count(), 2);
        assert!(identity_violation(&(vecs.adjoint() * &vecs)) < 1e-14);
    }
}
