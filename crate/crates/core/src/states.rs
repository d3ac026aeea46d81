//! States: unital positive linear functionals on a block algebra.
//!
//! A state is stored by its values on the matrix-unit basis. Validity means
//! unitality, Hermitian symmetry, and positivity; positivity is equivalent
//! to positive semidefiniteness of the Gram matrix `G_{ij} = ω(e_i* e_j)`,
//! which is also the bilinear form the GNS construction quotients by.
//! States pull back contravariantly along verified morphisms, and on a
//! single matrix block they correspond one-to-one with density matrices via
//! `ω(a) = trace(ρ a)`.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::algebra::{Algebra, Element, StarMorphism};
use crate::error::Error;
use crate::linalg::{hermitian_eigen, max_abs_diff, CMatrix, CVector};
use crate::tol;

/// Seed for the Cauchy–Schwarz spot checks in [`verify_state`], fixed so
/// verification is deterministic.
const CAUCHY_SCHWARZ_SEED: u64 = 0x05ca_1e00_00c5;

/// Number of random element pairs the Cauchy–Schwarz spot check draws.
const CAUCHY_SCHWARZ_PAIRS: usize = 100;

/// A state, presented by its values `ω(e_i)` on the matrix-unit basis.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    algebra: Algebra,
    coeffs: CVector,
    gram_min_eigenvalue: f64,
}

/// Outcome of checking the state axioms; each field is a violation
/// magnitude and `pass` holds exactly when `max_violation <= tol`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateCertificate {
    pub unitality: f64,
    pub gram_hermitian: f64,
    pub gram_positivity: f64,
    pub cauchy_schwarz: f64,
    pub max_violation: f64,
    pub tol: f64,
    pub pass: bool,
}

impl State {
    /// Builds a state and certifies the state axioms at the structural
    /// tolerance, rejecting functionals that fail them.
    pub fn new(algebra: &Algebra, coeffs: CVector) -> Result<Self, Error> {
        let state = State::new_unchecked(algebra, coeffs)?;
        let cert = verify_state(&state, tol::STRUCTURAL);
        if !cert.pass {
            return Err(Error::InvalidState(Box::new(cert)));
        }
        Ok(state)
    }

    /// Builds a functional without certifying the state axioms. The Gram
    /// spectrum is still computed so the positivity certificate is cached.
    pub fn new_unchecked(algebra: &Algebra, coeffs: CVector) -> Result<Self, Error> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::CoefficientLength {
                expected: algebra.dim(),
                found: coeffs.len(),
            });
        }
        let mut state = State {
            algebra: algebra.clone(),
            coeffs,
            gram_min_eigenvalue: 0.0,
        };
        let (eigenvalues, _) = hermitian_eigen(&state.gram_matrix());
        state.gram_min_eigenvalue = eigenvalues[eigenvalues.len() - 1];
        Ok(state)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// The values `ω(e_i)` in basis order.
    pub fn coeffs(&self) -> &CVector {
        &self.coeffs
    }

    /// Smallest eigenvalue of the Gram matrix, cached at construction.
    pub fn gram_min_eigenvalue(&self) -> f64 {
        self.gram_min_eigenvalue
    }

    /// Evaluates `ω(a)` by linear extension over the basis coordinates.
    pub fn evaluate(&self, a: &Element) -> Result<Complex64, Error> {
        if a.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.coeffs.dot(&a.coords()))
    }

    /// The Gram matrix `G_{ij} = ω(e_i* e_j)`, assembled exactly from the
    /// matrix-unit calculus (no floating-point products are formed).
    pub fn gram_matrix(&self) -> CMatrix {
        let dim = self.algebra.dim();
        let mut gram = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            let i_star = self.algebra.basis_adjoint_index(i);
            for j in 0..dim {
                if let Some(k) = self.algebra.basis_product_index(i_star, j) {
                    gram[(i, j)] = self.coeffs[k];
                }
            }
        }
        gram
    }
}

/// Checks unitality, Gram Hermitian positivity, and Cauchy–Schwarz on
/// seeded random element pairs, reporting the worst violations.
pub fn verify_state(omega: &State, tol: f64) -> StateCertificate {
    let algebra = &omega.algebra;

    let unit_value = omega
        .evaluate(&algebra.unit())
        .expect("unit belongs to the algebra");
    let unitality = (unit_value - Complex64::ONE).norm();

    let gram = omega.gram_matrix();
    let gram_hermitian = max_abs_diff(&gram, &gram.adjoint());
    let gram_positivity = (-omega.gram_min_eigenvalue).max(0.0);

    let mut rng = ChaCha12Rng::seed_from_u64(CAUCHY_SCHWARZ_SEED);
    let mut cauchy_schwarz: f64 = 0.0;
    for _ in 0..CAUCHY_SCHWARZ_PAIRS {
        let a = random_element(algebra, &mut rng);
        let b = random_element(algebra, &mut rng);
        let cross = omega
            .evaluate(&(&b.adjoint() * &a))
            .expect("same algebra")
            .norm_sqr();
        let aa = omega.evaluate(&(&a.adjoint() * &a)).expect("same algebra");
        let bb = omega.evaluate(&(&b.adjoint() * &b)).expect("same algebra");
        cauchy_schwarz = cauchy_schwarz.max(cross - aa.re * bb.re);
    }
    cauchy_schwarz = cauchy_schwarz.max(0.0);

    let max_violation = unitality
        .max(gram_hermitian)
        .max(gram_positivity)
        .max(cauchy_schwarz);
    StateCertificate {
        unitality,
        gram_hermitian,
        gram_positivity,
        cauchy_schwarz,
        max_violation,
        tol,
        pass: max_violation <= tol,
    }
}

fn random_element(algebra: &Algebra, rng: &mut ChaCha12Rng) -> Element {
    let coords = CVector::from_fn(algebra.dim(), |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    Element::from_coords(algebra, &coords).expect("length matches by construction")
}

/// The pullback `ω ∘ f` of a state along a verified morphism
/// `f: A′ → A`; contravariant in `f`.
pub fn pullback_state(omega: &State, f: &StarMorphism) -> Result<State, Error> {
    if f.target() != &omega.algebra {
        return Err(Error::EndpointMismatch);
    }
    if !f.is_verified() {
        return Err(Error::UnverifiedMorphism);
    }
    // (ω∘f)(e′_j) = Σ_i f_{ij} ω(e_i): the plain transpose, not the adjoint.
    let coeffs = f.matrix().transpose() * &omega.coeffs;
    State::new(f.source(), coeffs)
}

/// A density matrix: Hermitian, positive semidefinite, trace one.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates and wraps a candidate density matrix.
    pub fn new(matrix: CMatrix) -> Result<Self, Error> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            let side = matrix.nrows().max(1);
            return Err(Error::MatrixShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                expected_rows: side,
                expected_cols: side,
            });
        }
        let hermitian = crate::linalg::max_abs_diff(&matrix, &matrix.adjoint());
        if hermitian > tol::STRUCTURAL {
            return Err(Error::InvalidDensityMatrix {
                reason: "matrix is not Hermitian",
                violation: hermitian,
            });
        }
        let trace = (matrix.trace() - Complex64::ONE).norm();
        if trace > tol::STRUCTURAL {
            return Err(Error::InvalidDensityMatrix {
                reason: "trace differs from one",
                violation: trace,
            });
        }
        let (eigenvalues, _) = hermitian_eigen(&matrix);
        let negativity = (-eigenvalues[eigenvalues.len() - 1]).max(0.0);
        if negativity > tol::STRUCTURAL {
            return Err(Error::InvalidDensityMatrix {
                reason: "matrix has a negative eigenvalue",
                violation: negativity,
            });
        }
        Ok(DensityMatrix { matrix })
    }

    /// The rank-one projector `|v⟩⟨v|` of a unit vector.
    pub fn pure(v: &CVector) -> Result<Self, Error> {
        let deviation = (v.norm() - 1.0).abs();
        if deviation > tol::STRUCTURAL {
            return Err(Error::PointNotNormalized {
                violation: deviation,
            });
        }
        DensityMatrix::new(v * v.adjoint())
    }

    /// The maximally mixed state's matrix, `1/n` times the identity.
    pub fn maximally_mixed(n: usize) -> Self {
        let matrix = CMatrix::identity(n, n).map(|x| x / n as f64);
        DensityMatrix { matrix }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn hilbert_dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// The state `a ↦ trace(ρ a)` on the full matrix algebra of `ρ`'s size.
pub fn state_from_density_matrix(rho: &DensityMatrix) -> State {
    let n = rho.hilbert_dim();
    let algebra = Algebra::full_matrix(n);
    let mut coeffs = CVector::zeros(algebra.dim());
    for p in 0..n {
        for q in 0..n {
            // trace(ρ e_{pq}) = ρ_{qp}.
            coeffs[algebra.basis_index(0, p, q)] = rho.matrix[(q, p)];
        }
    }
    State::new(&algebra, coeffs).expect("a density matrix induces a valid state")
}

/// The density matrix of a state on a single matrix block; inverse of
/// [`state_from_density_matrix`].
pub fn density_matrix_from_state(omega: &State) -> Result<DensityMatrix, Error> {
    let algebra = &omega.algebra;
    if !algebra.is_single_block() {
        return Err(Error::NotSingleBlock {
            blocks: algebra.block_dims().len(),
        });
    }
    let n = algebra.block_dims()[0];
    let mut rho = CMatrix::zeros(n, n);
    for p in 0..n {
        for q in 0..n {
            rho[(q, p)] = omega.coeffs[algebra.basis_index(0, p, q)];
        }
    }
    DensityMatrix::new(rho)
}

/// The convex combination `Σ w_β ω_{ρ_β}` on a direct sum, given one
/// density matrix per block and nonnegative weights summing to one.
pub fn state_from_block_densities(
    algebra: &Algebra,
    densities: &[DensityMatrix],
    weights: &[f64],
) -> Result<State, Error> {
    if densities.len() != algebra.block_dims().len()
        || weights.len() != algebra.block_dims().len()
        || densities
            .iter()
            .zip(algebra.block_dims())
            .any(|(rho, &n)| rho.hilbert_dim() != n)
    {
        return Err(Error::BlockShapeMismatch);
    }
    let mut coeffs = CVector::zeros(algebra.dim());
    for (block, (rho, &w)) in densities.iter().zip(weights).enumerate() {
        let n = algebra.block_dims()[block];
        for p in 0..n {
            for q in 0..n {
                coeffs[algebra.basis_index(block, p, q)] = rho.matrix[(q, p)] * w;
            }
        }
    }
    State::new(algebra, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The vector state of the first basis vector of C^2.
    fn spin_up() -> State {
        let v = CVector::from_vec(vec![Complex64::ONE, Complex64::ZERO]);
        state_from_density_matrix(&DensityMatrix::pure(&v).unwrap())
    }

    #[test]
    fn vector_state_evaluates_matrix_units() {
        let omega = spin_up();
        let a = omega.algebra().clone();
        // ω(e_{pq}) = δ_{p0}δ_{q0} for the first basis vector.
        for i in 0..a.dim() {
            let value = omega.evaluate(&a.basis_element(i)).unwrap();
            let expected = if i == 0 {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            assert_eq!(value, expected);
        }
        let cert = verify_state(&omega, tol::STRUCTURAL);
        assert!(cert.pass, "violation {}", cert.max_violation);
    }

    #[test]
    fn vector_state_gram_is_diagonal_projection() {
        // In basis (e_00, e_01, e_10, e_11) the Gram of the first-basis
        // vector state is diag(1, 0, 1, 0).
        let gram = spin_up().gram_matrix();
        let expected = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ONE,
            Complex64::ZERO,
        ]));
        assert_eq!(gram, expected);
    }

    #[test]
    fn maximally_mixed_gram_is_half_identity() {
        let omega = state_from_density_matrix(&DensityMatrix::maximally_mixed(2));
        let expected = CMatrix::identity(4, 4).map(|x| x * 0.5);
        assert_eq!(omega.gram_matrix(), expected);
        assert!((omega.gram_min_eigenvalue() - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn non_unital_functional_fails_verification() {
        // ω(a) = a_{01}: not unital, not positive.
        let a = Algebra::full_matrix(2);
        let mut coeffs = CVector::zeros(4);
        coeffs[a.basis_index(0, 0, 1)] = Complex64::ONE;
        let omega = State::new_unchecked(&a, coeffs).unwrap();
        let cert = verify_state(&omega, tol::STRUCTURAL);
        assert!(!cert.pass);
        assert!((cert.unitality - 1.0).abs() <= 1e-12);
        assert!((cert.gram_positivity - 0.5).abs() <= 1e-12);
        assert!(State::new(&a, omega.coeffs().clone()).is_err());
    }

    #[test]
    fn density_round_trip_is_tight() {
        let rho = DensityMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)],
        ))
        .unwrap();
        let omega = state_from_density_matrix(&rho);
        let back = density_matrix_from_state(&omega).unwrap();
        assert_eq!(back.matrix(), rho.matrix());
        assert!(density_matrix_from_state(
            &State::new(
                &Algebra::new(vec![1, 1]).unwrap(),
                CVector::from_vec(vec![c(0.5, 0.0), c(0.5, 0.0)])
            )
            .unwrap()
        )
        .is_err());
    }

    #[test]
    fn density_validation_rejects_bad_inputs() {
        let not_hermitian =
            CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(not_hermitian),
            Err(Error::InvalidDensityMatrix { .. })
        ));
        let wrong_trace = CMatrix::identity(2, 2);
        assert!(DensityMatrix::new(wrong_trace).is_err());
        let negative =
            CMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(DensityMatrix::new(negative).is_err());
        let unnormalized = CVector::from_vec(vec![c(2.0, 0.0), Complex64::ZERO]);
        assert!(matches!(
            DensityMatrix::pure(&unnormalized),
            Err(Error::PointNotNormalized { .. })
        ));
    }

    #[test]
    fn pullback_along_identity_is_bitwise() {
        let omega = spin_up();
        let id = crate::algebra::identity_morphism(omega.algebra());
        let pulled = pullback_state(&omega, &id).unwrap();
        assert_eq!(pulled.coeffs(), omega.coeffs());
    }

    #[test]
    fn pullback_requires_verified_matching_morphism() {
        let omega = spin_up();
        let raw = StarMorphism::new(
            Algebra::full_matrix(2),
            Algebra::full_matrix(2),
            CMatrix::identity(4, 4),
        )
        .unwrap();
        assert!(matches!(
            pullback_state(&omega, &raw),
            Err(Error::UnverifiedMorphism)
        ));
        let wrong_target = crate::algebra::identity_morphism(&Algebra::full_matrix(3));
        assert!(matches!(
            pullback_state(&omega, &wrong_target),
            Err(Error::EndpointMismatch)
        ));
    }

    #[test]
    fn pullback_agrees_with_pointwise_composition() {
        let f = crate::algebra::tensor_left_inclusion(2, 3);
        let rho = DensityMatrix::maximally_mixed(6);
        let omega = state_from_density_matrix(&rho);
        let pulled = pullback_state(&omega, &f).unwrap();
        for j in 0..f.source().dim() {
            let via_f = omega
                .evaluate(&f.apply(&f.source().basis_element(j)).unwrap())
                .unwrap();
            assert!((pulled.coeffs()[j] - via_f).norm() <= 1e-14);
        }
    }

    #[test]
    fn block_density_mixture_is_a_state() {
        let algebra = Algebra::new(vec![2, 3]).unwrap();
        let parts = [
            DensityMatrix::maximally_mixed(2),
            DensityMatrix::maximally_mixed(3),
        ];
        let omega = state_from_block_densities(&algebra, &parts, &[0.25, 0.75]).unwrap();
        let one = omega.evaluate(&algebra.unit()).unwrap();
        assert!((one - Complex64::ONE).norm() <= 1e-12);
        let cert = verify_state(&omega, tol::STRUCTURAL);
        assert!(cert.pass);
        assert!(state_from_block_densities(&algebra, &parts[..1], &[1.0]).is_err());
    }

    #[test]
    fn cauchy_schwarz_spot_check_is_deterministic() {
        let omega = spin_up();
        let first = verify_state(&omega, tol::STRUCTURAL);
        let second = verify_state(&omega, tol::STRUCTURAL);
        assert_eq!(first.cauchy_schwarz, second.cauchy_schwarz);
    }
}
