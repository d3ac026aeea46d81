//! Representations with a marked unit vector, and the operations that act
//! on them independently of any particular GNS output: restriction to a
//! vector state, pullback along a morphism, and the cyclicity test.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{verify_morphism, Algebra, Element, MorphismCertificate, StarMorphism};
use crate::error::Error;
use crate::linalg::{CMatrix, CVector};
use crate::states::State;
use crate::tol;

/// A representation of an algebra on `C^d` together with a unit vector.
///
/// The action is stored as the image matrix of every basis element; images
/// of general elements are linear combinations. Construction checks shape,
/// normalization of the point, and unitality of the action; the full
/// *-homomorphism laws are certified on demand by [`PointedRep::verify`].
#[derive(Clone, Debug, PartialEq)]
pub struct PointedRep {
    algebra: Algebra,
    hilbert_dim: usize,
    images: Vec<CMatrix>,
    omega: CVector,
}

/// Result of the cyclicity test: the rank of the orbit of the marked
/// vector under the represented basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicityReport {
    pub orbit_rank: usize,
    pub hilbert_dim: usize,
    pub cyclic: bool,
}

impl PointedRep {
    /// Wraps basis images and a marked vector, checking shapes, point
    /// normalization, and that the unit acts as the identity.
    pub fn new(algebra: &Algebra, images: Vec<CMatrix>, omega: CVector) -> Result<Self, Error> {
        let d = omega.len();
        if d == 0 || images.len() != algebra.dim() {
            return Err(Error::VectorLength {
                expected: algebra.dim(),
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::MatrixShape {
                rows: bad.nrows(),
                cols: bad.ncols(),
                expected_rows: d,
                expected_cols: d,
            });
        }
        let deviation = (omega.norm() - 1.0).abs();
        if deviation > tol::STRUCTURAL {
            return Err(Error::PointNotNormalized {
                violation: deviation,
            });
        }
        let rep = PointedRep {
            algebra: algebra.clone(),
            hilbert_dim: d,
            images,
            omega,
        };
        let unit_image = rep
            .apply(&rep.algebra.unit())
            .expect("unit is in the algebra");
        let violation = crate::linalg::identity_violation(&unit_image);
        if violation > tol::STRUCTURAL {
            return Err(Error::UnitImage { violation });
        }
        Ok(rep)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn hilbert_dim(&self) -> usize {
        self.hilbert_dim
    }

    /// The image matrix of the `i`-th basis element.
    pub fn image(&self, i: usize) -> &CMatrix {
        &self.images[i]
    }

    /// The marked unit vector.
    pub fn omega(&self) -> &CVector {
        &self.omega
    }

    /// The image of an arbitrary element, by linear extension.
    pub fn apply(&self, a: &Element) -> Result<CMatrix, Error> {
        if a.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let coords = a.coords();
        let mut out = CMatrix::zeros(self.hilbert_dim, self.hilbert_dim);
        for (i, image) in self.images.iter().enumerate() {
            if coords[i] != Complex64::ZERO {
                out += image.map(|x| coords[i] * x);
            }
        }
        Ok(out)
    }

    /// The columns `π(e_i)Ω` for all basis elements, the orbit of the
    /// marked vector under the basis.
    pub fn orbit_matrix(&self) -> CMatrix {
        let mut orbit = CMatrix::zeros(self.hilbert_dim, self.algebra.dim());
        for (i, image) in self.images.iter().enumerate() {
            orbit.set_column(i, &(image * &self.omega));
        }
        orbit
    }

    /// The action viewed as a linear map into the full matrix algebra on
    /// the representation space (unverified; see [`PointedRep::verify`]).
    pub fn as_star_morphism(&self) -> StarMorphism {
        let target = Algebra::full_matrix(self.hilbert_dim);
        let mut matrix = CMatrix::zeros(target.dim(), self.algebra.dim());
        for (i, image) in self.images.iter().enumerate() {
            let coords = Element::from_blocks(&target, vec![image.clone()])
                .expect("image is square of the representation dimension")
                .coords();
            matrix.set_column(i, &coords);
        }
        StarMorphism::new(self.algebra.clone(), target, matrix)
            .expect("shape correct by construction")
    }

    /// Certifies the *-homomorphism laws of the action on the full basis.
    pub fn verify(&self, tol: f64) -> MorphismCertificate {
        verify_morphism(&self.as_star_morphism(), tol)
    }
}

/// The direct-sum representation of a block algebra acting on the sum of
/// its column spaces (for a single block, the defining representation),
/// with the given marked vector.
pub fn defining_rep(algebra: &Algebra, omega: CVector) -> Result<PointedRep, Error> {
    let total: usize = algebra.block_dims().iter().sum();
    if omega.len() != total {
        return Err(Error::VectorLength {
            expected: total,
            found: omega.len(),
        });
    }
    let mut images = Vec::with_capacity(algebra.dim());
    let mut offset = 0;
    for &n in algebra.block_dims() {
        for p in 0..n {
            for q in 0..n {
                let mut image = CMatrix::zeros(total, total);
                image[(offset + p, offset + q)] = Complex64::ONE;
                images.push(image);
            }
        }
        offset += n;
    }
    PointedRep::new(algebra, images, omega)
}

/// Precomposition with a verified morphism `f: A′ → A`: the same space and
/// marked vector, acted on through `f`. Cyclicity is not preserved in
/// general and is not assumed.
pub fn pullback_pointed(f: &StarMorphism, rep: &PointedRep) -> Result<PointedRep, Error> {
    if !f.is_verified() {
        return Err(Error::UnverifiedMorphism);
    }
    if rep.algebra() != f.target() {
        return Err(Error::EndpointMismatch);
    }
    let source = f.source();
    let mut images = Vec::with_capacity(source.dim());
    for j in 0..source.dim() {
        let fj = f.apply(&source.basis_element(j)).expect("basis element");
        images.push(rep.apply(&fj).expect("f lands in rep's algebra"));
    }
    PointedRep::new(source, images, rep.omega.clone())
}

/// The vector state of the marked vector: `ω_Ω(a) = ⟨Ω, π(a)Ω⟩`.
pub fn rest(rep: &PointedRep) -> Result<State, Error> {
    let coeffs = CVector::from_fn(rep.algebra.dim(), |i, _| {
        rep.omega.dotc(&(rep.image(i) * &rep.omega))
    });
    State::new(&rep.algebra, coeffs)
}

/// Tests whether the marked vector is cyclic: the orbit under the basis
/// must span the whole space. `rel_tol` scales the rank threshold by the
/// largest singular value of the orbit matrix.
pub fn is_cyclic(rep: &PointedRep, rel_tol: f64) -> CyclicityReport {
    let orbit_rank = crate::linalg::rank(&rep.orbit_matrix(), rel_tol);
    CyclicityReport {
        orbit_rank,
        hilbert_dim: rep.hilbert_dim,
        cyclic: orbit_rank == rep.hilbert_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{block_embed, identity_morphism};
    use crate::states::{state_from_density_matrix, DensityMatrix};

    fn basis_vector(dim: usize, i: usize) -> CVector {
        let mut v = CVector::zeros(dim);
        v[i] = Complex64::ONE;
        v
    }

    fn qubit_identity_rep(point: usize) -> PointedRep {
        let algebra = Algebra::full_matrix(2);
        defining_rep(&algebra, basis_vector(2, point)).unwrap()
    }

    #[test]
    fn defining_rep_of_single_block_is_the_identity_action() {
        let rep = qubit_identity_rep(0);
        assert_eq!(rep.hilbert_dim(), 2);
        for i in 0..4 {
            let (_, p, q) = rep.algebra().basis_position(i);
            let mut expected = CMatrix::zeros(2, 2);
            expected[(p, q)] = Complex64::ONE;
            assert_eq!(rep.image(i), &expected);
        }
        let cert = rep.verify(0.0);
        assert!(cert.pass, "defining action violates laws: {cert:?}");
    }

    #[test]
    fn defining_rep_of_direct_sum_acts_blockwise() {
        let algebra = Algebra::new(vec![2, 3]).unwrap();
        let omega = basis_vector(5, 3);
        let rep = defining_rep(&algebra, omega).unwrap();
        assert_eq!(rep.hilbert_dim(), 5);
        // Second block's e_{00} occupies position (2, 2).
        let i = algebra.basis_index(1, 0, 0);
        let mut expected = CMatrix::zeros(5, 5);
        expected[(2, 2)] = Complex64::ONE;
        assert_eq!(rep.image(i), &expected);
        assert!(rep.verify(0.0).pass);
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        let algebra = Algebra::full_matrix(2);
        let images: Vec<CMatrix> = (0..4).map(|_| CMatrix::identity(2, 2)).collect();
        let long = CVector::from_vec(vec![Complex64::ONE; 3]);
        assert!(matches!(
            PointedRep::new(&algebra, images.clone(), long),
            Err(Error::MatrixShape { .. })
        ));
        let unnormalized = CVector::from_vec(vec![Complex64::new(2.0, 0.0), Complex64::ZERO]);
        assert!(matches!(
            PointedRep::new(&algebra, images.clone(), unnormalized),
            Err(Error::PointNotNormalized { .. })
        ));
        // Unit must act as the identity: all-identity images send 1 to 4·𝟙.
        assert!(matches!(
            PointedRep::new(&algebra, images, basis_vector(2, 0)),
            Err(Error::UnitImage { .. })
        ));
    }

    #[test]
    fn rest_of_identity_rep_is_the_vector_state() {
        let rep = qubit_identity_rep(0);
        let omega = rest(&rep).unwrap();
        let expected =
            state_from_density_matrix(&DensityMatrix::pure(&basis_vector(2, 0)).unwrap());
        assert_eq!(omega.coeffs(), expected.coeffs());
    }

    #[test]
    fn pullback_along_identity_preserves_the_rep() {
        let rep = qubit_identity_rep(1);
        let pulled = pullback_pointed(&identity_morphism(rep.algebra()), &rep).unwrap();
        assert_eq!(&pulled, &rep);
    }

    #[test]
    fn pullback_along_block_embedding_loses_cyclicity() {
        // diag(a, a) on C^4 with Ω the first basis vector: the orbit stays
        // inside the first two coordinates.
        let f = block_embed(2, 2);
        let big = defining_rep(f.target(), basis_vector(4, 0)).unwrap();
        assert!(is_cyclic(&big, tol::STRUCTURAL).cyclic);
        let pulled = pullback_pointed(&f, &big).unwrap();
        let report = is_cyclic(&pulled, tol::STRUCTURAL);
        assert_eq!(report.orbit_rank, 2);
        assert!(!report.cyclic);
        // Restriction commutes with pullback on this instance.
        let direct = rest(&pulled).unwrap();
        let via_state = crate::states::pullback_state(&rest(&big).unwrap(), &f).unwrap();
        assert_eq!(direct.coeffs(), via_state.coeffs());
    }

    #[test]
    fn one_dimensional_point_is_always_cyclic() {
        let algebra = Algebra::full_matrix(1);
        let rep = defining_rep(&algebra, basis_vector(1, 0)).unwrap();
        assert!(is_cyclic(&rep, tol::STRUCTURAL).cyclic);
    }

    #[test]
    fn orbit_matrix_columns_are_basis_images_of_the_point() {
        let rep = qubit_identity_rep(0);
        let orbit = rep.orbit_matrix();
        for i in 0..4 {
            let expected = rep.image(i) * rep.omega();
            assert_eq!(orbit.column(i).into_owned(), expected);
        }
    }
}
