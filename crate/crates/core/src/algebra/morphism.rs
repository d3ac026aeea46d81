//! Unital *-homomorphisms between block algebras, with certificates.
//!
//! A morphism is stored as the dense matrix of the underlying linear map on
//! matrix-unit coordinates. The *-homomorphism axioms (unitality, adjoint
//! preservation, multiplicativity) are never assumed: [`verify_morphism`]
//! checks them on the whole basis and records the worst violation, and the
//! catalog constructors return pre-verified maps.

use num_complex::Complex64;
use serde::Serialize;

use super::tensor::kron;
use super::{Algebra, Element};
use crate::error::Error;
use crate::linalg::{max_abs_diff_vec, CMatrix};
use crate::tol;

/// A linear map between algebras presented by its coordinate matrix.
///
/// `matrix` has shape `target.dim() x source.dim()`; column `j` holds the
/// coordinates of the image of the `j`-th source matrix unit. The `verified`
/// flag records whether the *-homomorphism axioms have been certified.
#[derive(Clone, Debug, PartialEq)]
pub struct StarMorphism {
    source: Algebra,
    target: Algebra,
    matrix: CMatrix,
    verified: bool,
}

/// Outcome of checking the *-homomorphism axioms on the full basis.
///
/// Each field is a max-absolute-entry violation; `pass` holds exactly when
/// `max_violation <= tol`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MorphismCertificate {
    pub unitality: f64,
    pub adjoint: f64,
    pub multiplicativity: f64,
    pub max_violation: f64,
    pub tol: f64,
    pub pass: bool,
}

impl StarMorphism {
    /// Wraps a coordinate matrix as an unverified morphism.
    pub fn new(source: Algebra, target: Algebra, matrix: CMatrix) -> Result<Self, Error> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::MorphismShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                expected_rows: target.dim(),
                expected_cols: source.dim(),
            });
        }
        Ok(StarMorphism {
            source,
            target,
            matrix,
            verified: false,
        })
    }

    /// Wraps a coordinate matrix and certifies it, failing on violation > `tol`.
    pub fn new_verified(
        source: Algebra,
        target: Algebra,
        matrix: CMatrix,
        tol: f64,
    ) -> Result<Self, Error> {
        let mut f = StarMorphism::new(source, target, matrix)?;
        let cert = verify_morphism(&f, tol);
        if !cert.pass {
            return Err(Error::MorphismCheckFailed(Box::new(cert)));
        }
        f.verified = true;
        Ok(f)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Applies the map to an element of the source algebra.
    pub fn apply(&self, a: &Element) -> Result<Element, Error> {
        if a.algebra() != &self.source {
            return Err(Error::AlgebraMismatch);
        }
        Element::from_coords(&self.target, &(&self.matrix * a.coords()))
    }

    /// Image of the `j`-th source matrix unit, as a target element.
    fn basis_image(&self, j: usize) -> Element {
        Element::from_coords(&self.target, &self.matrix.column(j).into_owned())
            .expect("matrix shape checked at construction")
    }
}

/// Checks unitality, adjoint preservation, and multiplicativity on every
/// basis element / basis pair, reporting the worst violations.
pub fn verify_morphism(f: &StarMorphism, tol: f64) -> MorphismCertificate {
    let source = &f.source;
    let images: Vec<Element> = (0..source.dim()).map(|j| f.basis_image(j)).collect();

    let unit_image = f.apply(&source.unit()).expect("unit belongs to the source");
    let unitality = max_abs_diff_vec(&unit_image.coords(), &f.target.unit().coords());

    let mut adjoint: f64 = 0.0;
    for j in 0..source.dim() {
        let lhs = &images[source.basis_adjoint_index(j)];
        let rhs = images[j].adjoint();
        adjoint = adjoint.max(max_abs_diff_vec(&lhs.coords(), &rhs.coords()));
    }

    let zero = f.target.zero();
    let mut multiplicativity: f64 = 0.0;
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = match source.basis_product_index(i, j) {
                Some(k) => &images[k],
                None => &zero,
            };
            let rhs = &images[i] * &images[j];
            multiplicativity = multiplicativity.max(max_abs_diff_vec(&lhs.coords(), &rhs.coords()));
        }
    }

    let max_violation = unitality.max(adjoint).max(multiplicativity);
    MorphismCertificate {
        unitality,
        adjoint,
        multiplicativity,
        max_violation,
        tol,
        pass: max_violation <= tol,
    }
}

/// The composite `f ∘ g`; requires `g.target == f.source`.
pub fn compose_morphisms(f: &StarMorphism, g: &StarMorphism) -> Result<StarMorphism, Error> {
    if g.target != f.source {
        return Err(Error::EndpointMismatch);
    }
    Ok(StarMorphism {
        source: g.source.clone(),
        target: f.target.clone(),
        matrix: &f.matrix * &g.matrix,
        verified: f.verified && g.verified,
    })
}

/// The identity morphism on `a`, with an exactly-zero certificate.
pub fn identity_morphism(a: &Algebra) -> StarMorphism {
    StarMorphism {
        source: a.clone(),
        target: a.clone(),
        matrix: CMatrix::identity(a.dim(), a.dim()),
        verified: true,
    }
}

/// Builds a morphism from the image of each source matrix unit, then
/// certifies the result against the dimension-scaled catalog tolerance.
fn from_basis_images(
    source: &Algebra,
    target: &Algebra,
    image: impl Fn(&CMatrix) -> CMatrix,
) -> StarMorphism {
    let n = source.block_dims()[0];
    let mut matrix = CMatrix::zeros(target.dim(), source.dim());
    for j in 0..source.dim() {
        let (_, p, q) = source.basis_position(j);
        let mut unit = CMatrix::zeros(n, n);
        unit[(p, q)] = Complex64::ONE;
        let coords = Element::from_blocks(target, vec![image(&unit)])
            .expect("image shape matches the target block")
            .coords();
        matrix.set_column(j, &coords);
    }
    StarMorphism::new_verified(
        source.clone(),
        target.clone(),
        matrix,
        tol::catalog(target.dim()),
    )
    .expect("catalog construction is structurally correct")
}

/// The diagonal embedding `a ↦ diag(a, …, a)` (`copies` times),
/// `B(C^n) → B(C^{n·copies})`.
pub fn block_embed(n: usize, copies: usize) -> StarMorphism {
    assert!(n >= 1 && copies >= 1, "block sizes must be positive");
    let source = Algebra::full_matrix(n);
    let target = Algebra::full_matrix(n * copies);
    let eye = CMatrix::identity(copies, copies);
    from_basis_images(&source, &target, |a| kron(&eye, a))
}

/// The left tensor inclusion `a ↦ a ⊗ 1_m`, `B(C^n) → B(C^{nm})` with
/// lexicographic Kronecker ordering.
pub fn tensor_left_inclusion(n: usize, m: usize) -> StarMorphism {
    assert!(n >= 1 && m >= 1, "block sizes must be positive");
    let source = Algebra::full_matrix(n);
    let target = Algebra::full_matrix(n * m);
    let eye = CMatrix::identity(m, m);
    from_basis_images(&source, &target, |a| kron(a, &eye))
}

/// The inner automorphism `a ↦ u a u*` of `B(C^n)` for a unitary `u`.
pub fn conjugate_by_unitary(u: &CMatrix, tol: f64) -> Result<StarMorphism, Error> {
    if u.nrows() != u.ncols() || u.nrows() == 0 {
        let side = u.nrows().max(1);
        return Err(Error::MatrixShape {
            rows: u.nrows(),
            cols: u.ncols(),
            expected_rows: side,
            expected_cols: side,
        });
    }
    let violation = crate::linalg::identity_violation(&(u.adjoint() * u));
    if violation > tol {
        return Err(Error::NotUnitary { violation });
    }
    let algebra = Algebra::full_matrix(u.nrows());
    let u_star = u.adjoint();
    Ok(from_basis_images(&algebra, &algebra, |a| u * a * &u_star))
}
