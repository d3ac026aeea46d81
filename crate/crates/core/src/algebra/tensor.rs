//! Tensor product of single-block algebras via Kronecker products.
//!
//! `B(C^n) ⊗ B(C^m)` is identified with `B(C^{nm})` by ordering the product
//! basis lexicographically: the pair `(i, j)` maps to index `i*m + j`. Under
//! that identification the elementary tensor `a ⊗ b` becomes the Kronecker
//! product `kron(a, b)`.

use super::{Algebra, Element};
use crate::error::Error;
use crate::linalg::CMatrix;

/// Kronecker product with lexicographic (row-major) index ordering.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// The tensor product of two single-block algebras together with the
/// bilinear action on elements, `(a, b) ↦ a ⊗ b`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra, Error> {
    require_single_block(a)?;
    require_single_block(b)?;
    Ok(Algebra::full_matrix(a.block_dims()[0] * b.block_dims()[0]))
}

/// The elementary tensor `a ⊗ b` as an element of [`tensor_product`].
pub fn tensor_element(a: &Element, b: &Element) -> Result<Element, Error> {
    let product = tensor_product(a.algebra(), b.algebra())?;
    Element::from_blocks(&product, vec![kron(a.block(0), b.block(0))])
}

fn require_single_block(a: &Algebra) -> Result<(), Error> {
    if !a.is_single_block() {
        return Err(Error::NotSingleBlock {
            blocks: a.block_dims().len(),
        });
    }
    Ok(())
}
