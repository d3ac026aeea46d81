//! Finite-dimensional C*-algebras and their elements.
//!
//! Every algebra here is a finite direct sum of full complex matrix blocks
//! `B(C^{n_1}) + ... + B(C^{n_k})`; every finite-dimensional C*-algebra is
//! of this form up to isomorphism. The linear dimension is `sum n_i^2` and
//! the canonical basis is the family of matrix units `e_{pq}` enumerated
//! block-major, then row-major within a block. That enumeration is this
//! library's fixed convention; all coordinate vectors, Gram matrices, and
//! morphism matrices refer to it.

mod morphism;
mod tensor;

pub use morphism::{
    block_embed, compose_morphisms, conjugate_by_unitary, identity_morphism, tensor_left_inclusion,
    verify_morphism, MorphismCertificate, StarMorphism,
};
pub use tensor::{kron, tensor_element, tensor_product};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::Error;
use crate::linalg::{CMatrix, CVector};

/// A finite direct sum of full matrix blocks, identified by its block sizes.
///
/// Two values compare equal exactly when their block dimension lists agree,
/// and elements of equal algebras are freely interchangeable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    block_dims: Vec<usize>,
    dim: usize,
}

impl Algebra {
    /// Builds the direct sum of full matrix blocks with the given sizes.
    pub fn new(block_dims: Vec<usize>) -> Result<Self, Error> {
        if block_dims.is_empty() || block_dims.contains(&0) {
            return Err(Error::InvalidBlockDims);
        }
        let dim = block_dims.iter().map(|&n| n * n).sum();
        Ok(Algebra { block_dims, dim })
    }

    /// The single-block algebra of all `n x n` complex matrices.
    pub fn full_matrix(n: usize) -> Self {
        Algebra::new(vec![n]).expect("n >= 1")
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    /// Linear dimension, `sum n_i^2`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_single_block(&self) -> bool {
        self.block_dims.len() == 1
    }

    /// Coordinate offset of the first basis element of `block`.
    fn block_offset(&self, block: usize) -> usize {
        self.block_dims[..block].iter().map(|&n| n * n).sum()
    }

    /// Basis index of the matrix unit `e_{pq}` in `block`.
    pub fn basis_index(&self, block: usize, p: usize, q: usize) -> usize {
        let n = self.block_dims[block];
        assert!(p < n && q < n, "matrix-unit position out of range");
        self.block_offset(block) + p * n + q
    }

    /// Inverse of [`basis_index`](Self::basis_index): `(block, p, q)`.
    pub fn basis_position(&self, index: usize) -> (usize, usize, usize) {
        assert!(index < self.dim, "basis index out of range");
        let mut rest = index;
        for (block, &n) in self.block_dims.iter().enumerate() {
            if rest < n * n {
                return (block, rest / n, rest % n);
            }
            rest -= n * n;
        }
        unreachable!()
    }

    /// Index of the adjoint of basis element `index`; matrix units satisfy
    /// `e_{pq}* = e_{qp}`.
    pub fn basis_adjoint_index(&self, index: usize) -> usize {
        let (block, p, q) = self.basis_position(index);
        self.basis_index(block, q, p)
    }

    /// Index of the product `e_i e_j` when it is another matrix unit, or
    /// `None` when the product is zero. Matrix units multiply by
    /// `e_{pq} e_{rs} = [q == r] e_{ps}` within a block and annihilate
    /// across blocks, so this is exact integer bookkeeping.
    pub fn basis_product_index(&self, i: usize, j: usize) -> Option<usize> {
        let (bi, p, q) = self.basis_position(i);
        let (bj, r, s) = self.basis_position(j);
        (bi == bj && q == r).then(|| self.basis_index(bi, p, s))
    }

    /// The matrix unit with the given basis index.
    pub fn basis_element(&self, index: usize) -> Element {
        let (block, p, q) = self.basis_position(index);
        let mut blocks = self.zero_blocks();
        blocks[block][(p, q)] = Complex64::ONE;
        Element {
            algebra: self.clone(),
            blocks,
        }
    }

    /// All matrix units in basis order.
    pub fn basis(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.dim).map(|i| self.basis_element(i))
    }

    /// The multiplicative unit: identity matrix in every block.
    pub fn unit(&self) -> Element {
        let blocks = self
            .block_dims
            .iter()
            .map(|&n| CMatrix::identity(n, n))
            .collect();
        Element {
            algebra: self.clone(),
            blocks,
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.clone(),
            blocks: self.zero_blocks(),
        }
    }

    fn zero_blocks(&self) -> Vec<CMatrix> {
        self.block_dims
            .iter()
            .map(|&n| CMatrix::zeros(n, n))
            .collect()
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .block_dims
            .iter()
            .map(|n| format!("B(C^{n})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A member of an [`Algebra`]: one complex matrix per block.
#[derive(Clone, PartialEq)]
pub struct Element {
    algebra: Algebra,
    blocks: Vec<CMatrix>,
}

impl Element {
    /// Builds an element from explicit block matrices.
    pub fn from_blocks(algebra: &Algebra, blocks: Vec<CMatrix>) -> Result<Self, Error> {
        if blocks.len() != algebra.block_dims.len()
            || blocks
                .iter()
                .zip(&algebra.block_dims)
                .any(|(m, &n)| m.nrows() != n || m.ncols() != n)
        {
            return Err(Error::BlockShapeMismatch);
        }
        Ok(Element {
            algebra: algebra.clone(),
            blocks,
        })
    }

    /// Builds an element from its coordinate vector on the matrix-unit basis.
    pub fn from_coords(algebra: &Algebra, coords: &CVector) -> Result<Self, Error> {
        if coords.len() != algebra.dim {
            return Err(Error::CoefficientLength {
                expected: algebra.dim,
                found: coords.len(),
            });
        }
        let mut blocks = algebra.zero_blocks();
        let mut idx = 0;
        for (block, &n) in algebra.block_dims.iter().enumerate() {
            for p in 0..n {
                for q in 0..n {
                    blocks[block][(p, q)] = coords[idx];
                    idx += 1;
                }
            }
        }
        Ok(Element {
            algebra: algebra.clone(),
            blocks,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    /// Coordinate vector on the matrix-unit basis (block-major, row-major).
    pub fn coords(&self) -> CVector {
        let mut out = CVector::zeros(self.algebra.dim);
        let mut idx = 0;
        for (block, &n) in self.algebra.block_dims.iter().enumerate() {
            for p in 0..n {
                for q in 0..n {
                    out[idx] = self.blocks[block][(p, q)];
                    idx += 1;
                }
            }
        }
        out
    }

    /// The involution: conjugate transpose in every block.
    pub fn adjoint(&self) -> Element {
        Element {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|m| m.adjoint()).collect(),
        }
    }

    pub fn scale(&self, z: Complex64) -> Element {
        Element {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|m| m.map(|x| z * x)).collect(),
        }
    }

    /// C*-norm: the largest singular value over the blocks.
    pub fn operator_norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(crate::linalg::operator_norm)
            .fold(0.0, f64::max)
    }

    fn assert_same_algebra(&self, other: &Element) {
        assert_eq!(
            self.algebra, other.algebra,
            "elements belong to different algebras"
        );
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element of {:?}: {:?}", self.algebra, self.blocks)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.assert_same_algebra(rhs);
        Element {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.assert_same_algebra(rhs);
        Element {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.assert_same_algebra(rhs);
        Element {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-Complex64::ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dimension_is_sum_of_squares() {
        let a = Algebra::new(vec![2, 3]).unwrap();
        assert_eq!(a.dim(), 13);
        assert_eq!(Algebra::full_matrix(1).dim(), 1);
        assert!(Algebra::new(vec![]).is_err());
        assert!(Algebra::new(vec![2, 0]).is_err());
    }

    #[test]
    fn basis_enumeration_round_trips() {
        let a = Algebra::new(vec![2, 3]).unwrap();
        for i in 0..a.dim() {
            let (b, p, q) = a.basis_position(i);
            assert_eq!(a.basis_index(b, p, q), i);
        }
        // Block-major, row-major: first block's units come first.
        assert_eq!(a.basis_position(0), (0, 0, 0));
        assert_eq!(a.basis_position(1), (0, 0, 1));
        assert_eq!(a.basis_position(2), (0, 1, 0));
        assert_eq!(a.basis_position(4), (1, 0, 0));
        assert_eq!(a.basis_position(12), (1, 2, 2));
    }

    #[test]
    fn matrix_units_multiply_exactly() {
        let a = Algebra::new(vec![2, 3]).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let product = &a.basis_element(i) * &a.basis_element(j);
                match a.basis_product_index(i, j) {
                    Some(k) => assert_eq!(product, a.basis_element(k)),
                    None => assert_eq!(product, a.zero()),
                }
            }
        }
    }

    #[test]
    fn adjoint_swaps_indices() {
        let a = Algebra::full_matrix(2);
        let e01 = a.basis_index(0, 0, 1);
        let e10 = a.basis_index(0, 1, 0);
        assert_eq!(a.basis_adjoint_index(e01), e10);
        assert_eq!(a.basis_element(e01).adjoint(), a.basis_element(e10));
    }

    #[test]
    fn coords_round_trip() {
        let a = Algebra::new(vec![2, 3]).unwrap();
        let coords = CVector::from_fn(a.dim(), |i, _| c(i as f64, -(i as f64) / 2.0));
        let x = Element::from_coords(&a, &coords).unwrap();
        assert_eq!(x.coords(), coords);
    }

    #[test]
    fn unit_is_neutral_and_has_norm_one() {
        let a = Algebra::new(vec![2, 3]).unwrap();
        let one = a.unit();
        let x = Element::from_coords(
            &a,
            &CVector::from_fn(a.dim(), |i, _| c(0.3 * i as f64, 1.0 - i as f64)),
        )
        .unwrap();
        assert_eq!(&one * &x, x);
        assert_eq!(&x * &one, x);
        assert!((one.operator_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cstar_identity_holds() {
        let a = Algebra::new(vec![2, 3]).unwrap();
        let x = Element::from_coords(
            &a,
            &CVector::from_fn(a.dim(), |i, _| c((i as f64).sin(), (i as f64).cos())),
        )
        .unwrap();
        let norm = x.operator_norm();
        let aa_star = (&x * &x.adjoint()).operator_norm();
        assert!((aa_star - norm * norm).abs() <= 1e-10 * norm.max(1.0) * norm.max(1.0));
    }
}
