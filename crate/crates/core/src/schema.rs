//! The JSON wire format shared by every tool built on this crate.
//!
//! Complex numbers are `[re, im]` pairs everywhere and matrices are
//! row-major lists of rows. An algebra is `{"blocks":[n_1,...]}`, an
//! element is a list of block matrices, a morphism carries its endpoint
//! algebras and coordinate matrix, and a state pairs an algebra with
//! either matrix-unit coefficients or (single block only) a density
//! matrix. Reports are serialize-only: the GNS report exposes the chosen
//! coordinates and certificates, the intertwiner report the map `L` and
//! its certificates.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, StarMorphism};
use crate::error::Error;
use crate::gns::{GnsCertificates, GnsRep, Intertwiner, IntertwinerCertificates};
use crate::linalg::{CMatrix, CVector};
use crate::states::{state_from_density_matrix, DensityMatrix, State};
use crate::tol;

/// A complex number on the wire: `[re, im]`.
pub type ComplexPair = [f64; 2];

/// A complex matrix on the wire: row-major rows of `[re, im]` pairs.
pub type MatrixRows = Vec<Vec<ComplexPair>>;

pub fn matrix_to_rows(m: &CMatrix) -> MatrixRows {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

/// Parses rows into a matrix, rejecting ragged input.
pub fn matrix_from_rows(rows: &MatrixRows) -> Result<CMatrix, Error> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Schema {
                reason: format!("matrix row {i} has {} entries, expected {ncols}", row.len()),
            });
        }
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

pub fn vector_to_pairs(v: &CVector) -> Vec<ComplexPair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn vector_from_pairs(pairs: &[ComplexPair]) -> CVector {
    CVector::from_iterator(
        pairs.len(),
        pairs.iter().map(|p| Complex64::new(p[0], p[1])),
    )
}

/// `{"blocks":[n_1,...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDto {
    pub blocks: Vec<usize>,
}

impl From<&Algebra> for AlgebraDto {
    fn from(a: &Algebra) -> Self {
        AlgebraDto {
            blocks: a.block_dims().to_vec(),
        }
    }
}

impl AlgebraDto {
    pub fn to_algebra(&self) -> Result<Algebra, Error> {
        Algebra::new(self.blocks.clone())
    }
}

/// An element as its list of block matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementDto(pub Vec<MatrixRows>);

impl From<&Element> for ElementDto {
    fn from(a: &Element) -> Self {
        ElementDto(a.blocks().iter().map(matrix_to_rows).collect())
    }
}

impl ElementDto {
    pub fn to_element(&self, algebra: &Algebra) -> Result<Element, Error> {
        let blocks = self
            .0
            .iter()
            .map(matrix_from_rows)
            .collect::<Result<Vec<_>, _>>()?;
        Element::from_blocks(algebra, blocks)
    }
}

/// `{"source":..., "target":..., "matrix":[[...]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismDto {
    pub source: AlgebraDto,
    pub target: AlgebraDto,
    pub matrix: MatrixRows,
}

impl From<&StarMorphism> for MorphismDto {
    fn from(f: &StarMorphism) -> Self {
        MorphismDto {
            source: f.source().into(),
            target: f.target().into(),
            matrix: matrix_to_rows(f.matrix()),
        }
    }
}

impl MorphismDto {
    /// Rebuilds the morphism and certifies the *-homomorphism axioms.
    pub fn to_verified(&self, tol: f64) -> Result<StarMorphism, Error> {
        StarMorphism::new_verified(
            self.source.to_algebra()?,
            self.target.to_algebra()?,
            matrix_from_rows(&self.matrix)?,
            tol,
        )
    }
}

/// `{"algebra":..., "coeffs":[[re,im],...]}` or (single block only)
/// `{"algebra":..., "density":[[...]]}`; exactly one of the two forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDto {
    pub algebra: AlgebraDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<ComplexPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<MatrixRows>,
}

impl From<&State> for StateDto {
    fn from(omega: &State) -> Self {
        StateDto {
            algebra: omega.algebra().into(),
            coeffs: Some(vector_to_pairs(omega.coeffs())),
            density: None,
        }
    }
}

impl StateDto {
    /// Rebuilds and validates the state.
    pub fn to_state(&self) -> Result<State, Error> {
        let algebra = self.algebra.to_algebra()?;
        match (&self.coeffs, &self.density) {
            (Some(coeffs), None) => State::new(&algebra, vector_from_pairs(coeffs)),
            (None, Some(rows)) => {
                if !algebra.is_single_block() {
                    return Err(Error::NotSingleBlock {
                        blocks: algebra.block_dims().len(),
                    });
                }
                let rho = DensityMatrix::new(matrix_from_rows(rows)?)?;
                if rho.hilbert_dim() != algebra.block_dims()[0] {
                    return Err(Error::Schema {
                        reason: format!(
                            "density matrix is {}x{} but the algebra block is {}",
                            rho.hilbert_dim(),
                            rho.hilbert_dim(),
                            algebra.block_dims()[0]
                        ),
                    });
                }
                Ok(state_from_density_matrix(&rho))
            }
            _ => Err(Error::Schema {
                reason: "state requires exactly one of \"coeffs\" or \"density\"".to_string(),
            }),
        }
    }
}

/// The GNS construction's chosen coordinates plus its certificates:
/// `pi` maps each basis index to the represented matrix on the quotient.
#[derive(Clone, Debug, Serialize)]
pub struct GnsReportDto {
    pub quotient_dim: usize,
    pub null_dim: usize,
    pub embed: MatrixRows,
    pub pi: BTreeMap<usize, MatrixRows>,
    pub omega: Vec<ComplexPair>,
    pub certificates: GnsCertificates,
}

impl From<&GnsRep> for GnsReportDto {
    fn from(g: &GnsRep) -> Self {
        let pi = (0..g.state().algebra().dim())
            .map(|k| (k, matrix_to_rows(g.rep().image(k))))
            .collect();
        GnsReportDto {
            quotient_dim: g.quotient_dim(),
            null_dim: g.null_dim(),
            embed: matrix_to_rows(g.embed()),
            pi,
            omega: vector_to_pairs(g.rep().omega()),
            certificates: g.certify(),
        }
    }
}

/// An intertwiner as its matrix `L` plus certificates.
#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerDto {
    #[serde(rename = "L")]
    pub l: MatrixRows,
    pub certificates: IntertwinerCertificates,
}

impl From<&Intertwiner> for IntertwinerDto {
    fn from(cell: &Intertwiner) -> Self {
        IntertwinerDto {
            l: matrix_to_rows(cell.matrix()),
            certificates: *cell.certificates(),
        }
    }
}

/// Parses a morphism document and verifies it at the catalog tolerance.
pub fn morphism_from_json(dto: &MorphismDto) -> Result<StarMorphism, Error> {
    let target_dim = dto
        .target
        .blocks
        .iter()
        .map(|n| n * n)
        .sum::<usize>()
        .max(1);
    dto.to_verified(tol::catalog(target_dim))
}
