//! The GNS construction: from a state to a pointed representation.
//!
//! Given a state ω on an algebra A, the sesquilinear form
//! `⟨a, b⟩_ω = ω(a* b)` on A is represented by the Gram matrix on the
//! matrix-unit basis. Its null space `N_ω = {a : ω(a*a) = 0}` is exactly
//! the kernel of the Gram matrix; the quotient `A / N_ω` is a Hilbert
//! space (already complete in finite dimension), A acts on it by left
//! multiplication, and the class of the unit is a cyclic unit vector.
//!
//! Coordinates: eigendecomposing the Gram matrix `G = V Λ V†` and scaling
//! the eigenvectors of the positive part by `1/√λ` gives columns that are
//! orthonormal under `⟨·,·⟩_ω`, so the quotient is presented concretely as
//! `C^d` with the standard inner product. The matrix `P = embed† G` sends
//! an element's coordinates to the coordinates of its class, and the
//! represented action of a basis element is `P · (left multiplication) ·
//! embed`. Left multiplication by a matrix unit is an exact 0/1 partial
//! permutation of basis indices, so the only rounding in the construction
//! enters through the eigendecomposition.

mod intertwiner;
mod pointed;

pub use intertwiner::{
    gns_intertwiner, gns_intertwiner_between, hom_count_pointed, modification_m,
    modification_m_with, segal_matrix, CertCheck, HomDecision, Intertwiner,
    IntertwinerCertificates,
};
pub use pointed::{defining_rep, is_cyclic, pullback_pointed, rest, CyclicityReport, PointedRep};

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::Error;
use crate::linalg::{hermitian_eigen, max_abs, CMatrix, CVector};
use crate::states::{verify_state, State};
use crate::tol;

/// The output of the GNS construction, keeping the chosen coordinates.
///
/// `embed` has one column per quotient dimension, holding the coordinates
/// (in the algebra's matrix-unit basis) of an orthonormal basis of the
/// quotient; `null_basis` spans the null space. `projector = embed† G`
/// maps element coordinates to quotient coordinates. `rep` is the induced
/// pointed representation, whose marked vector is the class of the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct GnsRep {
    state: State,
    embed: CMatrix,
    null_basis: CMatrix,
    projector: CMatrix,
    rep: PointedRep,
}

/// Violations of the structural identities a GNS output must satisfy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnsCertificates {
    /// `‖embed† G embed − 𝟙‖`: quotient basis orthonormality under ω.
    pub orthonormality: f64,
    /// `‖G · null_basis‖`: the null basis really spans null vectors.
    pub null_space: f64,
    /// `max_i |Ω† π(e_i) Ω − ω(e_i)|`: the marked vector recovers ω.
    pub state_recovery: f64,
    /// `|‖Ω‖ − 1|`.
    pub point_norm: f64,
    /// Rank of the orbit of Ω under the represented basis.
    pub orbit_rank: usize,
    /// Whether the orbit rank equals the quotient dimension.
    pub cyclic: bool,
}

impl GnsCertificates {
    /// Worst numeric violation across the four measured identities.
    pub fn max_violation(&self) -> f64 {
        self.orthonormality
            .max(self.null_space)
            .max(self.state_recovery)
            .max(self.point_norm)
    }

    /// Whether every identity holds within `tol` and the output is cyclic.
    pub fn pass(&self, tol: f64) -> bool {
        self.max_violation() <= tol && self.cyclic
    }
}

impl GnsRep {
    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn quotient_dim(&self) -> usize {
        self.embed.ncols()
    }

    pub fn null_dim(&self) -> usize {
        self.null_basis.ncols()
    }

    pub fn embed(&self) -> &CMatrix {
        &self.embed
    }

    pub fn null_basis(&self) -> &CMatrix {
        &self.null_basis
    }

    /// The induced pointed representation on the quotient.
    pub fn rep(&self) -> &PointedRep {
        &self.rep
    }

    /// The map from element coordinates to quotient coordinates,
    /// `embed† G`.
    pub fn projector(&self) -> &CMatrix {
        &self.projector
    }

    /// Quotient coordinates of the class `[a]`.
    pub fn project(&self, a: &Element) -> Result<CVector, Error> {
        if a.algebra() != self.state.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(&self.projector * a.coords())
    }

    /// Measures the structural identities of this output.
    pub fn certify(&self) -> GnsCertificates {
        let gram = self.state.gram_matrix();
        let orthonormality =
            crate::linalg::identity_violation(&(self.embed.adjoint() * &gram * &self.embed));
        let null_space = if self.null_dim() == 0 {
            0.0
        } else {
            max_abs(&(&gram * &self.null_basis))
        };
        let omega = self.rep.omega();
        let mut state_recovery: f64 = 0.0;
        for i in 0..self.state.algebra().dim() {
            let recovered = omega.dotc(&(self.rep.image(i) * omega));
            state_recovery = state_recovery.max((recovered - self.state.coeffs()[i]).norm());
        }
        let point_norm = (omega.norm() - 1.0).abs();
        let cyclicity = is_cyclic(&self.rep, tol::STRUCTURAL);
        GnsCertificates {
            orthonormality,
            null_space,
            state_recovery,
            point_norm,
            orbit_rank: cyclicity.orbit_rank,
            cyclic: cyclicity.cyclic,
        }
    }
}

/// Runs the GNS construction on a valid state.
pub fn gns_construct(omega: &State) -> Result<GnsRep, Error> {
    let cert = verify_state(omega, tol::STRUCTURAL);
    if !cert.pass {
        return Err(Error::InvalidState(Box::new(cert)));
    }

    let algebra = omega.algebra().clone();
    let dim = algebra.dim();
    let gram = omega.gram_matrix();
    let (eigenvalues, vectors) = hermitian_eigen(&gram);
    let epsilon_null = tol::NULL_SPACE_SCALE * eigenvalues[0].max(1.0);

    let quotient_dim = eigenvalues.iter().filter(|&&l| l > epsilon_null).count();
    let mut embed = CMatrix::zeros(dim, quotient_dim);
    let mut null_basis = CMatrix::zeros(dim, dim - quotient_dim);
    for (i, &lambda) in eigenvalues.iter().enumerate() {
        if lambda > epsilon_null {
            embed.set_column(i, &vectors.column(i).map(|x| x / lambda.sqrt()));
        } else {
            null_basis.set_column(i - quotient_dim, &vectors.column(i).into_owned());
        }
    }

    let projector = embed.adjoint() * &gram;
    let images = (0..dim)
        .map(|k| &projector * left_multiplied(&algebra, k, &embed))
        .collect();
    let point = &projector * algebra.unit().coords();
    let rep = PointedRep::new(&algebra, images, point)?;

    Ok(GnsRep {
        state: omega.clone(),
        embed,
        null_basis,
        projector,
        rep,
    })
}

/// For the `k`-th matrix unit, the coordinates of `e_k · x` for each
/// column `x` of `m`. Exact: left multiplication by a matrix unit moves
/// row `j` to row `basis_product_index(k, j)` or annihilates it.
fn left_multiplied(algebra: &Algebra, k: usize, m: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(m.nrows(), m.ncols());
    for j in 0..algebra.dim() {
        if let Some(target) = algebra.basis_product_index(k, j) {
            out.set_row(target, &m.row(j));
        }
    }
    out
}
