//! Intertwiners between pointed representations, and the two canonical
//! families the GNS construction produces: the cell `L_f` induced by a
//! morphism, and the comparison map `m` from a GNS output back into the
//! representation it was restricted from.
//!
//! Both canonical maps are only well defined up to the coordinates chosen
//! for the quotient spaces, and a degenerate Gram spectrum (every
//! single-block state has one) makes independently recomputed coordinates
//! incompatible. The `*_between` / `*_with` variants therefore accept the
//! [`GnsRep`] values to use, so a caller comparing composite maps can hold
//! each quotient space in one fixed basis; the short forms construct fresh
//! coordinates and are fine whenever only certificates are read.

use serde::Serialize;

use crate::error::Error;
use crate::linalg::{identity_violation, max_abs_diff, max_abs_diff_vec, CMatrix};
use crate::states::{pullback_state, State};
use crate::tol;

use super::pointed::{is_cyclic, pullback_pointed, rest, PointedRep};
use super::{gns_construct, GnsRep};
use crate::algebra::StarMorphism;

/// One measured violation with its pass/fail reading.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertCheck {
    pub violation: f64,
    pub pass: bool,
}

impl CertCheck {
    fn new(violation: f64, tol: f64) -> Self {
        CertCheck {
            violation,
            pass: violation <= tol,
        }
    }
}

/// The four checked properties of a linear map between pointed
/// representations. `unitary` strengthens `isometry` by also requiring a
/// right inverse; maps into larger spaces are isometric but not unitary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntertwinerCertificates {
    pub intertwines: CertCheck,
    pub isometry: CertCheck,
    pub unitary: CertCheck,
    pub preserves_point: CertCheck,
    pub tol: f64,
}

/// A linear map between the spaces of two pointed representations of the
/// same algebra, with its measured certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct Intertwiner {
    source: PointedRep,
    target: PointedRep,
    matrix: CMatrix,
    certificates: IntertwinerCertificates,
}

impl Intertwiner {
    /// Wraps a matrix as a map `source → target` and measures all four
    /// certificate properties on the full basis.
    pub fn new(
        source: PointedRep,
        target: PointedRep,
        matrix: CMatrix,
        tol: f64,
    ) -> Result<Self, Error> {
        if source.algebra() != target.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.nrows() != target.hilbert_dim() || matrix.ncols() != source.hilbert_dim() {
            return Err(Error::MatrixShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                expected_rows: target.hilbert_dim(),
                expected_cols: source.hilbert_dim(),
            });
        }

        let dim = source.algebra().dim();
        let mut intertwines: f64 = 0.0;
        for k in 0..dim {
            let lhs = &matrix * source.image(k);
            let rhs = target.image(k) * &matrix;
            intertwines = intertwines.max(max_abs_diff(&lhs, &rhs));
        }
        let isometry = identity_violation(&(matrix.adjoint() * &matrix));
        let unitary = isometry.max(identity_violation(&(&matrix * matrix.adjoint())));
        let preserves_point = max_abs_diff_vec(&(&matrix * source.omega()), target.omega());

        let certificates = IntertwinerCertificates {
            intertwines: CertCheck::new(intertwines, tol),
            isometry: CertCheck::new(isometry, tol),
            unitary: CertCheck::new(unitary, tol),
            preserves_point: CertCheck::new(preserves_point, tol),
            tol,
        };
        Ok(Intertwiner {
            source,
            target,
            matrix,
            certificates,
        })
    }

    pub fn source(&self) -> &PointedRep {
        &self.source
    }

    pub fn target(&self) -> &PointedRep {
        &self.target
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn certificates(&self) -> &IntertwinerCertificates {
        &self.certificates
    }

    /// Worst violation among intertwining, isometry, and point
    /// preservation (the properties every canonical map must satisfy;
    /// unitarity is only expected on cyclic targets).
    pub fn core_violation(&self) -> f64 {
        self.certificates
            .intertwines
            .violation
            .max(self.certificates.isometry.violation)
            .max(self.certificates.preserves_point.violation)
    }
}

/// The cell induced by `f: A′ → A` between given GNS outputs: the map
/// `[a′] ↦ [f(a′)]` from the quotient of `source_gns` (a state on A′) into
/// the pulled-back quotient of `target_gns` (a state on A). The source
/// state must agree with the pullback of the target state along `f`;
/// passing both outputs keeps every quotient in one caller-chosen basis.
pub fn gns_intertwiner_between(
    f: &StarMorphism,
    source_gns: &GnsRep,
    target_gns: &GnsRep,
) -> Result<Intertwiner, Error> {
    if !f.is_verified() {
        return Err(Error::UnverifiedMorphism);
    }
    if f.source() != source_gns.state().algebra() || f.target() != target_gns.state().algebra() {
        return Err(Error::EndpointMismatch);
    }
    let pulled = pullback_state(target_gns.state(), f)?;
    let distance = max_abs_diff_vec(pulled.coeffs(), source_gns.state().coeffs());
    if distance > tol::COMPOSED {
        return Err(Error::StateMismatch { distance });
    }

    let matrix = target_gns.projector() * f.matrix() * source_gns.embed();
    let target_rep = pullback_pointed(f, target_gns.rep())?;
    Intertwiner::new(
        source_gns.rep().clone(),
        target_rep,
        matrix,
        tol::STRUCTURAL,
    )
}

/// The cell induced by `f` at the state ω, constructing both GNS outputs
/// afresh: from the GNS space of `ω∘f` into the pullback of the GNS space
/// of ω.
pub fn gns_intertwiner(f: &StarMorphism, omega: &State) -> Result<Intertwiner, Error> {
    let pulled = pullback_state(omega, f)?;
    let source_gns = gns_construct(&pulled)?;
    let target_gns = gns_construct(omega)?;
    gns_intertwiner_between(f, &source_gns, &target_gns)
}

/// The raw comparison matrix `[a] ↦ π(a)Ω` from the quotient coordinates
/// of `gns` into the space of `rep`.
pub fn segal_matrix(gns: &GnsRep, rep: &PointedRep) -> CMatrix {
    rep.orbit_matrix() * gns.embed()
}

/// The comparison map from a given GNS output of the marked-vector state
/// into the representation itself. The state of `gns` must agree with the
/// restriction of `rep`; passing the output keeps its basis fixed across
/// several comparison maps.
pub fn modification_m_with(gns: &GnsRep, rep: &PointedRep) -> Result<Intertwiner, Error> {
    if gns.state().algebra() != rep.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let restricted = rest(rep)?;
    let distance = max_abs_diff_vec(restricted.coeffs(), gns.state().coeffs());
    if distance > tol::COMPOSED {
        return Err(Error::StateMismatch { distance });
    }
    let matrix = segal_matrix(gns, rep);
    Intertwiner::new(gns.rep().clone(), rep.clone(), matrix, tol::STRUCTURAL)
}

/// The comparison map `[a] ↦ π(a)Ω` from the GNS space of the
/// marked-vector state into `rep`, constructing the GNS output afresh.
/// Isometric always; unitary exactly when the marked vector is cyclic.
pub fn modification_m(rep: &PointedRep) -> Result<Intertwiner, Error> {
    let omega = rest(rep)?;
    let gns = gns_construct(&omega)?;
    modification_m_with(&gns, rep)
}

/// Outcome of the hom-space probe from a cyclic pointed representation.
#[derive(Clone, Debug, PartialEq)]
pub struct HomDecision {
    /// Number of point-preserving intertwiners: 0 or 1.
    pub count: usize,
    /// Distance between the two marked-vector states.
    pub state_distance: f64,
    /// The unique morphism when it exists.
    pub morphism: Option<Intertwiner>,
}

/// Counts point-preserving intertwiners out of a cyclic representation:
/// one exists exactly when both marked vectors induce the same state, and
/// it is then the composite of the two comparison maps through the shared
/// GNS space.
pub fn hom_count_pointed(source: &PointedRep, target: &PointedRep) -> Result<HomDecision, Error> {
    if source.algebra() != target.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let cyclicity = is_cyclic(source, tol::STRUCTURAL);
    if !cyclicity.cyclic {
        return Err(Error::NotCyclic {
            rank: cyclicity.orbit_rank,
            dim: cyclicity.hilbert_dim,
        });
    }
    let rest_source = rest(source)?;
    let rest_target = rest(target)?;
    let state_distance = max_abs_diff_vec(rest_source.coeffs(), rest_target.coeffs());
    if state_distance > tol::COMPOSED {
        return Ok(HomDecision {
            count: 0,
            state_distance,
            morphism: None,
        });
    }

    let gns = gns_construct(&rest_source)?;
    let m_source = modification_m_with(&gns, source)?;
    let m_target = modification_m_with(&gns, target)?;
    // m_source is unitary on a cyclic source, so its adjoint inverts it;
    // the composite is basis-independent because the shared factor cancels.
    let matrix = m_target.matrix() * m_source.matrix().adjoint();
    let morphism = Intertwiner::new(source.clone(), target.clone(), matrix, tol::STRUCTURAL)?;
    Ok(HomDecision {
        count: 1,
        state_distance,
        morphism: Some(morphism),
    })
}
