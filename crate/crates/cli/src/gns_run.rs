//! The `gns` command: run the construction on a JSON state document.
//!
//! The document is a state, written either with an explicit `algebra`
//! object or with a top-level `blocks` shorthand, and carrying `coeffs`
//! or (single block) `density`. An optional `morphism` into the state's
//! algebra adds the induced map between the pulled-back GNS space and the
//! state's own to the report. Invalid states and morphisms are not usage
//! errors: they produce a certificate report with `pass: false`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use gns_core::algebra::MorphismCertificate;
use gns_core::gns::{gns_construct, gns_intertwiner_between};
use gns_core::schema::{
    morphism_from_json, AlgebraDto, ComplexPair, GnsReportDto, IntertwinerDto, MatrixRows,
    MorphismDto, StateDto,
};
use gns_core::states::{pullback_state, StateCertificate};
use gns_core::{tol, Error};

use crate::example::verdict;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    #[serde(default)]
    algebra: Option<AlgebraDto>,
    #[serde(default)]
    blocks: Option<Vec<usize>>,
    #[serde(default)]
    coeffs: Option<Vec<ComplexPair>>,
    #[serde(default)]
    density: Option<MatrixRows>,
    #[serde(default)]
    morphism: Option<MorphismDto>,
}

/// Either the construction's report or the certificate that rejected the
/// input.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum GnsRunReport {
    Rejected(Rejection),
    Accepted(Box<Acceptance>),
}

#[derive(Debug, Serialize)]
pub struct Rejection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_certificate: Option<StateCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morphism_certificate: Option<MorphismCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Acceptance {
    #[serde(flatten)]
    pub report: GnsReportDto,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub cell: Option<IntertwinerDto>,
    pub pass: bool,
}

/// Reads, validates, and runs the document at `path`. `Err` is a usage
/// or parse problem; invalid states and morphisms return `Ok` rejections.
pub fn run_gns(path: &Path) -> Result<GnsRunReport, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| format!("cannot read {}: {err}", path.display()))?;
    let doc: InputDoc =
        serde_json::from_str(&text).map_err(|err| format!("{}: {err}", path.display()))?;

    let algebra = match (doc.algebra, doc.blocks) {
        (Some(algebra), None) => algebra,
        (None, Some(blocks)) => AlgebraDto { blocks },
        (Some(_), Some(_)) => {
            return Err("document has both \"algebra\" and \"blocks\"".to_string())
        }
        (None, None) => return Err("document needs \"algebra\" or \"blocks\"".to_string()),
    };
    let state_dto = StateDto {
        algebra,
        coeffs: doc.coeffs,
        density: doc.density,
    };
    let omega = match state_dto.to_state() {
        Ok(omega) => omega,
        Err(Error::InvalidState(certificate)) => {
            return Ok(GnsRunReport::Rejected(Rejection {
                state_certificate: Some(*certificate),
                morphism_certificate: None,
                error: None,
                pass: false,
            }))
        }
        Err(Error::InvalidDensityMatrix { reason, violation }) => {
            return Ok(GnsRunReport::Rejected(Rejection {
                state_certificate: None,
                morphism_certificate: None,
                error: Some(format!(
                    "invalid density matrix: {reason} (violation {violation:.3e})"
                )),
                pass: false,
            }))
        }
        Err(other) => return Err(other.to_string()),
    };

    let g = gns_construct(&omega).map_err(|err| err.to_string())?;
    let mut pass = g.certify().pass(tol::STRUCTURAL);

    let cell = match doc.morphism {
        None => None,
        Some(dto) => {
            let f = match morphism_from_json(&dto) {
                Ok(f) => f,
                Err(Error::MorphismCheckFailed(certificate)) => {
                    return Ok(GnsRunReport::Rejected(Rejection {
                        state_certificate: None,
                        morphism_certificate: Some(*certificate),
                        error: None,
                        pass: false,
                    }))
                }
                Err(other) => return Err(other.to_string()),
            };
            if f.target() != omega.algebra() {
                return Err(format!(
                    "morphism target {:?} does not match the state's algebra {:?}",
                    f.target(),
                    omega.algebra()
                ));
            }
            let pulled = pullback_state(&omega, &f).map_err(|err| err.to_string())?;
            let g_pulled = gns_construct(&pulled).map_err(|err| err.to_string())?;
            let cell = gns_intertwiner_between(&f, &g_pulled, &g).map_err(|err| err.to_string())?;
            let certs = cell.certificates();
            pass =
                pass && certs.intertwines.pass && certs.isometry.pass && certs.preserves_point.pass;
            Some(IntertwinerDto::from(&cell))
        }
    };

    Ok(GnsRunReport::Accepted(Box::new(Acceptance {
        report: GnsReportDto::from(&g),
        cell,
        pass,
    })))
}

impl GnsRunReport {
    pub fn pass(&self) -> bool {
        match self {
            GnsRunReport::Rejected(r) => r.pass,
            GnsRunReport::Accepted(a) => a.pass,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        match self {
            GnsRunReport::Rejected(r) => {
                if let Some(cert) = &r.state_certificate {
                    let _ = writeln!(out, "input state failed verification");
                    let _ = writeln!(out, "  unitality        violation {:.3e}", cert.unitality);
                    let _ = writeln!(
                        out,
                        "  gram_hermitian   violation {:.3e}",
                        cert.gram_hermitian
                    );
                    let _ = writeln!(
                        out,
                        "  gram_positivity  violation {:.3e}",
                        cert.gram_positivity
                    );
                    let _ = writeln!(
                        out,
                        "  cauchy_schwarz   violation {:.3e}",
                        cert.cauchy_schwarz
                    );
                }
                if let Some(cert) = &r.morphism_certificate {
                    let _ = writeln!(out, "input morphism failed verification");
                    let _ = writeln!(out, "  unitality         violation {:.3e}", cert.unitality);
                    let _ = writeln!(out, "  adjoint           violation {:.3e}", cert.adjoint);
                    let _ = writeln!(
                        out,
                        "  multiplicativity  violation {:.3e}",
                        cert.multiplicativity
                    );
                }
                if let Some(message) = &r.error {
                    let _ = writeln!(out, "{message}");
                }
                let _ = writeln!(out, "result: fail");
            }
            GnsRunReport::Accepted(a) => {
                let _ = writeln!(out, "quotient_dim {}", a.report.quotient_dim);
                let _ = writeln!(out, "null_dim     {}", a.report.null_dim);
                let c = &a.report.certificates;
                let _ = writeln!(out, "  orthonormality   violation {:.3e}", c.orthonormality);
                let _ = writeln!(out, "  null_space       violation {:.3e}", c.null_space);
                let _ = writeln!(out, "  state_recovery   violation {:.3e}", c.state_recovery);
                let _ = writeln!(out, "  point_norm       violation {:.3e}", c.point_norm);
                let _ = writeln!(
                    out,
                    "  cyclic           {} (orbit rank {})",
                    c.cyclic, c.orbit_rank
                );
                if let Some(cell) = &a.cell {
                    let lc = &cell.certificates;
                    let _ = writeln!(
                        out,
                        "induced map L ({} columns)",
                        cell.l.first().map_or(0, Vec::len)
                    );
                    let _ = writeln!(
                        out,
                        "  intertwines      violation {:.3e}",
                        lc.intertwines.violation
                    );
                    let _ = writeln!(
                        out,
                        "  isometry         violation {:.3e}",
                        lc.isometry.violation
                    );
                    let _ = writeln!(
                        out,
                        "  preserves_point  violation {:.3e}",
                        lc.preserves_point.violation
                    );
                }
                let _ = writeln!(out, "result: {}", verdict(a.pass));
            }
        }
        out
    }
}
