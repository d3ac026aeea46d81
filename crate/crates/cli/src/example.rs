//! The two built-in golden examples with pinned expected values.
//!
//! `qubit`: the vector state ω(a) = a_{↑↑} on one qubit algebra. Its null
//! space is the right column {e_{↑↓}, e_{↓↓}}, the quotient is the left
//! column with inner product conj(a_{↑↑})b_{↑↑} + conj(a_{↓↑})b_{↓↑}, and
//! the comparison map onto the defining representation marked at |↑⟩ is
//! unitary.
//!
//! `epr`: the singlet vector state on two qubits. Restricting to the first
//! factor gives the maximally mixed state diag(½, ½), whose Gram matrix is
//! half the Frobenius inner product, so nothing is quotiented away: the
//! null space is zero, the quotient is all of B(C²), the induced map into
//! the two-qubit GNS space is isometric, and composing with the comparison
//! map onto C⁴ marked at the singlet is unitary.

use std::fmt::Write as _;

use serde::Serialize;

use gns_core::algebra::{tensor_left_inclusion, Algebra};
use gns_core::gns::{defining_rep, gns_construct, gns_intertwiner_between, modification_m_with};
use gns_core::linalg::{identity_violation, max_abs_diff, CMatrix, CVector, Complex64};
use gns_core::schema::{matrix_to_rows, MatrixRows};
use gns_core::states::{
    density_matrix_from_state, pullback_state, state_from_density_matrix, DensityMatrix, State,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ExampleId {
    Qubit,
    Epr,
}

/// Report of either example; `pass` requires every pinned value.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ExampleReport {
    Qubit(QubitReport),
    Epr(EprReport),
}

#[derive(Clone, Debug, Serialize)]
pub struct QubitReport {
    pub null_dim: usize,
    pub quotient_dim: usize,
    pub null_span_violation: f64,
    pub inner_product_violation: f64,
    pub m_unitary: bool,
    pub m_unitary_violation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EprReport {
    pub rho1: MatrixRows,
    pub rho1_violation: f64,
    pub gram_violation: f64,
    pub null_dim: usize,
    pub quotient_dim: usize,
    pub l_isometry_violation: f64,
    pub composite_unitary: bool,
    pub composite_violation: f64,
    pub pass: bool,
}

struct QubitTols {
    null_span: f64,
    inner_product: f64,
    m_unitary: f64,
}

struct EprTols {
    rho1: f64,
    gram: f64,
    l_isometry: f64,
    composite_unitary: f64,
}

/// Runs one golden example with optional tolerance overrides by check
/// name; unknown names are usage errors.
pub fn run_example(id: ExampleId, overrides: &[(String, f64)]) -> Result<ExampleReport, String> {
    match id {
        ExampleId::Qubit => {
            let mut tols = QubitTols {
                null_span: 1e-9,
                inner_product: 1e-10,
                m_unitary: 1e-9,
            };
            for (name, value) in overrides {
                match name.as_str() {
                    "null_span" => tols.null_span = *value,
                    "inner_product" => tols.inner_product = *value,
                    "m_unitary" => tols.m_unitary = *value,
                    _ => return Err(format!("qubit example has no check named {name:?}")),
                }
            }
            Ok(ExampleReport::Qubit(run_qubit(&tols)))
        }
        ExampleId::Epr => {
            let mut tols = EprTols {
                rho1: 1e-10,
                gram: 1e-10,
                l_isometry: 1e-9,
                composite_unitary: 1e-9,
            };
            for (name, value) in overrides {
                match name.as_str() {
                    "rho1" => tols.rho1 = *value,
                    "gram" => tols.gram = *value,
                    "l_isometry" => tols.l_isometry = *value,
                    "composite_unitary" => tols.composite_unitary = *value,
                    _ => return Err(format!("epr example has no check named {name:?}")),
                }
            }
            Ok(ExampleReport::Epr(run_epr(&tols)))
        }
    }
}

fn run_qubit(tols: &QubitTols) -> QubitReport {
    let a = Algebra::full_matrix(2);
    let mut coeffs = CVector::zeros(4);
    coeffs[0] = Complex64::ONE;
    let omega = State::new(&a, coeffs).expect("the pinned state is valid");
    let g = gns_construct(&omega).expect("the pinned state is valid");

    // Basis order is e_{↑↑}, e_{↑↓}, e_{↓↑}, e_{↓↓}; the null space must
    // have no support on indices 0 and 2.
    let mut null_span_violation = 0.0f64;
    for j in 0..g.null_dim() {
        for i in [0, 2] {
            null_span_violation = null_span_violation.max(g.null_basis()[(i, j)].norm());
        }
    }

    // ⟨[e_i], [e_j]⟩ must equal conj((e_i)_{↑↑})(e_j)_{↑↑} +
    // conj((e_i)_{↓↑})(e_j)_{↓↑}; the form is sesquilinear, so the sixteen
    // basis pairs decide it.
    let mut inner_product_violation = 0.0f64;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let ci = g.project(&a.basis_element(i)).expect("same algebra");
            let cj = g.project(&a.basis_element(j)).expect("same algebra");
            let expected = f64::from(u8::from(i == j && (i == 0 || i == 2)));
            let got = ci.dotc(&cj) - Complex64::from(expected);
            inner_product_violation = inner_product_violation.max(got.norm());
        }
    }

    let point = CVector::from_vec(vec![Complex64::ONE, Complex64::ZERO]);
    let rep = defining_rep(&a, point).expect("|↑⟩ is a unit vector");
    let m = modification_m_with(&g, &rep).expect("the marked state is ω");
    let m_unitary_violation = m.certificates().unitary.violation;

    QubitReport {
        null_dim: g.null_dim(),
        quotient_dim: g.quotient_dim(),
        null_span_violation,
        inner_product_violation,
        m_unitary: m_unitary_violation <= tols.m_unitary,
        m_unitary_violation,
        pass: g.null_dim() == 2
            && g.quotient_dim() == 2
            && null_span_violation <= tols.null_span
            && inner_product_violation <= tols.inner_product
            && m_unitary_violation <= tols.m_unitary,
    }
}

fn run_epr(tols: &EprTols) -> EprReport {
    let two_qubits = Algebra::full_matrix(4);
    let inv_sqrt2 = Complex64::from(0.5f64.sqrt());
    // |Ψ⟩ = (|↑↓⟩ − |↓↑⟩)/√2 in the order |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
    let mut psi = CVector::zeros(4);
    psi[1] = inv_sqrt2;
    psi[2] = -inv_sqrt2;
    let omega = state_from_density_matrix(&DensityMatrix::pure(&psi).expect("|Ψ⟩ is unit"));

    let i1 = tensor_left_inclusion(2, 2);
    let omega1 = pullback_state(&omega, &i1).expect("i1 lands in the two-qubit algebra");

    let rho1 = density_matrix_from_state(&omega1).expect("single block");
    let expected_rho1 = CMatrix::from_diagonal_element(2, 2, Complex64::from(0.5));
    let rho1_violation = max_abs_diff(rho1.matrix(), &expected_rho1);

    let half_identity = CMatrix::from_diagonal_element(4, 4, Complex64::from(0.5));
    let gram_violation = max_abs_diff(&omega1.gram_matrix(), &half_identity);

    let g1 = gns_construct(&omega1).expect("the restricted state is valid");
    let g = gns_construct(&omega).expect("the singlet state is valid");
    let cell = gns_intertwiner_between(&i1, &g1, &g).expect("ω₁ is the pullback of ω");
    let l_isometry_violation = cell.certificates().isometry.violation;

    let rep = defining_rep(&two_qubits, psi).expect("|Ψ⟩ is a unit vector");
    let m = modification_m_with(&g, &rep).expect("the marked state is ω");
    let composite = m.matrix() * cell.matrix();
    let composite_violation = identity_violation(&(composite.adjoint() * &composite))
        .max(identity_violation(&(&composite * composite.adjoint())));

    EprReport {
        rho1: matrix_to_rows(rho1.matrix()),
        rho1_violation,
        gram_violation,
        null_dim: g1.null_dim(),
        quotient_dim: g1.quotient_dim(),
        l_isometry_violation,
        composite_unitary: composite_violation <= tols.composite_unitary,
        composite_violation,
        pass: g1.null_dim() == 0
            && g1.quotient_dim() == 4
            && rho1_violation <= tols.rho1
            && gram_violation <= tols.gram
            && l_isometry_violation <= tols.l_isometry
            && composite_violation <= tols.composite_unitary,
    }
}

impl ExampleReport {
    pub fn pass(&self) -> bool {
        match self {
            ExampleReport::Qubit(r) => r.pass,
            ExampleReport::Epr(r) => r.pass,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        match self {
            ExampleReport::Qubit(r) => {
                let _ = writeln!(out, "qubit example");
                let _ = writeln!(out, "  null_dim            {} (expected 2)", r.null_dim);
                let _ = writeln!(out, "  quotient_dim        {} (expected 2)", r.quotient_dim);
                let _ = writeln!(
                    out,
                    "  null_span           violation {:.3e}",
                    r.null_span_violation
                );
                let _ = writeln!(
                    out,
                    "  inner_product       violation {:.3e}",
                    r.inner_product_violation
                );
                let _ = writeln!(
                    out,
                    "  m_unitary           violation {:.3e}",
                    r.m_unitary_violation
                );
                let _ = writeln!(out, "result: {}", verdict(r.pass));
            }
            ExampleReport::Epr(r) => {
                let _ = writeln!(out, "epr example");
                let _ = writeln!(
                    out,
                    "  rho1                violation {:.3e} from diag(1/2, 1/2)",
                    r.rho1_violation
                );
                let _ = writeln!(
                    out,
                    "  gram                violation {:.3e} from half the identity",
                    r.gram_violation
                );
                let _ = writeln!(out, "  null_dim            {} (expected 0)", r.null_dim);
                let _ = writeln!(out, "  quotient_dim        {} (expected 4)", r.quotient_dim);
                let _ = writeln!(
                    out,
                    "  l_isometry          violation {:.3e}",
                    r.l_isometry_violation
                );
                let _ = writeln!(
                    out,
                    "  composite_unitary   violation {:.3e}",
                    r.composite_violation
                );
                let _ = writeln!(out, "result: {}", verdict(r.pass));
            }
        }
        out
    }
}

pub(crate) fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}
