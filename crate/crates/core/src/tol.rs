//! Centralized numerical tolerances.
//!
//! Nothing in the underlying mathematics fixes a tolerance; every threshold
//! here is a deliberate artifact decision, kept in one place so no module
//! invents its own magic numbers.

/// Default absolute tolerance for single-step structural checks: validity
/// certificates, Hermitian symmetry, unitality, point normalization, and
/// matrix identities that involve one round of floating-point products.
pub const STRUCTURAL: f64 = 1e-9;

/// Absolute tolerance for identities between composed matrices (two-path
/// composition laws, coherence squares). Composition compounds rounding,
/// so this is one order looser than [`STRUCTURAL`].
pub const COMPOSED: f64 = 1e-8;

/// Absolute tolerance for golden values with exact closed forms.
pub const CLOSED_FORM: f64 = 1e-10;

/// Null-space eigenvalue cutoff scale. An eigenvalue of a Gram matrix
/// counts as zero when it is at most `NULL_SPACE_SCALE * max(lambda_max, 1)`,
/// so the quotient dimension is robust to rounding at every spectral scale.
pub const NULL_SPACE_SCALE: f64 = 1e-9;

/// Tolerance a catalog-constructed morphism must meet: the constructors are
/// exact up to a handful of floating-point products, so violations stay
/// within a small multiple of machine epsilon times the dimension.
pub fn catalog(dim: usize) -> f64 {
    10.0 * f64::EPSILON * dim as f64
}

// The scales are ordered: closed forms are the tightest checks, composed
// identities the loosest.
const _: () = assert!(CLOSED_FORM < STRUCTURAL && STRUCTURAL < COMPOSED);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_tighter_than_every_fixed_scale() {
        assert!(catalog(16) < CLOSED_FORM);
    }
}
