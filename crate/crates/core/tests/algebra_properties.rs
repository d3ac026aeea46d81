//! Property suites for the algebra layer: the C*-norm identities on
//! random elements, the catalog of verified morphisms, and spectral
//! invariance under unitary conjugation.

use num_complex::Complex64;
use proptest::prelude::*;

use gns_core::algebra::{
    compose_morphisms, conjugate_by_unitary, verify_morphism, Algebra, Element,
};
use gns_core::laws::InstanceGenerator;
use gns_core::linalg::CVector;
use gns_core::tol;

fn coords(dim: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), dim)
}

fn element_of(algebra: &Algebra, raw: &[(f64, f64)]) -> Element {
    let coords = CVector::from_iterator(
        raw.len(),
        raw.iter().map(|&(re, im)| Complex64::new(re, im)),
    );
    Element::from_coords(algebra, &coords).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_submultiplicative_and_cstar(raw_a in coords(13), raw_b in coords(13)) {
        let algebra = Algebra::new(vec![2, 3]).unwrap();
        let a = element_of(&algebra, &raw_a);
        let b = element_of(&algebra, &raw_b);

        let na = a.operator_norm();
        let nb = b.operator_norm();
        let nab = (&a * &b).operator_norm();
        prop_assert!(nab <= na * nb * (1.0 + 1e-10) + 1e-12);

        let cstar = (&a * &a.adjoint()).operator_norm();
        prop_assert!((cstar - na * na).abs() <= 1e-10 * (na * na).max(1.0));
    }

    #[test]
    fn catalog_chains_verify_and_compose(seed in any::<u64>()) {
        let gen = InstanceGenerator::new(seed);
        let mut rng = gen.instance_rng("algebra_catalog", 0);
        let (f, f_prime) = gen.random_chain_pair(&mut rng);

        let tol_f = tol::catalog(f.target().dim());
        prop_assert!(verify_morphism(&f, tol_f).pass);
        prop_assert!(verify_morphism(&f_prime, tol::catalog(f_prime.target().dim())).pass);

        let composite = compose_morphisms(&f, &f_prime).unwrap();
        prop_assert!(verify_morphism(&composite, tol::catalog(composite.target().dim())).pass);
        prop_assert!(composite.is_verified());
    }

    #[test]
    fn conjugation_preserves_operator_norms(seed in any::<u64>(), raw in coords(9)) {
        let gen = InstanceGenerator::new(seed);
        let mut rng = gen.instance_rng("algebra_conjugation", 0);
        let algebra = Algebra::full_matrix(3);
        let a = element_of(&algebra, &raw);

        let u = gen.random_unitary(&mut rng, 3);
        let f = conjugate_by_unitary(&u, tol::STRUCTURAL).unwrap();
        let image = f.apply(&a).unwrap();

        let before = a.operator_norm();
        let after = image.operator_norm();
        prop_assert!((after - before).abs() <= 1e-10 * before.max(1.0));
    }
}
