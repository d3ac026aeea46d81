//! Deterministic random instances for the law sweeps.
//!
//! Every check derives one fresh RNG per (seed, law id, instance index),
//! so laws can run in any order or in parallel and still see identical
//! instance streams for a given seed.
//!
//! Generated spectra are kept away from the null-space threshold: mixed
//! states are regularized toward the maximally mixed state (blend 1e-2 on
//! each block, 5e-2 on block weights), which bounds the condition number
//! of the quotient embedding and keeps certificate rounding well below
//! the law tolerances. Rank-deficient Gram matrices are exercised
//! deliberately through pure vector states, whose spectra split cleanly.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::algebra::{
    block_embed, compose_morphisms, conjugate_by_unitary, identity_morphism, tensor_left_inclusion,
    Algebra, StarMorphism,
};
use crate::gns::{gns_construct, GnsRep, PointedRep};
use crate::linalg::{CMatrix, CVector};
use crate::states::{state_from_block_densities, DensityMatrix, State};

/// Blend applied to every mixed block density toward the maximally mixed
/// matrix, bounding its smallest eigenvalue below by `MIX_FLOOR / n`.
const MIX_FLOOR: f64 = 1e-2;

/// Blend applied to block weights toward the uniform distribution.
const WEIGHT_FLOOR: f64 = 5e-2;

/// Probability of drawing a pure (rank-one, null-space-rich) state.
const PURE_PROBABILITY: f64 = 0.25;

/// Largest single-block matrix size a morphism chain may reach.
const MAX_BLOCK: usize = 6;

/// Deterministic source of algebras, states, morphism chains, and pointed
/// representations for the law sweeps.
#[derive(Clone, Debug)]
pub struct InstanceGenerator {
    seed: u64,
    algebra_menu: Vec<Algebra>,
    chain_starts: Vec<usize>,
    max_depth: usize,
}

impl InstanceGenerator {
    /// A generator over the standard menu: full matrix algebras of sizes
    /// 1 to 3 and the two-block sum `B(C^2) + B(C^3)`.
    pub fn new(seed: u64) -> Self {
        InstanceGenerator {
            seed,
            algebra_menu: vec![
                Algebra::full_matrix(1),
                Algebra::full_matrix(2),
                Algebra::full_matrix(3),
                Algebra::new(vec![2, 3]).expect("valid block sizes"),
            ],
            chain_starts: vec![1, 2, 3],
            max_depth: 3,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algebra_menu(&self) -> &[Algebra] {
        &self.algebra_menu
    }

    /// The RNG for one instance of one law: a pure function of the seed,
    /// the law id, and the instance index.
    pub fn instance_rng(&self, law_id: &str, index: usize) -> ChaCha12Rng {
        let mixed = mix64(self.seed ^ fnv1a(law_id.as_bytes())).wrapping_add(index as u64);
        ChaCha12Rng::seed_from_u64(mix64(mixed))
    }

    /// Uniform choice from the algebra menu.
    pub fn pick_algebra(&self, rng: &mut ChaCha12Rng) -> Algebra {
        self.algebra_menu[rng.random_range(0..self.algebra_menu.len())].clone()
    }

    /// A random state on the algebra: with probability 1/4 a pure vector
    /// state concentrated on one block (rank-deficient Gram), otherwise a
    /// regularized full-rank density on every block with Dirichlet-like
    /// block weights.
    pub fn random_state(&self, rng: &mut ChaCha12Rng, algebra: &Algebra) -> State {
        let blocks = algebra.block_dims();
        if rng.random_bool(PURE_PROBABILITY) {
            let chosen = rng.random_range(0..blocks.len());
            let densities: Vec<DensityMatrix> = blocks
                .iter()
                .enumerate()
                .map(|(b, &n)| {
                    if b == chosen {
                        DensityMatrix::pure(&random_unit_vector(rng, n))
                            .expect("normalized by construction")
                    } else {
                        DensityMatrix::maximally_mixed(n)
                    }
                })
                .collect();
            let mut weights = vec![0.0; blocks.len()];
            weights[chosen] = 1.0;
            state_from_block_densities(algebra, &densities, &weights)
                .expect("a pure block state is valid")
        } else {
            let densities: Vec<DensityMatrix> = blocks
                .iter()
                .map(|&n| self.random_density(rng, n))
                .collect();
            let weights = random_simplex_point(rng, blocks.len());
            state_from_block_densities(algebra, &densities, &weights)
                .expect("a mixture of block densities is valid")
        }
    }

    /// A full-rank random density matrix: normalized Gaussian `B† B`
    /// blended toward the maximally mixed matrix.
    pub fn random_density(&self, rng: &mut ChaCha12Rng, n: usize) -> DensityMatrix {
        let b = random_gaussian_matrix(rng, n, n);
        let mut rho = b.adjoint() * &b;
        let trace = rho.trace().re;
        let floor = MIX_FLOOR / n as f64;
        rho = rho.map(|x| x * ((1.0 - MIX_FLOOR) / trace));
        for i in 0..n {
            rho[(i, i)] += Complex64::new(floor, 0.0);
        }
        DensityMatrix::new(rho).expect("regularized Gaussian density is valid")
    }

    /// A Haar-like random unitary from the QR factorization of a Gaussian
    /// matrix.
    pub fn random_unitary(&self, rng: &mut ChaCha12Rng, n: usize) -> CMatrix {
        random_gaussian_matrix(rng, n, n).qr().q()
    }

    /// A verified morphism assembled from up to `max_depth` catalog steps
    /// starting at `B(C^start)`; depth 0 is the identity.
    pub fn random_chain(&self, rng: &mut ChaCha12Rng, start: usize) -> StarMorphism {
        let depth = rng.random_range(0..=self.max_depth);
        let mut chain = identity_morphism(&Algebra::full_matrix(start));
        for _ in 0..depth {
            let n = chain.target().block_dims()[0];
            let step = self.random_step(rng, n);
            chain = compose_morphisms(&step, &chain).expect("endpoints match by construction");
        }
        chain
    }

    /// A single chain from a randomly chosen starting block size.
    pub fn random_single_chain(&self, rng: &mut ChaCha12Rng) -> StarMorphism {
        let start = self.chain_starts[rng.random_range(0..self.chain_starts.len())];
        self.random_chain(rng, start)
    }

    /// A composable pair `(f, f′)` with `f′: A → B` and `f: B → C`.
    pub fn random_chain_pair(&self, rng: &mut ChaCha12Rng) -> (StarMorphism, StarMorphism) {
        let f_prime = self.random_single_chain(rng);
        let mid = f_prime.target().block_dims()[0];
        let f = self.random_chain(rng, mid);
        (f, f_prime)
    }

    fn random_step(&self, rng: &mut ChaCha12Rng, n: usize) -> StarMorphism {
        // Growth steps are available while the block stays within the cap.
        let mut kinds = vec![StepKind::Identity, StepKind::Conjugate];
        if n * 2 <= MAX_BLOCK {
            kinds.push(StepKind::Embed(2));
            kinds.push(StepKind::TensorLeft(2));
        }
        if n * 3 <= MAX_BLOCK {
            kinds.push(StepKind::Embed(3));
            kinds.push(StepKind::TensorLeft(3));
        }
        match kinds[rng.random_range(0..kinds.len())] {
            StepKind::Identity => identity_morphism(&Algebra::full_matrix(n)),
            StepKind::Conjugate => {
                let u = self.random_unitary(rng, n);
                conjugate_by_unitary(&u, crate::tol::STRUCTURAL).expect("QR factor is unitary")
            }
            StepKind::Embed(m) => block_embed(n, m),
            StepKind::TensorLeft(m) => tensor_left_inclusion(n, m),
        }
    }

    /// A cyclic pointed representation whose marked-vector state is the
    /// given state: its GNS output conjugated by a random unitary.
    pub fn cyclic_rep_of(&self, rng: &mut ChaCha12Rng, omega: &State) -> PointedRep {
        let gns = gns_construct(omega).expect("generated states are valid");
        let w = self.random_unitary(rng, gns.quotient_dim());
        conjugated_rep(gns.rep(), &w)
    }

    /// A cyclic pointed representation of a fresh random state.
    pub fn random_cyclic_rep(&self, rng: &mut ChaCha12Rng, algebra: &Algebra) -> PointedRep {
        let omega = self.random_state(rng, algebra);
        self.cyclic_rep_of(rng, &omega)
    }

    /// A non-cyclic enlargement of a GNS output with the same
    /// marked-vector state: direct sum with the representation of an
    /// independent random state, point padded by zeros, then conjugated.
    pub fn dilated_rep(&self, rng: &mut ChaCha12Rng, base: &GnsRep) -> PointedRep {
        let algebra = base.state().algebra();
        let junk_state = self.random_state(rng, algebra);
        let junk = gns_construct(&junk_state).expect("generated states are valid");
        let (d1, d2) = (base.quotient_dim(), junk.quotient_dim());
        let d = d1 + d2;
        let images = (0..algebra.dim())
            .map(|i| {
                let mut image = CMatrix::zeros(d, d);
                image
                    .view_mut((0, 0), (d1, d1))
                    .copy_from(base.rep().image(i));
                image
                    .view_mut((d1, d1), (d2, d2))
                    .copy_from(junk.rep().image(i));
                image
            })
            .collect();
        let mut omega = CVector::zeros(d);
        omega.rows_mut(0, d1).copy_from(base.rep().omega());
        let stacked = PointedRep::new(algebra, images, omega)
            .expect("a direct sum of representations is a representation");
        let w = self.random_unitary(rng, d);
        conjugated_rep(&stacked, &w)
    }
}

#[derive(Clone, Copy)]
enum StepKind {
    Identity,
    Conjugate,
    Embed(usize),
    TensorLeft(usize),
}

/// The same representation in rotated coordinates: images `w π w†` and
/// point `w Ω`.
pub fn conjugated_rep(rep: &PointedRep, w: &CMatrix) -> PointedRep {
    let w_star = w.adjoint();
    let images = (0..rep.algebra().dim())
        .map(|i| w * rep.image(i) * &w_star)
        .collect();
    let omega = w * rep.omega();
    PointedRep::new(rep.algebra(), images, omega)
        .expect("conjugation preserves the representation laws")
}

fn random_gaussian_matrix(rng: &mut ChaCha12Rng, rows: usize, cols: usize) -> CMatrix {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

fn random_unit_vector(rng: &mut ChaCha12Rng, n: usize) -> CVector {
    let v = CVector::from_fn(n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    v.map(|x| x / norm)
}

/// A point of the probability simplex, blended toward uniform: normalized
/// unit-rate exponential samples, which for the unblended part is the
/// flat Dirichlet distribution.
fn random_simplex_point(rng: &mut ChaCha12Rng, k: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    draws
        .iter()
        .map(|e| (1.0 - WEIGHT_FLOOR) * e / total + WEIGHT_FLOOR / k as f64)
        .collect()
}

fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_morphism;
    use crate::gns::is_cyclic;
    use crate::states::verify_state;

    #[test]
    fn identical_seeds_reproduce_identical_instances() {
        let gen_a = InstanceGenerator::new(7);
        let gen_b = InstanceGenerator::new(7);
        for index in 0..5 {
            let mut rng_a = gen_a.instance_rng("probe", index);
            let mut rng_b = gen_b.instance_rng("probe", index);
            let algebra = gen_a.pick_algebra(&mut rng_a);
            assert_eq!(algebra, gen_b.pick_algebra(&mut rng_b));
            let sa = gen_a.random_state(&mut rng_a, &algebra);
            let sb = gen_b.random_state(&mut rng_b, &algebra);
            assert_eq!(sa.coeffs(), sb.coeffs());
            let (fa, fpa) = gen_a.random_chain_pair(&mut rng_a);
            let (fb, fpb) = gen_b.random_chain_pair(&mut rng_b);
            assert_eq!(fa.matrix(), fb.matrix());
            assert_eq!(fpa.matrix(), fpb.matrix());
        }
    }

    #[test]
    fn different_laws_or_indices_decorrelate() {
        let gen = InstanceGenerator::new(7);
        let mut a = gen.instance_rng("law_one", 0);
        let mut b = gen.instance_rng("law_two", 0);
        let mut c = gen.instance_rng("law_one", 1);
        let x: f64 = a.random();
        assert_ne!(x, b.random::<f64>());
        assert_ne!(x, c.random::<f64>());
    }

    #[test]
    fn generated_states_pass_verification() {
        let gen = InstanceGenerator::new(11);
        for index in 0..20 {
            let mut rng = gen.instance_rng("states", index);
            let algebra = gen.pick_algebra(&mut rng);
            let omega = gen.random_state(&mut rng, &algebra);
            let cert = verify_state(&omega, crate::tol::STRUCTURAL);
            assert!(
                cert.pass,
                "instance {index}: violation {}",
                cert.max_violation
            );
        }
    }

    #[test]
    fn generated_chains_are_verified_and_composable() {
        let gen = InstanceGenerator::new(13);
        for index in 0..20 {
            let mut rng = gen.instance_rng("chains", index);
            let (f, f_prime) = gen.random_chain_pair(&mut rng);
            assert!(f.is_verified() && f_prime.is_verified());
            assert_eq!(f_prime.target(), f.source());
            assert!(f.target().block_dims()[0] <= MAX_BLOCK);
            let cert = verify_morphism(&f, crate::tol::catalog(f.target().dim()));
            assert!(
                cert.pass,
                "instance {index}: violation {}",
                cert.max_violation
            );
        }
    }

    #[test]
    fn mixed_states_keep_their_spectra_off_the_null_threshold() {
        let gen = InstanceGenerator::new(17);
        let algebra = Algebra::new(vec![2, 3]).unwrap();
        for index in 0..20 {
            let mut rng = gen.instance_rng("floor", index);
            let mut probe = rng.clone();
            if probe.random_bool(PURE_PROBABILITY) {
                continue; // this draw would be a pure state; skip it
            }
            let omega = gen.random_state(&mut rng, &algebra);
            // Mixed draws are bounded below by both regularization floors.
            let bound = (WEIGHT_FLOOR / 2.0) * (MIX_FLOOR / 3.0) * 0.9;
            assert!(
                omega.gram_min_eigenvalue() >= bound,
                "instance {index}: min eigenvalue {}",
                omega.gram_min_eigenvalue()
            );
        }
    }

    #[test]
    fn cyclic_and_dilated_reps_have_expected_cyclicity() {
        let gen = InstanceGenerator::new(19);
        let mut rng = gen.instance_rng("reps", 0);
        let algebra = Algebra::full_matrix(2);
        let omega = gen.random_state(&mut rng, &algebra);
        let rep = gen.cyclic_rep_of(&mut rng, &omega);
        assert!(is_cyclic(&rep, crate::tol::STRUCTURAL).cyclic);
        let restricted = crate::gns::rest(&rep).unwrap();
        let drift = crate::linalg::max_abs_diff_vec(restricted.coeffs(), omega.coeffs());
        assert!(drift <= 1e-10, "conjugation drifted the state by {drift}");

        let gns = gns_construct(&omega).unwrap();
        let dilated = gen.dilated_rep(&mut rng, &gns);
        assert!(dilated.hilbert_dim() > gns.quotient_dim());
        assert!(!is_cyclic(&dilated, crate::tol::STRUCTURAL).cyclic);
        let restricted = crate::gns::rest(&dilated).unwrap();
        let drift = crate::linalg::max_abs_diff_vec(restricted.coeffs(), omega.coeffs());
        assert!(drift <= 1e-10, "dilation drifted the state by {drift}");
    }
}
