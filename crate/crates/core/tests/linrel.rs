mod support;

use kreinkit_core::linalg::{self, ComplexVector};
use kreinkit_core::linrel::{self, LinearRelation, ParamPair};
use kreinkit_core::{Complex64, Error};
use nalgebra::DVector;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;
use support::c;

fn random_vectors(seed: u64, n: usize, m: usize) -> Vec<ComplexVector> {
    let mut rng = support::rng(seed);
    (0..m)
        .map(|_| {
            DVector::from_fn(2 * n, |_, _| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            })
        })
        .collect()
}

fn cayley_relation(seed: u64, n: usize) -> (ParamPair, LinearRelation) {
    let u = support::random_unitary(&mut support::rng(seed), n);
    let pair = linrel::cayley_pair(&u).unwrap();
    let rel = LinearRelation::from_pair(&pair);
    (pair, rel)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cayley_pairs_are_selfadjoint_and_roundtrip(seed in any::<u64>(), n in 1usize..=8) {
        let u = support::random_unitary(&mut support::rng(seed), n);
        let pair = linrel::cayley_pair(&u).unwrap();
        let check = linrel::check_pair(&pair);
        prop_assert!(check.is_selfadjoint());
        prop_assert!(linrel::is_normalized(&pair));
        let back = linrel::cayley_transform(&LinearRelation::from_pair(&pair)).unwrap();
        prop_assert!((back - u).norm() <= 1e-10);
    }

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>(), n in 1usize..=5, m in 0usize..=10) {
        let rel = LinearRelation::from_span(n, &random_vectors(seed, n, m)).unwrap();
        let adj = rel.adjoint();
        prop_assert_eq!(rel.dim() + adj.dim(), 2 * n);
        prop_assert!(linrel::relations_equal(&adj.adjoint(), &rel));
    }

    #[test]
    fn selfadjointness_characterizations_agree(seed in any::<u64>(), n in 1usize..=5, m in 0usize..=10, lagrangian in any::<bool>()) {
        let rel = if lagrangian {
            cayley_relation(seed, n).1
        } else {
            LinearRelation::from_span(n, &random_vectors(seed, n, m)).unwrap()
        };
        let by_definition = rel.is_symmetric() && rel.dim() == n;
        prop_assert_eq!(rel.is_selfadjoint(), by_definition);
        prop_assert_eq!(rel.is_selfadjoint(), linrel::relations_equal(&rel, &rel.adjoint()));
        if lagrangian {
            prop_assert!(rel.is_selfadjoint());
        }
    }

    #[test]
    fn left_factor_keeps_relation(seed in any::<u64>(), n in 1usize..=6) {
        let (pair, rel) = cayley_relation(seed, n);
        let l = support::random_invertible(&mut support::rng(seed ^ 0x5a5a), n, 1e4);
        let scaled = pair.left_multiplied(&l).unwrap();
        prop_assert!(linrel::relations_equal(&rel, &LinearRelation::from_pair(&scaled)));
    }

    #[test]
    fn normalization_preserves_relation(seed in any::<u64>(), n in 1usize..=6) {
        let (pair, rel) = cayley_relation(seed, n);
        let l = support::random_invertible(&mut support::rng(seed.rotate_left(7)), n, 1e3);
        let scaled = pair.left_multiplied(&l).unwrap();
        let normalized = linrel::normalize_pair(&scaled).unwrap();
        prop_assert!(linrel::is_normalized(&normalized));
        prop_assert!(linrel::relations_equal(&rel, &LinearRelation::from_pair(&normalized)));
    }

    #[test]
    fn kernel_and_range_descriptions_agree(seed in any::<u64>(), n in 1usize..=8) {
        let (pair, rel) = cayley_relation(seed, n);
        let range = LinearRelation::from_normalized_range(&pair).unwrap();
        prop_assert!(linrel::relations_equal(&rel, &range));
    }

    #[test]
    fn denormalizer_roundtrip(seed in any::<u64>(), n in 1usize..=8) {
        let (pair, _) = cayley_relation(seed, n);
        let l = support::random_invertible(&mut support::rng(!seed), n, 1e3);
        let back = linrel::recover_denormalizer(&pair, &pair.left_multiplied(&l).unwrap()).unwrap();
        prop_assert!((back - l).norm() <= 1e-10);
    }

    #[test]
    fn arnold_minor_has_full_rank(seed in any::<u64>(), n in 1usize..=6) {
        let (_, rel) = cayley_relation(seed, n);
        let theta = linrel::arnold_projection(&rel).unwrap();
        prop_assert!(linalg::is_invertible(&linrel::coordinate_minor(&rel, &theta)));
        let rotated = linrel::rotate_relation(&rel, &theta);
        prop_assert!(rotated.is_selfadjoint());
    }
}

#[test]
fn range_description_rejects_non_hermitian_pair() {
    let pair = ParamPair::new(linalg::diag(&[c(1.0)]), linalg::diag(&[Complex64::new(0.0, 2.0)])).unwrap();
    assert_eq!(
        LinearRelation::from_normalized_range(&pair),
        Err(Error::NotHermitianPair)
    );
}

#[test]
fn arnold_rejects_non_lagrangian_and_large_inputs() {
    assert_eq!(
        linrel::arnold_projection(&LinearRelation::zero(2)),
        Err(Error::NotSelfAdjoint)
    );
    assert_eq!(
        linrel::arnold_projection(&LinearRelation::first_axis(17)),
        Err(Error::DimensionTooLarge(17))
    );
}

#[test]
fn arnold_finds_forced_coordinates() {
    // (0, e₁) and (0, e₃) lie in the relation, so both must be swapped.
    let u = linalg::diag(&[c(1.0), Complex64::from_polar(1.0, 0.4), c(1.0), c(-1.0)]);
    let rel = LinearRelation::from_pair(&linrel::cayley_pair(&u).unwrap());
    assert_eq!(linrel::arnold_projection(&rel).unwrap(), vec![0, 2]);
}

#[test]
fn denormalizer_requires_normalized_reference() {
    let zero = ParamPair::new(linalg::diag(&[c(0.0)]), linalg::diag(&[c(0.0)])).unwrap();
    let other = linrel::cayley_pair(&linalg::identity(1)).unwrap();
    assert_eq!(linrel::recover_denormalizer(&zero, &other), Err(Error::NotNormalized));
}

#[test]
fn pair_constructor_validates_shapes() {
    let a = linalg::identity(2);
    let b = linalg::identity(3);
    assert!(matches!(ParamPair::new(a, b), Err(Error::DimensionMismatch { .. })));
    let wide = nalgebra::DMatrix::from_element(2, 3, c(1.0));
    assert!(matches!(
        ParamPair::new(wide.clone(), wide),
        Err(Error::NotSquare { rows: 2, cols: 3 })
    ));
}
