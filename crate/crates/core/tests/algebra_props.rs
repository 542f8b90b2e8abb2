use dualmetric::sampling::{random_graded, random_homogeneous, random_invertible};
use dualmetric::{pair, Dimension, Duality, Multiform, Multivector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup() -> impl Strategy<Value = (Dimension, ChaCha8Rng)> {
    (1usize..=6, any::<u64>())
        .prop_map(|(n, seed)| (Dimension::new(n).unwrap(), ChaCha8Rng::seed_from_u64(seed)))
}

fn close(a: &Multivector, b: &Multivector, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol * (1.0 + a.max_abs().max(b.max_abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_bilinear((dim, mut rng) in setup(), s in -3.0f64..3.0) {
        let a: Multivector = random_graded(dim, &mut rng);
        let b: Multivector = random_graded(dim, &mut rng);
        let c: Multivector = random_graded(dim, &mut rng);
        let lhs = (a.scale(s) + b.clone()).wedge(&c).unwrap();
        let rhs = a.wedge(&c).unwrap() * s + b.wedge(&c).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn wedge_is_associative((dim, mut rng) in setup()) {
        let a: Multivector = random_graded(dim, &mut rng);
        let b: Multivector = random_graded(dim, &mut rng);
        let c: Multivector = random_graded(dim, &mut rng);
        let lhs = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let rhs = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn homogeneous_wedge_graded_commutes((dim, mut rng) in setup(), p in 0usize..=6, q in 0usize..=6) {
        let n = dim.get();
        let (p, q) = (p.min(n), q.min(n));
        let a: Multiform = random_homogeneous(dim, p, &mut rng);
        let b: Multiform = random_homogeneous(dim, q, &mut rng);
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = a.wedge(&b).unwrap();
        let rhs = b.wedge(&a).unwrap() * sign;
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-14);
    }

    #[test]
    fn reversion_and_involution_over_wedge((dim, mut rng) in setup()) {
        let a: Multivector = random_graded(dim, &mut rng);
        let b: Multivector = random_graded(dim, &mut rng);
        let ab = a.wedge(&b).unwrap();
        prop_assert!(close(&ab.reversion(), &b.reversion().wedge(&a.reversion()).unwrap(), 1e-12));
        prop_assert!(close(
            &ab.grade_involution(),
            &a.grade_involution().wedge(&b.grade_involution()).unwrap(),
            1e-12
        ));
        prop_assert_eq!(a.reversion().reversion(), a.clone());
        prop_assert_eq!(a.grade_involution().grade_involution(), a);
    }

    #[test]
    fn grade_projections_partition((dim, mut rng) in setup()) {
        let a: Multivector = random_graded(dim, &mut rng);
        let mut sum = Multivector::zero(dim);
        for p in 0..=dim.get() {
            let part = a.grade_project(p).unwrap();
            prop_assert!(part.is_homogeneous(p));
            sum = sum + part;
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn contraction_is_adjoint_to_wedge((dim, mut rng) in setup()) {
        // <ψ, φ ⌟ x> = <φ̃ ∧ ψ, x> on whole inhomogeneous elements.
        let duality = Duality::new(dim);
        let phi: Multiform = random_graded(dim, &mut rng);
        let psi: Multiform = random_graded(dim, &mut rng);
        let x: Multivector = random_graded(dim, &mut rng);
        let lhs = pair(&psi, &duality.left_contract_mv(&phi, &x).unwrap()).unwrap();
        let rhs = pair(&phi.reversion().wedge(&psi).unwrap(), &x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + lhs.abs()));
    }
}

#[test]
fn pairing_and_contraction_are_basis_invariant() {
    // Change of basis by 100 random invertible M per dimension; vectors
    // transform by the compound of M⁻¹ and forms contragrediently.
    for n in 1..=6 {
        let dim = Dimension::new(n).unwrap();
        let duality = Duality::new(dim);
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + n as u64);
        for _ in 0..100 {
            let m = random_invertible(dim, &mut rng);
            let x: Multivector = random_graded(dim, &mut rng);
            let phi: Multiform = random_graded(dim, &mut rng);
            let x2 = x.change_basis(&m).unwrap();
            let phi2 = phi.change_basis(&m).unwrap();
            let before = pair(&phi, &x).unwrap();
            let after = pair(&phi2, &x2).unwrap();
            assert!(
                (before - after).abs() <= 1e-8 * before.abs().max(1.0),
                "n={n}: {before} vs {after}"
            );
            let c = duality.left_contract_mv(&phi, &x).unwrap();
            let c2 = duality.left_contract_mv(&phi2, &x2).unwrap();
            let back = c.change_basis(&m).unwrap();
            assert!(
                back.max_abs_diff(&c2) <= 1e-8 * back.max_abs().max(1.0),
                "n={n}: contraction moved by {:e}",
                back.max_abs_diff(&c2)
            );
        }
    }
}

#[test]
fn wedge_laws_on_500_homogeneous_pairs() {
    use rand::Rng;
    for n in 1..=6 {
        let dim = Dimension::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(500 + n as u64);
        for _ in 0..500 {
            let (p, q, r) = (rng.random_range(0..=n), rng.random_range(0..=n), rng.random_range(0..=n));
            let a: Multivector = random_homogeneous(dim, p, &mut rng);
            let b: Multivector = random_homogeneous(dim, q, &mut rng);
            let c: Multivector = random_homogeneous(dim, r, &mut rng);
            let s: f64 = rng.random_range(-2.0..=2.0);

            let lhs = (a.scale(s) + c.clone()).wedge(&b).unwrap();
            let rhs = a.wedge(&b).unwrap().scale(s) + c.wedge(&b).unwrap();
            assert!(close(&lhs, &rhs, 1e-12), "n={n}: bilinearity");

            let lhs = a.wedge(&b).unwrap().wedge(&c).unwrap();
            let rhs = a.wedge(&b.wedge(&c).unwrap()).unwrap();
            assert!(close(&lhs, &rhs, 1e-12), "n={n}: associativity");

            let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
            let swapped = b.wedge(&a).unwrap().scale(sign);
            assert!(a.wedge(&b).unwrap().max_abs_diff(&swapped) <= 1e-14, "n={n}: commutation");
        }
    }
}
