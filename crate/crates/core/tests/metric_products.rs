use dualmetric::products::inverse_matrix_via_formula;
use dualmetric::sampling::{random_graded, random_metric};
use dualmetric::{
    invert_metric_via_formula, invert_metric_via_formula_alt, pair, AlgebraError, Dimension,
    MetricExtensor, MetricSpace, MetricTensor, Multiform, Multivector,
};
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn d(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

fn diag(entries: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

#[test]
fn products_on_diag_2_3() {
    let space = MetricSpace::from_matrix(diag(&[2.0, 3.0])).unwrap();
    let e1 = Multivector::blade(d(2), &[1]).unwrap();
    let e2 = Multivector::blade(d(2), &[2]).unwrap();
    let e12 = Multivector::blade(d(2), &[1, 2]).unwrap();
    assert_eq!(space.scalar_product_mv(&e1, &e1).unwrap(), 2.0);
    assert_eq!(space.scalar_product_mv(&e1, &e2).unwrap(), 0.0);
    assert_eq!(space.scalar_product_mv(&e12, &e12).unwrap(), 6.0);
    assert_eq!(space.lcontract_mv(&e1, &e12).unwrap(), e2.scale(2.0));
    assert_eq!(space.pseudoscalar_norm().unwrap(), 6.0);

    let d1 = Multiform::blade(d(2), &[1]).unwrap();
    let back = space.extensor().apply_inverse(&d1).unwrap();
    assert_eq!(back, e1.scale(0.5));
    let formula = space.invert_extension_via_formula(&d1).unwrap();
    assert!(formula.max_abs_diff(&back) < 1e-15);
}

#[test]
fn lorentzian_pseudoscalar_has_negative_square() {
    let space = MetricSpace::from_matrix(diag(&[1.0, -1.0, -1.0, -1.0])).unwrap();
    assert_eq!(space.pseudoscalar_norm().unwrap(), -1.0);
    assert_eq!(space.dual_pseudoscalar_norm().unwrap(), -1.0);
    let set = space.extensor().pseudoscalars();
    assert_eq!(pair(&set.eps_wedge, &set.e_wedge).unwrap(), 1.0);
}

#[test]
fn pseudoscalar_norms_are_determinants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=6 {
        for _ in 0..20 {
            let g = random_metric(d(n), &mut rng);
            let space = MetricSpace::from_matrix(g).unwrap();
            let det = space.extensor().determinant();
            let norm = space.pseudoscalar_norm().unwrap();
            let dual = space.dual_pseudoscalar_norm().unwrap();
            assert!((norm - det).abs() <= 1e-9 * det.abs().max(1.0));
            assert!((norm * dual - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn inversion_formula_matches_lu() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=6 {
        for _ in 0..20 {
            let g = random_metric(d(n), &mut rng);
            let gamma = MetricExtensor::from_matrix(g.clone()).unwrap();
            let a = inverse_matrix_via_formula(&g, false).unwrap();
            let b = inverse_matrix_via_formula(&g, true).unwrap();
            let scale = gamma.inverse_matrix().amax().max(1.0);
            assert!((&a - gamma.inverse_matrix()).amax() <= 1e-9 * scale);
            assert!((&a - &b).amax() <= 1e-12 * scale);

            let omega: Multiform = dualmetric::sampling::random_homogeneous(d(n), 1, &mut rng);
            let lu = gamma.apply_inverse(&omega).unwrap();
            let f = invert_metric_via_formula(&g, &omega).unwrap();
            let f_alt = invert_metric_via_formula_alt(&g, &omega).unwrap();
            assert!(f.max_abs_diff(&lu) <= 1e-9 * lu.max_abs().max(1.0));
            assert!(f.max_abs_diff(&f_alt) <= 1e-12 * lu.max_abs().max(1.0));
        }
    }
}

#[test]
fn inversion_formula_rejects_bad_input() {
    let g = diag(&[1.0, 2.0]);
    let bivector = Multiform::blade(d(2), &[1, 2]).unwrap();
    assert!(matches!(
        invert_metric_via_formula(&g, &bivector),
        Err(AlgebraError::NotHomogeneous { .. })
    ));
    let wrong_dim = Multiform::blade(d(3), &[1]).unwrap();
    assert!(invert_metric_via_formula(&g, &wrong_dim).is_err());
    let singular = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
    assert!(matches!(
        inverse_matrix_via_formula(&singular, false),
        Err(AlgebraError::Singular { .. })
    ));
}

#[test]
fn tensor_extensor_round_trip_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 1..=6 {
        let g = random_metric(d(n), &mut rng);
        let tensor = MetricTensor::new(g).unwrap();
        let back = MetricExtensor::from_tensor(&tensor).unwrap().to_tensor();
        assert_eq!(back, tensor);
    }
}

#[test]
fn extension_and_inverse_extension_cancel() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 1..=6 {
        let gamma = MetricExtensor::from_matrix(random_metric(d(n), &mut rng)).unwrap();
        let x: Multivector = random_graded(d(n), &mut rng);
        let round = gamma.extend_inverse(&gamma.extend(&x).unwrap()).unwrap();
        assert!(round.max_abs_diff(&x) <= 1e-9);
    }
}

#[test]
fn products_check_dimensions() {
    let space = MetricSpace::euclidean(d(3));
    let x = Multivector::scalar(d(2), 1.0);
    assert!(matches!(
        space.scalar_product_mv(&x, &x),
        Err(AlgebraError::DimensionMismatch { .. })
    ));
}
