//! Random inputs for property checks: multivectors, metrics and changes of
//! basis drawn from a seeded generator.

use nalgebra::DMatrix;
use rand::Rng;

use crate::blade::Dimension;
use crate::graded::{Graded, Kind};
use crate::linalg::condition_number;

/// A random metric must satisfy `|det G| > MIN_DET` ...
pub const MIN_DET: f64 = 1e-3;
/// ... and have condition number below this.
pub const MAX_CONDITION: f64 = 1e6;

/// Coefficients uniform in `[-1, 1]` on every blade.
pub fn random_graded<K: Kind, R: Rng + ?Sized>(dim: Dimension, rng: &mut R) -> Graded<K> {
    let coeffs = (0..dim.blade_count())
        .map(|_| rng.random_range(-1.0..=1.0))
        .collect();
    Graded::from_coeffs(dim, coeffs).expect("finite by construction")
}

/// Uniform `[-1, 1]` coefficients on the grade-`p` blades only.
pub fn random_homogeneous<K: Kind, R: Rng + ?Sized>(
    dim: Dimension,
    grade: usize,
    rng: &mut R,
) -> Graded<K> {
    let count = dim.grades().masks(grade).len();
    let component: Vec<f64> = (0..count).map(|_| rng.random_range(-1.0..=1.0)).collect();
    Graded::include(dim, grade, &component).expect("grade within dimension")
}

/// Random symmetric `A + Aᵀ + d I` with `A` uniform in `[-1, 1]` and `d`
/// uniform in `[-n, n]`, resampled until `|det| > 1e-3` and
/// `cond < 1e6`. Signatures of every kind show up.
pub fn random_metric<R: Rng + ?Sized>(dim: Dimension, rng: &mut R) -> DMatrix<f64> {
    let n = dim.get();
    loop {
        let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..=1.0));
        let shift = rng.random_range(-(n as f64)..=(n as f64));
        let g = &a + a.transpose() + DMatrix::identity(n, n) * shift;
        if well_conditioned(&g) {
            return g;
        }
    }
}

/// Random invertible matrix with entries uniform in `[-1, 1]`, resampled
/// under the same conditioning rules as [`random_metric`].
pub fn random_invertible<R: Rng + ?Sized>(dim: Dimension, rng: &mut R) -> DMatrix<f64> {
    let n = dim.get();
    loop {
        let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..=1.0));
        if well_conditioned(&m) {
            return m;
        }
    }
}

fn well_conditioned(m: &DMatrix<f64>) -> bool {
    m.clone().lu().determinant().abs() > MIN_DET && condition_number(m) < MAX_CONDITION
}
