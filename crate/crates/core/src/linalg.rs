//! Small dense matrix helpers on top of nalgebra.

use nalgebra::DMatrix;

use crate::error::{AlgebraError, Result};

/// `|det| <= DEGENERACY_TOL` is treated as singular.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Largest tolerated `|G_jk - G_kj|` for a matrix to count as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Partial-pivot LU inverse; also returns the determinant.
pub fn lu_inverse(m: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    if !m.is_square() {
        return Err(AlgebraError::MatrixShape {
            rows: m.nrows(),
            cols: m.ncols(),
            dim: m.nrows(),
        });
    }
    let lu = m.clone().lu();
    let det = lu.determinant();
    if !det.is_finite() || det.abs() <= DEGENERACY_TOL {
        return Err(AlgebraError::Singular { det });
    }
    let inv = lu.try_inverse().ok_or(AlgebraError::Singular { det })?;
    Ok((inv, det))
}

pub fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in (j + 1)..n {
            worst = worst.max((m[(j, k)] - m[(k, j)]).abs());
        }
    }
    worst
}

/// Ratio of extreme singular values, `inf` for singular input.
pub fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_small_matrix() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 2.0]);
        let (inv, det) = lu_inverse(&g).unwrap();
        assert!((det - 1.0).abs() < 1e-15);
        let expected = DMatrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 1.0]);
        assert!((inv - expected).abs().max() < 1e-14);
    }

    #[test]
    fn singular_rejected() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(lu_inverse(&g), Err(AlgebraError::Singular { .. })));
    }

    #[test]
    fn asymmetry_and_condition() {
        let g = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.25, 3.0]);
        assert_eq!(max_asymmetry(&g), 0.25);
        let d = DMatrix::from_row_slice(2, 2, &[4.0, 0.0, 0.0, -0.5]);
        assert!((condition_number(&d) - 8.0).abs() < 1e-12);
    }
}
