//! Compound matrices: all `p x p` minors of a square matrix, grouped by `p`.
//!
//! If a linear map sends `e_j` to `Σ_k M[j][k] f_k`, its exterior power sends
//! the canonical blade `e_J` to `Σ_K det M[J,K] f_K`. This is how the metric
//! extension and change of basis act on every grade at once.

use nalgebra::DMatrix;

use crate::blade::Dimension;
use crate::error::{AlgebraError, Result};

/// Every minor `det M[J,K]` with `|J| = |K|`, stored per grade as a dense
/// row-major block indexed by the within-grade ranks of `J` and `K`.
#[derive(Debug, Clone)]
pub struct Compound {
    dim: Dimension,
    blocks: Vec<Vec<f64>>,
}

impl Compound {
    /// Minors are filled grade by grade with a first-row Laplace expansion
    /// over the already computed grade `p - 1` block.
    pub fn of(matrix: &DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() {
            return Err(AlgebraError::MatrixShape {
                rows: n,
                cols: matrix.ncols(),
                dim: n,
            });
        }
        let dim = Dimension::new(n)?;
        let table = dim.grades();
        let mut blocks: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        blocks.push(vec![1.0]);
        for p in 1..=n {
            let masks = table.masks(p);
            let width = masks.len();
            let prev = &blocks[p - 1];
            let prev_width = table.masks(p - 1).len();
            let mut block = vec![0.0; width * width];
            for (r, &rows) in masks.iter().enumerate() {
                let first = rows.trailing_zeros() as usize;
                let rest_rows = rows & (rows - 1);
                let rr = table.rank(rest_rows);
                for (c, &cols) in masks.iter().enumerate() {
                    let mut acc = 0.0;
                    let mut sign = 1.0;
                    let mut bits = cols;
                    while bits != 0 {
                        let k = bits.trailing_zeros() as usize;
                        let entry = matrix[(first, k)];
                        if entry != 0.0 {
                            let rest_cols = cols & !(1 << k);
                            acc += sign * entry * prev[rr * prev_width + table.rank(rest_cols)];
                        }
                        sign = -sign;
                        bits &= bits - 1;
                    }
                    block[r * width + c] = acc;
                }
            }
            blocks.push(block);
        }
        Ok(Compound { dim, blocks })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// `det M[rows, cols]`; zero when the masks have different sizes.
    pub fn minor(&self, rows: u32, cols: u32) -> f64 {
        let p = rows.count_ones() as usize;
        if cols.count_ones() as usize != p {
            return 0.0;
        }
        let table = self.dim.grades();
        let width = table.masks(p).len();
        self.blocks[p][table.rank(rows) * width + table.rank(cols)]
    }

    /// `y_K = Σ_J x_J det M[J,K]`: coefficients of the image of `Σ x_J e_J`.
    pub fn apply(&self, coeffs: &[f64]) -> Vec<f64> {
        let table = self.dim.grades();
        let mut out = vec![0.0; coeffs.len()];
        for p in 0..=self.dim.get() {
            let masks = table.masks(p);
            let width = masks.len();
            let block = &self.blocks[p];
            for (r, &j) in masks.iter().enumerate() {
                let x = coeffs[j as usize];
                if x == 0.0 {
                    continue;
                }
                let row = &block[r * width..(r + 1) * width];
                for (&k, &m) in masks.iter().zip(row) {
                    out[k as usize] += x * m;
                }
            }
        }
        out
    }

    /// `y_J = Σ_K det M[J,K] x_K`, the transposed action.
    pub fn apply_transpose(&self, coeffs: &[f64]) -> Vec<f64> {
        let table = self.dim.grades();
        let mut out = vec![0.0; coeffs.len()];
        for p in 0..=self.dim.get() {
            let masks = table.masks(p);
            let width = masks.len();
            let block = &self.blocks[p];
            for (r, &j) in masks.iter().enumerate() {
                let row = &block[r * width..(r + 1) * width];
                out[j as usize] = masks
                    .iter()
                    .zip(row)
                    .map(|(&k, &m)| m * coeffs[k as usize])
                    .sum();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn submatrix_det(m: &DMatrix<f64>, rows: u32, cols: u32) -> f64 {
        let r: Vec<usize> = (0..m.nrows()).filter(|i| rows & (1 << i) != 0).collect();
        let c: Vec<usize> = (0..m.ncols()).filter(|i| cols & (1 << i) != 0).collect();
        if r.is_empty() {
            return 1.0;
        }
        m.select_rows(&r).select_columns(&c).determinant()
    }

    #[test]
    fn minors_match_direct_determinants() {
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                2.0, -1.0, 0.5, 3.0, //
                0.25, 1.0, -2.0, 1.5, //
                -0.75, 0.0, 1.0, 2.0, //
                1.0, 4.0, -1.0, 0.0,
            ],
        );
        let c = Compound::of(&m).unwrap();
        for rows in 0u32..16 {
            for cols in 0u32..16 {
                if rows.count_ones() != cols.count_ones() {
                    continue;
                }
                let expected = submatrix_det(&m, rows, cols);
                assert!((c.minor(rows, cols) - expected).abs() < 1e-12);
            }
        }
        assert!((c.minor(0b1111, 0b1111) - m.determinant()).abs() < 1e-12);
    }

    #[test]
    fn diagonal_top_minor_is_determinant() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 3.0]));
        let c = Compound::of(&m).unwrap();
        assert_eq!(c.minor(0b11, 0b11), 6.0);
        assert_eq!(c.minor(0b01, 0b10), 0.0);
    }

    #[test]
    fn rejects_non_square() {
        assert!(Compound::of(&DMatrix::<f64>::zeros(2, 3)).is_err());
    }
}
