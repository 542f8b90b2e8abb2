//! Metric tensors, metric extensors and the extension of a metric extensor to
//! every grade.
//!
//! In coordinates a metric extensor is the matrix `G` with
//! `γ(e_j) = Σ_k G[j][k] ε^k`; its extension sends `e_J` to
//! `Σ_K det G[J,K] ε^K`, the `p`-th compound matrix of `G` on grade `p`.

use nalgebra::DMatrix;

use crate::blade::Dimension;
use crate::compound::Compound;
use crate::error::{AlgebraError, Result};
use crate::graded::{Multiform, Multivector};
use crate::linalg::{lu_inverse, max_asymmetry, DEGENERACY_TOL, SYMMETRY_TOL};

/// Symmetric non-degenerate bilinear form `g(e_j, e_k) = G[j][k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    dim: Dimension,
    g: DMatrix<f64>,
}

impl MetricTensor {
    /// Validates the matrix. Asymmetry up to `1e-12` is averaged away.
    pub fn new(g: DMatrix<f64>) -> Result<Self> {
        if !g.is_square() {
            return Err(AlgebraError::MatrixShape {
                rows: g.nrows(),
                cols: g.ncols(),
                dim: g.nrows(),
            });
        }
        let dim = Dimension::new(g.nrows())?;
        if let Some(index) = g.iter().position(|c| !c.is_finite()) {
            return Err(AlgebraError::NonFinite { index });
        }
        let asymmetry = max_asymmetry(&g);
        if asymmetry > SYMMETRY_TOL {
            return Err(AlgebraError::Asymmetric { asymmetry });
        }
        let g = (&g + g.transpose()) * 0.5;
        let det = g.clone().lu().determinant();
        if det.abs() <= DEGENERACY_TOL {
            return Err(AlgebraError::Singular { det });
        }
        Ok(MetricTensor { dim, g })
    }

    pub fn euclidean(dim: Dimension) -> Self {
        MetricTensor {
            dim,
            g: DMatrix::identity(dim.get(), dim.get()),
        }
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(
            entries,
        )))
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    /// `g(v, w)` on the grade-1 parts of `v` and `w`.
    pub fn eval(&self, v: &Multivector, w: &Multivector) -> Result<f64> {
        self.dim.check_same(v.dim())?;
        self.dim.check_same(w.dim())?;
        let (v, w) = (v.vector_part(), w.vector_part());
        let n = self.dim.get();
        Ok((0..n)
            .flat_map(|j| (0..n).map(move |k| (j, k)))
            .map(|(j, k)| v[j] * self.g[(j, k)] * w[k])
            .sum())
    }
}

/// Symmetric invertible map `γ: V -> V*` with its inverse and the compound
/// matrices of both, precomputed at construction.
#[derive(Debug, Clone)]
pub struct MetricExtensor {
    dim: Dimension,
    g: DMatrix<f64>,
    g_inv: DMatrix<f64>,
    det: f64,
    forward: Compound,
    inverse: Compound,
}

/// The four pseudoscalars `e_∧`, `ε^∧`, `e^∧ = γ̲⁻¹(ε^∧)` and `ε_∧ = γ̲(e_∧)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoscalarSet {
    pub e_wedge: Multivector,
    pub eps_wedge: Multiform,
    pub e_wedge_up: Multivector,
    pub eps_wedge_down: Multiform,
}

impl MetricExtensor {
    /// The unique extensor with `⟨γ(v), w⟩ = g(v, w)`, built from
    /// `γ(v) = g(v, e_j) ε^j`.
    pub fn from_tensor(tensor: &MetricTensor) -> Result<Self> {
        let n = tensor.dim.get();
        let mut g = DMatrix::zeros(n, n);
        for j in 0..n {
            let ej = Multivector::blade(tensor.dim, &[j + 1])?;
            for k in 0..n {
                let ek = Multivector::blade(tensor.dim, &[k + 1])?;
                // γ(e_j) = g(e_j, e_k) ε^k
                g[(j, k)] = tensor.eval(&ej, &ek)?;
            }
        }
        let (g_inv, det) = lu_inverse(&g)?;
        Ok(MetricExtensor {
            dim: tensor.dim,
            forward: Compound::of(&g)?,
            inverse: Compound::of(&g_inv)?,
            g,
            g_inv,
            det,
        })
    }

    pub fn from_matrix(g: DMatrix<f64>) -> Result<Self> {
        Self::from_tensor(&MetricTensor::new(g)?)
    }

    pub fn euclidean(dim: Dimension) -> Self {
        Self::from_tensor(&MetricTensor::euclidean(dim)).expect("identity is a valid metric")
    }

    /// `g(v, w) = ⟨γ(v), w⟩`.
    pub fn to_tensor(&self) -> MetricTensor {
        MetricTensor {
            dim: self.dim,
            g: self.g.clone(),
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &DMatrix<f64> {
        &self.g_inv
    }

    /// `det G` from the LU factorization.
    pub fn determinant(&self) -> f64 {
        self.det
    }

    pub fn forward_compound(&self) -> &Compound {
        &self.forward
    }

    pub fn inverse_compound(&self) -> &Compound {
        &self.inverse
    }

    /// `γ(v)` for a vector `v`.
    pub fn apply(&self, v: &Multivector) -> Result<Multiform> {
        require_grade_one(v)?;
        self.extend(v)
    }

    /// `γ⁻¹(ω)` for a form `ω`.
    pub fn apply_inverse(&self, omega: &Multiform) -> Result<Multivector> {
        require_grade_one(omega)?;
        self.extend_inverse(omega)
    }

    /// `γ̲(x)`: scalars unchanged, `e_J ↦ Σ_K det G[J,K] ε^K`.
    pub fn extend(&self, x: &Multivector) -> Result<Multiform> {
        self.dim.check_same(x.dim())?;
        Ok(Multiform::from_vec_unchecked(self.dim, self.forward.apply(x.coeffs())))
    }

    /// `γ̲⁻¹(φ)`, the extension of `γ⁻¹`.
    pub fn extend_inverse(&self, phi: &Multiform) -> Result<Multivector> {
        self.dim.check_same(phi.dim())?;
        Ok(Multivector::from_vec_unchecked(self.dim, self.inverse.apply(phi.coeffs())))
    }

    /// Reciprocal bases `e^j = γ⁻¹(ε^j)` and `ε_j = γ(e_j)`.
    pub fn reciprocal_basis(&self) -> (Vec<Multivector>, Vec<Multiform>) {
        let n = self.dim.get();
        let up = (0..n)
            .map(|j| {
                let row: Vec<f64> = self.g_inv.row(j).iter().copied().collect();
                Multivector::vector(self.dim, &row).expect("finite inverse")
            })
            .collect();
        let down = (0..n)
            .map(|j| {
                let row: Vec<f64> = self.g.row(j).iter().copied().collect();
                Multiform::vector(self.dim, &row).expect("finite metric")
            })
            .collect();
        (up, down)
    }

    pub fn pseudoscalars(&self) -> PseudoscalarSet {
        let e_wedge = Multivector::pseudoscalar(self.dim);
        let eps_wedge = Multiform::pseudoscalar(self.dim);
        let e_wedge_up = self.extend_inverse(&eps_wedge).expect("same dimension");
        let eps_wedge_down = self.extend(&e_wedge).expect("same dimension");
        PseudoscalarSet {
            e_wedge,
            eps_wedge,
            e_wedge_up,
            eps_wedge_down,
        }
    }
}

fn require_grade_one<K: crate::graded::Kind>(x: &crate::graded::Graded<K>) -> Result<()> {
    if x.is_homogeneous(1) {
        Ok(())
    } else {
        Err(AlgebraError::NotHomogeneous {
            expected: 1,
            found: x.max_grade().unwrap_or(0),
        })
    }
}
