//! Metric products: scalar product and left/right contracted products of
//! multivectors and of multiforms, plus the inversion and expansion formulas
//! built from them.
//!
//! Every product is the duality operation of the same shape applied after
//! the metric extension: `x·y = ⟨γ̲(x), y⟩`, `x⌟y = ⟨γ̲(x), y|`,
//! `y⌞x = |y, γ̲(x)⟩`, and the multiform versions with `γ̲⁻¹`.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::blade::Dimension;
use crate::compound::Compound;
use crate::duality::{pair, Duality};
use crate::error::{AlgebraError, Result};
use crate::graded::{Multiform, Multivector};
use crate::metric::{MetricExtensor, MetricTensor};

/// Smallest `|e_∧·e_∧|` accepted before dividing by it.
pub const PSEUDOSCALAR_NORM_FLOOR: f64 = 1e-12;

/// A metric extensor paired with the duality operations of its dimension.
#[derive(Debug, Clone)]
pub struct MetricSpace {
    extensor: MetricExtensor,
    duality: Arc<Duality>,
}

impl MetricSpace {
    pub fn new(extensor: MetricExtensor, duality: Arc<Duality>) -> Result<Self> {
        extensor.dim().check_same(duality.dim())?;
        Ok(MetricSpace { extensor, duality })
    }

    pub fn from_matrix(g: DMatrix<f64>) -> Result<Self> {
        let extensor = MetricExtensor::from_matrix(g)?;
        let duality = Duality::shared(extensor.dim());
        Ok(MetricSpace { extensor, duality })
    }

    pub fn euclidean(dim: Dimension) -> Self {
        MetricSpace {
            extensor: MetricExtensor::euclidean(dim),
            duality: Duality::shared(dim),
        }
    }

    pub fn dim(&self) -> Dimension {
        self.extensor.dim()
    }

    pub fn extensor(&self) -> &MetricExtensor {
        &self.extensor
    }

    pub fn duality(&self) -> &Duality {
        &self.duality
    }

    /// `x·y = ⟨γ̲(x), y⟩`.
    pub fn scalar_product_mv(&self, x: &Multivector, y: &Multivector) -> Result<f64> {
        pair(&self.extensor.extend(x)?, y)
    }

    /// `φ·ψ = ⟨γ̲⁻¹(φ), ψ⟩`.
    pub fn scalar_product_mf(&self, phi: &Multiform, psi: &Multiform) -> Result<f64> {
        pair(&self.extensor.extend_inverse(phi)?, psi)
    }

    /// `x⌟y = ⟨γ̲(x), y|`.
    pub fn lcontract_mv(&self, x: &Multivector, y: &Multivector) -> Result<Multivector> {
        lcontract_with(self.extensor.forward_compound(), &self.duality, x, y)
    }

    /// `y⌞x = |y, γ̲(x)⟩`.
    pub fn rcontract_mv(&self, y: &Multivector, x: &Multivector) -> Result<Multivector> {
        self.duality.right_contract_mv(y, &self.extensor.extend(x)?)
    }

    /// `φ⌟ψ = ⟨γ̲⁻¹(φ), ψ|`.
    pub fn lcontract_mf(&self, phi: &Multiform, psi: &Multiform) -> Result<Multiform> {
        self.duality
            .left_contract_mf(&self.extensor.extend_inverse(phi)?, psi)
    }

    /// `ψ⌞φ = |ψ, γ̲⁻¹(φ)⟩`.
    pub fn rcontract_mf(&self, psi: &Multiform, phi: &Multiform) -> Result<Multiform> {
        self.duality
            .right_contract_mf(psi, &self.extensor.extend_inverse(phi)?)
    }

    /// `e_∧·e_∧`, which equals `det G`.
    pub fn pseudoscalar_norm(&self) -> Result<f64> {
        pseudoscalar_norm_with(self.extensor.forward_compound(), self.dim())
    }

    /// `ε^∧·ε^∧`, which equals `det G⁻¹`.
    pub fn dual_pseudoscalar_norm(&self) -> Result<f64> {
        let eps = Multiform::pseudoscalar(self.dim());
        guard_norm(self.scalar_product_mf(&eps, &eps)?)
    }

    /// `γ̲⁻¹(φ) = ⟨φ, e_∧|⌟ẽ_∧ / (e_∧·e_∧)`.
    pub fn invert_extension_via_formula(&self, phi: &Multiform) -> Result<Multivector> {
        invert_with(self.extensor.forward_compound(), &self.duality, phi, false)
    }

    /// The companion form `⟨φ, ẽ_∧|⌟e_∧ / (e_∧·e_∧)`.
    pub fn invert_extension_via_formula_alt(&self, phi: &Multiform) -> Result<Multivector> {
        invert_with(self.extensor.forward_compound(), &self.duality, phi, true)
    }

    /// `x = (x⌟e_∧)⌟ẽ_∧ / (e_∧·e_∧)`, evaluated through both contractions.
    pub fn expand_multivector(&self, x: &Multivector) -> Result<Multivector> {
        let e = Multivector::pseudoscalar(self.dim());
        let inner = self.lcontract_mv(x, &e)?;
        let outer = self.lcontract_mv(&inner, &e.reversion())?;
        Ok(outer.scale(1.0 / self.pseudoscalar_norm()?))
    }

    /// `x = (x⌟ẽ_∧)⌟e_∧ / (e_∧·e_∧)`.
    pub fn expand_multivector_alt(&self, x: &Multivector) -> Result<Multivector> {
        let e = Multivector::pseudoscalar(self.dim());
        let inner = self.lcontract_mv(x, &e.reversion())?;
        let outer = self.lcontract_mv(&inner, &e)?;
        Ok(outer.scale(1.0 / self.pseudoscalar_norm()?))
    }

    /// `φ = (φ⌟ε^∧)⌟ε̃^∧ / (ε^∧·ε^∧)`.
    pub fn expand_multiform(&self, phi: &Multiform) -> Result<Multiform> {
        let eps = Multiform::pseudoscalar(self.dim());
        let inner = self.lcontract_mf(phi, &eps)?;
        let outer = self.lcontract_mf(&inner, &eps.reversion())?;
        Ok(outer.scale(1.0 / self.dual_pseudoscalar_norm()?))
    }

    /// `φ = (φ⌟ε̃^∧)⌟ε^∧ / (ε^∧·ε^∧)`.
    pub fn expand_multiform_alt(&self, phi: &Multiform) -> Result<Multiform> {
        let eps = Multiform::pseudoscalar(self.dim());
        let inner = self.lcontract_mf(phi, &eps.reversion())?;
        let outer = self.lcontract_mf(&inner, &eps)?;
        Ok(outer.scale(1.0 / self.dual_pseudoscalar_norm()?))
    }
}

fn guard_norm(norm: f64) -> Result<f64> {
    if norm.abs() < PSEUDOSCALAR_NORM_FLOOR {
        Err(AlgebraError::Inconsistent(
            "pseudoscalar norm vanished for an admissible metric",
        ))
    } else {
        Ok(norm)
    }
}

fn lcontract_with(
    forward: &Compound,
    duality: &Duality,
    x: &Multivector,
    y: &Multivector,
) -> Result<Multivector> {
    forward.dim().check_same(x.dim())?;
    let gx = Multiform::from_vec_unchecked(x.dim(), forward.apply(x.coeffs()));
    duality.left_contract_mv(&gx, y)
}

fn pseudoscalar_norm_with(forward: &Compound, dim: Dimension) -> Result<f64> {
    let e = Multivector::pseudoscalar(dim);
    let ge = Multiform::from_vec_unchecked(dim, forward.apply(e.coeffs()));
    guard_norm(pair(&ge, &e)?)
}

fn invert_with(
    forward: &Compound,
    duality: &Duality,
    phi: &Multiform,
    alt: bool,
) -> Result<Multivector> {
    let dim = forward.dim();
    dim.check_same(phi.dim())?;
    let e = Multivector::pseudoscalar(dim);
    let (first, second) = if alt {
        (e.reversion(), e)
    } else {
        let rev = e.reversion();
        (e, rev)
    };
    let inner = duality.left_contract_mv(phi, &first)?;
    let outer = lcontract_with(forward, duality, &inner, &second)?;
    Ok(outer.scale(1.0 / pseudoscalar_norm_with(forward, dim)?))
}

/// `γ⁻¹(ω) = ⟨ω, e_∧|⌟ẽ_∧ / (e_∧·e_∧)` for a 1-form `ω`, using only the
/// forward matrix `G` (never its inverse).
pub fn invert_metric_via_formula(g: &DMatrix<f64>, omega: &Multiform) -> Result<Multivector> {
    invert_metric_impl(g, omega, false)
}

/// The companion form `⟨ω, ẽ_∧|⌟e_∧ / (e_∧·e_∧)`.
pub fn invert_metric_via_formula_alt(g: &DMatrix<f64>, omega: &Multiform) -> Result<Multivector> {
    invert_metric_impl(g, omega, true)
}

fn invert_metric_impl(g: &DMatrix<f64>, omega: &Multiform, alt: bool) -> Result<Multivector> {
    let tensor = MetricTensor::new(g.clone())?;
    tensor.dim().check_same(omega.dim())?;
    if !omega.is_homogeneous(1) {
        return Err(AlgebraError::NotHomogeneous {
            expected: 1,
            found: omega.max_grade().unwrap_or(0),
        });
    }
    let forward = Compound::of(tensor.matrix())?;
    let duality = Duality::shared(tensor.dim());
    invert_with(&forward, &duality, omega, alt)
}

/// The whole matrix `G⁻¹` assembled row by row from the inversion formula
/// applied to `ε^1, ..., ε^n`.
pub fn inverse_matrix_via_formula(g: &DMatrix<f64>, alt: bool) -> Result<DMatrix<f64>> {
    let tensor = MetricTensor::new(g.clone())?;
    let dim = tensor.dim();
    let n = dim.get();
    let forward = Compound::of(tensor.matrix())?;
    let duality = Duality::shared(dim);
    let mut out = DMatrix::zeros(n, n);
    for j in 0..n {
        let eps = Multiform::blade(dim, &[j + 1])?;
        let row = invert_with(&forward, &duality, &eps, alt)?.vector_part();
        for (k, v) in row.into_iter().enumerate() {
            out[(j, k)] = v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn diag(entries: &[f64]) -> MetricSpace {
        MetricSpace::from_matrix(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(
            entries,
        )))
        .unwrap()
    }

    fn e(n: usize, idx: &[usize]) -> Multivector {
        Multivector::blade(d(n), idx).unwrap()
    }

    fn eps(n: usize, idx: &[usize]) -> Multiform {
        Multiform::blade(d(n), idx).unwrap()
    }

    #[test]
    fn gram_determinant_on_diag_2_3() {
        let s = diag(&[2.0, 3.0]);
        assert_eq!(s.scalar_product_mv(&e(2, &[1, 2]), &e(2, &[1, 2])).unwrap(), 6.0);
        assert_eq!(s.pseudoscalar_norm().unwrap(), 6.0);
    }

    #[test]
    fn contracted_products_on_diag_2_3() {
        let s = diag(&[2.0, 3.0]);
        assert_eq!(
            s.lcontract_mv(&e(2, &[1]), &e(2, &[1, 2])).unwrap(),
            e(2, &[2]) * 2.0
        );
        assert_eq!(
            s.lcontract_mf(&eps(2, &[1]), &eps(2, &[1, 2])).unwrap(),
            eps(2, &[2]) * 0.5
        );
        let id = MetricSpace::euclidean(d(2));
        assert_eq!(id.lcontract_mv(&e(2, &[1]), &e(2, &[1, 2])).unwrap(), e(2, &[2]));
        assert_eq!(
            id.lcontract_mf(&eps(2, &[1]), &eps(2, &[1, 2])).unwrap(),
            eps(2, &[2])
        );
    }

    #[test]
    fn inversion_formula_on_diag_2_3() {
        let g = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 3.0]));
        let v = invert_metric_via_formula(&g, &eps(2, &[1])).unwrap();
        assert!(v.max_abs_diff(&(e(2, &[1]) * 0.5)) < 1e-15);
        let inv = inverse_matrix_via_formula(&g, false).unwrap();
        assert!((inv[(1, 1)] - 1.0 / 3.0).abs() < 1e-15);
        assert!(invert_metric_via_formula(&g, &Multiform::scalar(d(2), 1.0)).is_err());
    }

    #[test]
    fn inversion_formula_euclidean() {
        let g = DMatrix::<f64>::identity(3, 3);
        for j in 1..=3 {
            let v = invert_metric_via_formula(&g, &eps(3, &[j])).unwrap();
            assert_eq!(v, e(3, &[j]));
        }
    }

    #[test]
    fn extension_inverse_formula_on_pseudoscalar() {
        let s = diag(&[2.0, 3.0, -0.5]);
        let ps = s.extensor().pseudoscalars();
        let r = s.invert_extension_via_formula(&ps.eps_wedge).unwrap();
        assert!(r.max_abs_diff(&ps.e_wedge_up) < 1e-15);
        let scalar = s
            .invert_extension_via_formula(&Multiform::scalar(d(3), 2.5))
            .unwrap();
        assert!(scalar.max_abs_diff(&Multivector::scalar(d(3), 2.5)) < 1e-15);
    }

    #[test]
    fn expansion_examples() {
        let id = MetricSpace::euclidean(d(2));
        assert_eq!(id.expand_multivector(&e(2, &[1])).unwrap(), e(2, &[1]));
        let s = diag(&[2.0, 3.0]);
        let x = Multivector::scalar(d(2), 1.0) + e(2, &[1, 2]);
        assert!(s.expand_multivector(&x).unwrap().max_abs_diff(&x) < 1e-15);
    }

    #[test]
    fn mismatched_space_rejected() {
        let ext = MetricExtensor::euclidean(d(2));
        assert!(MetricSpace::new(ext, Duality::shared(d(3))).is_err());
    }
}
