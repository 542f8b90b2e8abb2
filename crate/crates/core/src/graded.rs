//! Dense blade-coordinate storage for multivectors (elements of `⋀V`) and
//! multiforms (elements of `⋀V*`).
//!
//! Both share one generic container, [`Graded`], tagged by a [`Kind`] marker.
//! The marker keeps the two spaces apart at the type level: a pairing takes
//! one of each, and there is no way to hand a multiform to an operation that
//! expects a multivector.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::blade::{involution_sign, reversion_sign, wedge_sign, BladeIndex, Dimension};
use crate::compound::Compound;
use crate::error::{AlgebraError, Result};
use crate::linalg::lu_inverse;

/// Variance marker for [`Graded`].
pub trait Kind: Copy + Eq + fmt::Debug + Send + Sync + 'static {
    /// The other space of the duality.
    type Dual: Kind<Dual = Self>;
    /// Letter used for basis elements when printing (`e` or `d`).
    const SYMBOL: char;
    const NAME: &'static str;
}

/// Marker for `⋀V`: basis blades `e_J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contravariant {}

/// Marker for `⋀V*`: dual basis blades `ε^J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Covariant {}

impl Kind for Contravariant {
    type Dual = Covariant;
    const SYMBOL: char = 'e';
    const NAME: &'static str = "multivector";
}

impl Kind for Covariant {
    type Dual = Contravariant;
    const SYMBOL: char = 'd';
    const NAME: &'static str = "multiform";
}

/// A real combination of canonical blades, `2^n` coefficients indexed by mask.
#[derive(Clone, PartialEq)]
pub struct Graded<K: Kind> {
    dim: Dimension,
    coeffs: Vec<f64>,
    _kind: PhantomData<K>,
}

pub type Multivector = Graded<Contravariant>;
pub type Multiform = Graded<Covariant>;

impl<K: Kind> Graded<K> {
    pub fn zero(dim: Dimension) -> Self {
        Self::from_vec_unchecked(dim, vec![0.0; dim.blade_count()])
    }

    pub fn scalar(dim: Dimension, value: f64) -> Self {
        let mut out = Self::zero(dim);
        out.coeffs[0] = value;
        out
    }

    pub fn from_coeffs(dim: Dimension, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != dim.blade_count() {
            return Err(AlgebraError::LengthMismatch {
                expected: dim.blade_count(),
                found: coeffs.len(),
            });
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(AlgebraError::NonFinite { index });
        }
        Ok(Self::from_vec_unchecked(dim, coeffs))
    }

    pub(crate) fn from_vec_unchecked(dim: Dimension, coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), dim.blade_count());
        Graded {
            dim,
            coeffs,
            _kind: PhantomData,
        }
    }

    /// The canonical blade `e_J` (or `ε^J`) with coefficient 1.
    pub fn basis(dim: Dimension, blade: BladeIndex) -> Self {
        let mut out = Self::zero(dim);
        out.coeffs[blade.mask() as usize] = 1.0;
        out
    }

    /// `e_{j1} ∧ ... ∧ e_{jp}` for 1-based indices in the given order; zero
    /// if an index repeats.
    pub fn blade(dim: Dimension, indices: &[usize]) -> Result<Self> {
        let blade = BladeIndex::from_indices(indices, dim)?;
        let sign = crate::blade::permutation_sign(indices);
        let mut out = Self::zero(dim);
        out.coeffs[blade.mask() as usize] = sign as f64;
        Ok(out)
    }

    /// Grade-1 element `Σ_j c_j e_j` from its `n` components.
    pub fn vector(dim: Dimension, components: &[f64]) -> Result<Self> {
        if components.len() != dim.get() {
            return Err(AlgebraError::LengthMismatch {
                expected: dim.get(),
                found: components.len(),
            });
        }
        let mut out = Self::zero(dim);
        for (j, &c) in components.iter().enumerate() {
            out.coeffs[1 << j] = c;
        }
        if let Some(index) = out.coeffs.iter().position(|c| !c.is_finite()) {
            return Err(AlgebraError::NonFinite { index });
        }
        Ok(out)
    }

    /// `e_1 ∧ ... ∧ e_n` (or `ε^1 ∧ ... ∧ ε^n`).
    pub fn pseudoscalar(dim: Dimension) -> Self {
        Self::basis(dim, BladeIndex::new(dim.pseudoscalar_mask(), dim).unwrap())
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    #[inline]
    pub fn coeff(&self, blade: BladeIndex) -> f64 {
        self.coeffs[blade.mask() as usize]
    }

    /// Grade-1 components `(c_1, ..., c_n)`.
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.dim.get()).map(|j| self.coeffs[1 << j]).collect()
    }

    /// Nonzero terms as `(blade, coefficient)` in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeIndex, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(m, &c)| (BladeIndex::new(m as u32, self.dim).unwrap(), c))
    }

    /// `[a]_p` as a full element: only the grade-`p` coefficients survive.
    pub fn grade_project(&self, grade: usize) -> Result<Self> {
        self.dim.check_grade(grade)?;
        let mut out = Self::zero(self.dim);
        for &m in self.dim.grades().masks(grade) {
            out.coeffs[m as usize] = self.coeffs[m as usize];
        }
        Ok(out)
    }

    /// Compact grade-`p` coefficients, ordered as [`crate::blade::GradeTable::masks`].
    pub fn component(&self, grade: usize) -> Result<Vec<f64>> {
        self.dim.check_grade(grade)?;
        Ok(self
            .dim
            .grades()
            .masks(grade)
            .iter()
            .map(|&m| self.coeffs[m as usize])
            .collect())
    }

    /// Inclusion of a grade-`p` component (compact coefficients) as a
    /// `p`-homogeneous element.
    pub fn include(dim: Dimension, grade: usize, component: &[f64]) -> Result<Self> {
        dim.check_grade(grade)?;
        let masks = dim.grades().masks(grade);
        if component.len() != masks.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: masks.len(),
                found: component.len(),
            });
        }
        let mut out = Self::zero(dim);
        for (&m, &c) in masks.iter().zip(component) {
            out.coeffs[m as usize] = c;
        }
        if let Some(index) = out.coeffs.iter().position(|c| !c.is_finite()) {
            return Err(AlgebraError::NonFinite { index });
        }
        Ok(out)
    }

    /// True when every coefficient off grade `p` is exactly zero.
    pub fn is_homogeneous(&self, grade: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, &c)| c == 0.0 || (m as u32).count_ones() as usize == grade)
    }

    /// Largest grade carrying a nonzero coefficient, if any.
    pub fn max_grade(&self) -> Option<usize> {
        self.terms().map(|(b, _)| b.grade()).max()
    }

    /// Exterior product. Bilinear extension of the blade rule
    /// `e_A ∧ e_B = sign(A,B) e_{A∪B}` for disjoint `A`, `B`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.dim.check_same(other.dim)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let a = a as u32;
            let free = self.dim.pseudoscalar_mask() & !a;
            // Enumerate the subsets of the complement of `a`.
            let mut b = free;
            loop {
                let y = other.coeffs[b as usize];
                if y != 0.0 {
                    let sign = wedge_sign(a, b).expect("disjoint by construction");
                    out[(a | b) as usize] += sign * x * y;
                }
                if b == 0 {
                    break;
                }
                b = (b - 1) & free;
            }
        }
        Ok(Self::from_vec_unchecked(self.dim, out))
    }

    fn scale_by_grade(&self, sign: impl Fn(usize) -> f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| sign((m as u32).count_ones() as usize) * c)
            .collect();
        Self::from_vec_unchecked(self.dim, coeffs)
    }

    /// `â`: grade `p` scaled by `(-1)^p`.
    pub fn grade_involution(&self) -> Self {
        self.scale_by_grade(involution_sign)
    }

    /// `ã`: grade `p` scaled by `(-1)^(p(p-1)/2)`.
    pub fn reversion(&self) -> Self {
        self.scale_by_grade(reversion_sign)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_vec_unchecked(self.dim, self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.dim.check_same(other.dim)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.dim.check_same(other.dim)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_vec_unchecked(self.dim, coeffs)
    }

    /// Infinity norm of the coefficient vector.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl Multivector {
    /// Coordinates of the same element in the basis `e'_j = Σ_k M[j][k] e_k`.
    pub fn change_basis(&self, m: &DMatrix<f64>) -> Result<Self> {
        check_basis_matrix(m, self.dim)?;
        let (inv, _) = lu_inverse(m)?;
        // x = Σ_J x'_J e'_J and e'_J = Σ_K det M[J,K] e_K, so x' = C(M^-1)^T x.
        let coeffs = Compound::of(&inv)?.apply(&self.coeffs);
        Ok(Self::from_vec_unchecked(self.dim, coeffs))
    }
}

impl Multiform {
    /// Coordinates in the dual basis of `e'_j = Σ_k M[j][k] e_k`
    /// (contragredient action, so pairings are unchanged).
    pub fn change_basis(&self, m: &DMatrix<f64>) -> Result<Self> {
        check_basis_matrix(m, self.dim)?;
        // Validates invertibility with the same threshold as multivectors.
        lu_inverse(m)?;
        let coeffs = Compound::of(m)?.apply_transpose(&self.coeffs);
        Ok(Self::from_vec_unchecked(self.dim, coeffs))
    }
}

fn check_basis_matrix(m: &DMatrix<f64>, dim: Dimension) -> Result<()> {
    if m.nrows() != dim.get() || m.ncols() != dim.get() {
        return Err(AlgebraError::MatrixShape {
            rows: m.nrows(),
            cols: m.ncols(),
            dim: dim.get(),
        });
    }
    Ok(())
}

impl<K: Kind> Index<BladeIndex> for Graded<K> {
    type Output = f64;

    fn index(&self, blade: BladeIndex) -> &f64 {
        &self.coeffs[blade.mask() as usize]
    }
}

// Arithmetic operators panic on mismatched dimensions; use `checked_add` /
// `checked_sub` when the operands are not known to agree.

impl<K: Kind> Add for &Graded<K> {
    type Output = Graded<K>;

    fn add(self, rhs: Self) -> Graded<K> {
        self.checked_add(rhs).expect("dimension mismatch in addition")
    }
}

impl<K: Kind> Add for Graded<K> {
    type Output = Graded<K>;

    fn add(self, rhs: Self) -> Graded<K> {
        &self + &rhs
    }
}

impl<K: Kind> AddAssign<&Graded<K>> for Graded<K> {
    fn add_assign(&mut self, rhs: &Graded<K>) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<K: Kind> Sub for &Graded<K> {
    type Output = Graded<K>;

    fn sub(self, rhs: Self) -> Graded<K> {
        self.checked_sub(rhs).expect("dimension mismatch in subtraction")
    }
}

impl<K: Kind> Sub for Graded<K> {
    type Output = Graded<K>;

    fn sub(self, rhs: Self) -> Graded<K> {
        &self - &rhs
    }
}

impl<K: Kind> Neg for &Graded<K> {
    type Output = Graded<K>;

    fn neg(self) -> Graded<K> {
        self.scale(-1.0)
    }
}

impl<K: Kind> Neg for Graded<K> {
    type Output = Graded<K>;

    fn neg(self) -> Graded<K> {
        self.scale(-1.0)
    }
}

impl<K: Kind> Mul<f64> for &Graded<K> {
    type Output = Graded<K>;

    fn mul(self, rhs: f64) -> Graded<K> {
        self.scale(rhs)
    }
}

impl<K: Kind> Mul<f64> for Graded<K> {
    type Output = Graded<K>;

    fn mul(self, rhs: f64) -> Graded<K> {
        self.scale(rhs)
    }
}

impl<K: Kind> Mul<&Graded<K>> for f64 {
    type Output = Graded<K>;

    fn mul(self, rhs: &Graded<K>) -> Graded<K> {
        rhs.scale(self)
    }
}

impl<K: Kind> fmt::Debug for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}; {})", K::NAME, self.dim, self)
    }
}

/// Terms are written `c*e1^e3`, which the CLI expression grammar reads back.
impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (blade, c) in self.terms() {
            let magnitude = c.abs();
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            }
            first = false;
            if blade.grade() == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if magnitude != 1.0 {
                write!(f, "{magnitude}*")?;
            }
            let factors: Vec<String> = blade
                .indices()
                .iter()
                .map(|j| format!("{}{}", K::SYMBOL, j))
                .collect();
            f.write_str(&factors.join("^"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
