//! Dimensions, canonical basis blades and the sign bookkeeping shared by
//! every blade-level operation.
//!
//! A blade is named by a bitmask: bit `j - 1` set means the factor `e_j`
//! (or `ε^j`) is present. The canonical blade lists its factors in strictly
//! increasing index order, so the mask alone fixes its orientation.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{AlgebraError, Result};

/// Largest supported dimension; dense storage is `2^n` coefficients.
pub const MAX_DIM: usize = 12;

/// Dimension `n` of the underlying vector space, `1 <= n <= 12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(u8);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_DIM).contains(&n) {
            Ok(Dimension(n as u8))
        } else {
            Err(AlgebraError::DimensionOutOfRange(n))
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Number of canonical blades, `2^n`.
    #[inline]
    pub fn blade_count(self) -> usize {
        1 << self.0
    }

    /// Mask of the top-grade blade `e_1 ∧ ... ∧ e_n`.
    #[inline]
    pub fn pseudoscalar_mask(self) -> u32 {
        (1u32 << self.0) - 1
    }

    pub fn check_grade(self, grade: usize) -> Result<()> {
        if grade <= self.get() {
            Ok(())
        } else {
            Err(AlgebraError::GradeOutOfRange {
                grade,
                dim: self.get(),
            })
        }
    }

    pub fn check_same(self, other: Dimension) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                left: self.get(),
                right: other.get(),
            })
        }
    }

    /// Blade masks grouped by grade, each group in increasing mask order.
    pub fn grades(self) -> &'static GradeTable {
        static TABLES: [OnceLock<GradeTable>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];
        TABLES[self.get()].get_or_init(|| GradeTable::build(self.get()))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A canonical basis blade, identified by the set of its factor indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(u32);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    pub fn new(mask: u32, dim: Dimension) -> Result<Self> {
        if (mask as usize) < dim.blade_count() {
            Ok(BladeIndex(mask))
        } else {
            Err(AlgebraError::GradeOverflow {
                grade: mask.count_ones() as usize,
                dim: dim.get(),
            })
        }
    }

    /// Blade from 1-based factor indices. Order and duplicates are ignored;
    /// use [`permutation_sign`] when the orientation of a tuple matters.
    pub fn from_indices(indices: &[usize], dim: Dimension) -> Result<Self> {
        let mut mask = 0u32;
        for &j in indices {
            if j == 0 || j > dim.get() {
                return Err(AlgebraError::IndexOutOfRange {
                    index: j,
                    dim: dim.get(),
                });
            }
            mask |= 1 << (j - 1);
        }
        Ok(BladeIndex(mask))
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Factor indices (1-based) in canonical increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    #[inline]
    pub fn is_subset_of(self, other: BladeIndex) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let idx: Vec<String> = self.indices().iter().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

/// Sign picked up when the canonical blades `a` and `b` are concatenated and
/// merge-sorted into canonical order; `None` when they share a factor.
#[inline]
pub fn wedge_sign(a: u32, b: u32) -> Option<f64> {
    if a & b != 0 {
        return None;
    }
    // Each factor of `b` must hop over every factor of `a` with a larger index.
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let low = rest.trailing_zeros();
        swaps += (a >> low).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps & 1 == 0 { 1.0 } else { -1.0 })
}

/// `(-1)^(p(p-1)/2)`, the reversion sign on grade `p`.
#[inline]
pub fn reversion_sign(grade: usize) -> f64 {
    if (grade / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(-1)^p`, the grade-involution sign on grade `p`.
#[inline]
pub fn involution_sign(grade: usize) -> f64 {
    if grade % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of the permutation sorting `tuple`, or 0 if an entry repeats.
pub fn permutation_sign(tuple: &[usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] == tuple[j] {
                return 0;
            }
            if tuple[i] > tuple[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Blade masks of each grade, plus each mask's rank within its grade.
#[derive(Debug)]
pub struct GradeTable {
    by_grade: Vec<Vec<u32>>,
    rank: Vec<u32>,
}

impl GradeTable {
    fn build(n: usize) -> Self {
        let mut by_grade = vec![Vec::new(); n + 1];
        let mut rank = vec![0u32; 1 << n];
        for mask in 0..(1u32 << n) {
            let g = mask.count_ones() as usize;
            rank[mask as usize] = by_grade[g].len() as u32;
            by_grade[g].push(mask);
        }
        GradeTable { by_grade, rank }
    }

    #[inline]
    pub fn masks(&self, grade: usize) -> &[u32] {
        &self.by_grade[grade]
    }

    #[inline]
    pub fn rank(&self, mask: u32) -> usize {
        self.rank[mask as usize] as usize
    }

    pub fn top_grade(&self) -> usize {
        self.by_grade.len() - 1
    }
}
