//! Metric-free duality structure: the pairing of multiforms with multivectors
//! and the left/right duality contractions.
//!
//! The four contraction variants collapse to two generic operations:
//! `left_contract::<K>` contracts a `K`-element by an element of the dual
//! space from the left (`⟨φ, x|` for multivectors, `⟨x, φ|` for multiforms),
//! and `right_contract::<K>` does the same from the right.
//!
//! On canonical blades with `A ⊆ B`:
//!
//! ```text
//! ⟨ε^A, e_B| = c(A,B)  e_{B∖A},   c(A,B)  = ⟨rev(ε^A) ∧ ε^{B∖A}, e_B⟩
//! |e_B, ε^A⟩ = c'(A,B) e_{B∖A},   c'(A,B) = ⟨ε^{B∖A} ∧ rev(ε^A), e_B⟩
//! ```
//!
//! and both vanish when `A ⊄ B`. The signs `c`, `c'` are obtained by
//! evaluating that defining pairing on blades, once per dimension, and then
//! looked up.

use std::sync::{Arc, OnceLock};

use crate::blade::{reversion_sign, wedge_sign, BladeIndex, Dimension, MAX_DIM};
use crate::error::Result;
use crate::graded::{Contravariant, Covariant, Graded, Kind, Multiform, Multivector};

/// Per-dimension duality operations with precomputed contraction signs.
///
/// A pair `A ⊆ B` is addressed by the base-3 number whose digit at position
/// `i` is 2 for `i ∈ A`, 1 for `i ∈ B∖A` and 0 otherwise.
#[derive(Debug, Clone)]
pub struct Duality {
    dim: Dimension,
    ternary: Vec<u32>,
    left: Vec<i8>,
    right: Vec<i8>,
}

impl Duality {
    pub fn new(dim: Dimension) -> Self {
        let count = dim.blade_count();
        let ternary: Vec<u32> = (0..count as u32)
            .map(|m| {
                (0..dim.get())
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| 3u32.pow(i as u32))
                    .sum()
            })
            .collect();
        let size = 3usize.pow(dim.get() as u32);
        let mut left = vec![0i8; size];
        let mut right = vec![0i8; size];
        for b in 0..count as u32 {
            let mut a = b;
            loop {
                let rest = b & !a;
                let rev = reversion_sign(a.count_ones() as usize);
                // ⟨rev(ε^A) ∧ ε^{B∖A}, e_B⟩ and ⟨ε^{B∖A} ∧ rev(ε^A), e_B⟩: the
                // wedge lands on ±ε^B and ⟨ε^B, e_B⟩ = 1.
                let l = rev * wedge_sign(a, rest).expect("A and B∖A are disjoint");
                let r = rev * wedge_sign(rest, a).expect("A and B∖A are disjoint");
                let idx = (ternary[b as usize] + ternary[a as usize]) as usize;
                left[idx] = l as i8;
                right[idx] = r as i8;
                if a == 0 {
                    break;
                }
                a = (a - 1) & b;
            }
        }
        Duality {
            dim,
            ternary,
            left,
            right,
        }
    }

    /// Process-wide instance for `dim`, built on first use.
    pub fn shared(dim: Dimension) -> Arc<Duality> {
        static CACHE: [OnceLock<Arc<Duality>>; MAX_DIM + 1] =
            [const { OnceLock::new() }; MAX_DIM + 1];
        CACHE[dim.get()]
            .get_or_init(|| Arc::new(Duality::new(dim)))
            .clone()
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    fn slot(&self, a: u32, b: u32) -> Option<usize> {
        if a & !b != 0 {
            None
        } else {
            Some((self.ternary[b as usize] + self.ternary[a as usize]) as usize)
        }
    }

    /// `c(A,B)`, or 0 when `A ⊄ B`.
    pub fn left_sign(&self, a: BladeIndex, b: BladeIndex) -> f64 {
        self.slot(a.mask(), b.mask())
            .map_or(0.0, |i| self.left[i] as f64)
    }

    /// `c'(A,B)`, or 0 when `A ⊄ B`.
    pub fn right_sign(&self, a: BladeIndex, b: BladeIndex) -> f64 {
        self.slot(a.mask(), b.mask())
            .map_or(0.0, |i| self.right[i] as f64)
    }

    /// Test hook: flips one right-contraction sign so that sign-sensitive
    /// identities can be shown to fail.
    #[doc(hidden)]
    pub fn corrupt_right_sign(&mut self, a: BladeIndex, b: BladeIndex) {
        if let Some(i) = self.slot(a.mask(), b.mask()) {
            self.right[i] = -self.right[i];
        }
    }

    /// `⟨φ, x⟩ = Σ_J φ_J x_J`.
    pub fn pairing(&self, phi: &Multiform, x: &Multivector) -> Result<f64> {
        pair(phi, x)
    }

    /// Homogeneous pairing `⟨φ^p, x_p⟩` of the grade-`p` parts.
    pub fn pairing_grade(&self, phi: &Multiform, x: &Multivector, grade: usize) -> Result<f64> {
        phi.dim().check_same(x.dim())?;
        phi.dim().check_grade(grade)?;
        Ok(phi
            .dim()
            .grades()
            .masks(grade)
            .iter()
            .map(|&m| phi.coeffs()[m as usize] * x.coeffs()[m as usize])
            .sum())
    }

    fn check<K: Kind>(&self, a: &Graded<K::Dual>, b: &Graded<K>) -> Result<()> {
        self.dim.check_same(a.dim())?;
        self.dim.check_same(b.dim())
    }

    fn accumulate(
        &self,
        table: &[i8],
        a: &[f64],
        p: usize,
        b: &[f64],
        q: usize,
        out: &mut [f64],
    ) {
        if p > q {
            return;
        }
        let grades = self.dim.grades();
        for &am in grades.masks(p) {
            let x = a[am as usize];
            if x == 0.0 {
                continue;
            }
            let ta = self.ternary[am as usize];
            for &bm in grades.masks(q) {
                if am & !bm != 0 {
                    continue;
                }
                let y = b[bm as usize];
                if y == 0.0 {
                    continue;
                }
                let sign = table[(self.ternary[bm as usize] + ta) as usize] as f64;
                out[(bm & !am) as usize] += sign * x * y;
            }
        }
    }

    /// Homogeneous left contraction of the grade-`q` part of `b` by the
    /// grade-`p` part of `a`: `(q-p)`-homogeneous, zero when `p > q`.
    pub fn left_contract_homogeneous<K: Kind>(
        &self,
        a: &Graded<K::Dual>,
        p: usize,
        b: &Graded<K>,
        q: usize,
    ) -> Result<Graded<K>> {
        self.check::<K>(a, b)?;
        self.dim.check_grade(p)?;
        self.dim.check_grade(q)?;
        let mut out = vec![0.0; self.dim.blade_count()];
        self.accumulate(&self.left, a.coeffs(), p, b.coeffs(), q, &mut out);
        Ok(Graded::from_vec_unchecked(self.dim, out))
    }

    /// Homogeneous right contraction `|b_q, a^p⟩`.
    pub fn right_contract_homogeneous<K: Kind>(
        &self,
        b: &Graded<K>,
        q: usize,
        a: &Graded<K::Dual>,
        p: usize,
    ) -> Result<Graded<K>> {
        self.check::<K>(a, b)?;
        self.dim.check_grade(p)?;
        self.dim.check_grade(q)?;
        let mut out = vec![0.0; self.dim.blade_count()];
        self.accumulate(&self.right, a.coeffs(), p, b.coeffs(), q, &mut out);
        Ok(Graded::from_vec_unchecked(self.dim, out))
    }

    /// Mixed-grade left contraction by the grade sum
    /// `[⟨a, b|]_k = Σ_j ⟨a^j, b_{j+k}|`.
    pub fn left_contract<K: Kind>(&self, a: &Graded<K::Dual>, b: &Graded<K>) -> Result<Graded<K>> {
        self.check::<K>(a, b)?;
        let n = self.dim.get();
        let mut out = vec![0.0; self.dim.blade_count()];
        for k in 0..=n {
            for j in 0..=(n - k) {
                self.accumulate(&self.left, a.coeffs(), j, b.coeffs(), j + k, &mut out);
            }
        }
        Ok(Graded::from_vec_unchecked(self.dim, out))
    }

    /// Mixed-grade right contraction `[|b, a⟩]_k = Σ_j |b_{j+k}, a^j⟩`.
    pub fn right_contract<K: Kind>(&self, b: &Graded<K>, a: &Graded<K::Dual>) -> Result<Graded<K>> {
        self.check::<K>(a, b)?;
        let n = self.dim.get();
        let mut out = vec![0.0; self.dim.blade_count()];
        for k in 0..=n {
            for j in 0..=(n - k) {
                self.accumulate(&self.right, a.coeffs(), j, b.coeffs(), j + k, &mut out);
            }
        }
        Ok(Graded::from_vec_unchecked(self.dim, out))
    }

    /// `⟨φ, x|`: left contraction of a multivector by a multiform.
    pub fn left_contract_mv(&self, phi: &Multiform, x: &Multivector) -> Result<Multivector> {
        self.left_contract::<Contravariant>(phi, x)
    }

    /// `|x, φ⟩`: right contraction of a multivector by a multiform.
    pub fn right_contract_mv(&self, x: &Multivector, phi: &Multiform) -> Result<Multivector> {
        self.right_contract::<Contravariant>(x, phi)
    }

    /// `⟨x, φ|`: left contraction of a multiform by a multivector.
    pub fn left_contract_mf(&self, x: &Multivector, phi: &Multiform) -> Result<Multiform> {
        self.left_contract::<Covariant>(x, phi)
    }

    /// `|φ, x⟩`: right contraction of a multiform by a multivector.
    pub fn right_contract_mf(&self, phi: &Multiform, x: &Multivector) -> Result<Multiform> {
        self.right_contract::<Covariant>(phi, x)
    }

    /// A dual canonical blade pairing nonzero with `x`, if `x != 0`.
    pub fn nondegeneracy_witness<K: Kind>(&self, x: &Graded<K>) -> Option<BladeIndex> {
        (0..self.dim.blade_count() as u32)
            .map(|m| BladeIndex::new(m, self.dim).unwrap())
            .find(|&b| pair(&Graded::<K::Dual>::basis(self.dim, b), x).unwrap() != 0.0)
    }
}

/// `⟨a, b⟩` for an element and one of the dual space, in either order.
pub fn pair<K: Kind>(a: &Graded<K::Dual>, b: &Graded<K>) -> Result<f64> {
    a.dim().check_same(b.dim())?;
    Ok(a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x * y).sum())
}
