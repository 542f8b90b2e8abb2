//! Brute-force reference implementations over full antisymmetric tensor
//! components, for checking the blade code at small `n`.
//!
//! A `p`-vector is stored as all `n^p` components `x(ε^{j1}, ..., ε^{jp})`
//! (a `p`-form as `φ(e_{j1}, ..., e_{jp})`). Nothing here looks at blade
//! masks or sign tables: every sum runs over full index tuples.
//!
//! Wedge normalization: `(a ∧ b) = (p+q)!/(p! q!) Alt(a ⊗ b)`, i.e.
//!
//! ```text
//! (a ∧ b)(i_1..i_{p+q}) = 1/(p! q!) Σ_σ sgn(σ) a(i_σ(1)..i_σ(p)) b(i_σ(p+1)..i_σ(p+q))
//! ```
//!
//! This is the "determinant" convention: `(v_1 ∧ ... ∧ v_p)(ω^1, ..., ω^p) =
//! det(ω^i(v_j))`. Together with the `1/p!` in the tensor pairing it makes
//! `⟨ω_1 ∧ ... ∧ ω_p, v_1 ∧ ... ∧ v_p⟩ = det(⟨ω_i, v_j⟩)`.

use std::marker::PhantomData;

use rand::Rng;

use crate::blade::{reversion_sign, Dimension};
use crate::duality::Duality;
use crate::error::{AlgebraError, Result};
use crate::graded::{Contravariant, Covariant, Graded, Kind, Multiform, Multivector};
use crate::sampling::{random_graded, random_homogeneous};

/// Largest dimension the oracle accepts.
pub const ORACLE_MAX_DIM: usize = 4;

/// A fully antisymmetric tensor of grade `p` over an `n`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<K: Kind> {
    dim: Dimension,
    grade: usize,
    components: Vec<f64>,
    _kind: PhantomData<K>,
}

/// Skew-symmetric contravariant tensor (`p`-vector).
pub type TensorPVector = Tensor<Contravariant>;
/// Skew-symmetric covariant tensor (`p`-form).
pub type TensorPForm = Tensor<Covariant>;

fn check_dim(dim: Dimension) -> Result<()> {
    if dim.get() > ORACLE_MAX_DIM {
        Err(AlgebraError::OracleTooLarge {
            dim: dim.get(),
            max: ORACLE_MAX_DIM,
        })
    } else {
        Ok(())
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Every index tuple in `{0..n}^len`, in row-major order.
fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(len as u32);
    (0..total).map(move |mut flat| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = flat % n;
            flat /= n;
        }
        t
    })
}

/// All permutations of `0..m` with their signs.
fn permutations(m: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, f64)>) {
        let m = used.len();
        if prefix.len() == m {
            let mut inversions = 0;
            for i in 0..m {
                for j in (i + 1)..m {
                    if prefix[i] > prefix[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inversions % 2 == 0 { 1.0 } else { -1.0 }));
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

impl<K: Kind> Tensor<K> {
    fn zeros(dim: Dimension, grade: usize) -> Self {
        Tensor {
            dim,
            grade,
            components: vec![0.0; dim.get().pow(grade as u32)],
            _kind: PhantomData,
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    fn flat(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &i| acc * self.dim.get() + i)
    }

    /// Component at a 0-based index tuple.
    pub fn get(&self, tuple: &[usize]) -> f64 {
        self.components[self.flat(tuple)]
    }

    /// Grade-0 tensor.
    pub fn scalar(dim: Dimension, value: f64) -> Result<Self> {
        check_dim(dim)?;
        let mut t = Self::zeros(dim, 0);
        t.components[0] = value;
        Ok(t)
    }

    /// The basis vector `e_j` (or basis form `ε^j`) as a grade-1 tensor,
    /// `j` 1-based: component `i` is `δ_ij`.
    pub fn basis(dim: Dimension, j: usize) -> Result<Self> {
        check_dim(dim)?;
        if j == 0 || j > dim.get() {
            return Err(AlgebraError::IndexOutOfRange {
                index: j,
                dim: dim.get(),
            });
        }
        let mut t = Self::zeros(dim, 1);
        t.components[j - 1] = 1.0;
        Ok(t)
    }

    /// Grade-`p` part of a blade-coordinate element as full components: the
    /// component at a tuple is the blade coefficient at its sorted index set
    /// times the sign of the sorting permutation (zero on repeats).
    pub fn from_blades(x: &Graded<K>, grade: usize) -> Result<Self> {
        let dim = x.dim();
        check_dim(dim)?;
        dim.check_grade(grade)?;
        let mut t = Self::zeros(dim, grade);
        for tuple in tuples(dim.get(), grade) {
            let one_based: Vec<usize> = tuple.iter().map(|i| i + 1).collect();
            let sign = crate::blade::permutation_sign(&one_based);
            if sign == 0 {
                continue;
            }
            let mask: u32 = tuple.iter().map(|i| 1u32 << i).sum();
            let idx = t.flat(&tuple);
            t.components[idx] = sign as f64 * x.coeffs()[mask as usize];
        }
        Ok(t)
    }

    /// Blade coefficients: the coefficient of `e_J` is the component at the
    /// increasing tuple `J`.
    pub fn to_blades(&self) -> Graded<K> {
        let mut out = Graded::<K>::zero(self.dim);
        for &mask in self.dim.grades().masks(self.grade) {
            let tuple: Vec<usize> = (0..self.dim.get()).filter(|i| mask & (1 << i) != 0).collect();
            let c = self.get(&tuple);
            out = out + Graded::<K>::basis(self.dim, crate::blade::BladeIndex::new(mask, self.dim).unwrap()) * c;
        }
        out
    }

    /// Largest `|t(.. i .. j ..) + t(.. j .. i ..)|` over all tuples and
    /// transpositions.
    pub fn max_antisymmetry_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for tuple in tuples(self.dim.get(), self.grade) {
            for a in 0..self.grade {
                for b in (a + 1)..self.grade {
                    let mut swapped = tuple.clone();
                    swapped.swap(a, b);
                    worst = worst.max((self.get(&tuple) + self.get(&swapped)).abs());
                }
            }
        }
        worst
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.components.iter_mut().for_each(|c| *c *= factor);
        out
    }

    fn add_scaled(&mut self, other: &Self, factor: f64) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a += factor * b;
        }
    }

    /// `φ̃`: reversion is `(-1)^(p(p-1)/2)` on a grade-`p` tensor.
    pub fn reversion(&self) -> Self {
        self.scale(reversion_sign(self.grade))
    }
}

/// `⟨φ^p, x_p⟩`: `φ^0 x_0`, `φ^1(x_1)`, or
/// `1/p! Σ φ(e_{j1}..e_{jp}) x(ε^{j1}..ε^{jp})` over all index tuples.
pub fn tensor_pairing<K: Kind>(phi: &Tensor<K::Dual>, x: &Tensor<K>) -> Result<f64> {
    phi.dim.check_same(x.dim)?;
    if phi.grade != x.grade {
        return Err(AlgebraError::NotHomogeneous {
            expected: phi.grade,
            found: x.grade,
        });
    }
    let sum: f64 = phi
        .components
        .iter()
        .zip(&x.components)
        .map(|(a, b)| a * b)
        .sum();
    Ok(match phi.grade {
        0 | 1 => sum,
        p => sum / factorial(p),
    })
}

/// Exterior product by explicit antisymmetrization over `S_{p+q}`.
pub fn tensor_wedge<K: Kind>(a: &Tensor<K>, b: &Tensor<K>) -> Result<Tensor<K>> {
    a.dim.check_same(b.dim)?;
    let (p, q) = (a.grade, b.grade);
    let m = p + q;
    if m > a.dim.get() {
        return Err(AlgebraError::GradeOverflow {
            grade: m,
            dim: a.dim.get(),
        });
    }
    let norm = 1.0 / (factorial(p) * factorial(q));
    let perms = permutations(m);
    let mut out = Tensor::<K>::zeros(a.dim, m);
    let mut left = vec![0; p];
    let mut right = vec![0; q];
    for tuple in tuples(a.dim.get(), m) {
        let mut acc = 0.0;
        for (perm, sign) in &perms {
            for (slot, &src) in left.iter_mut().zip(&perm[..p]) {
                *slot = tuple[src];
            }
            for (slot, &src) in right.iter_mut().zip(&perm[p..]) {
                *slot = tuple[src];
            }
            acc += sign * a.get(&left) * b.get(&right);
        }
        let idx = out.flat(&tuple);
        out.components[idx] = norm * acc;
    }
    Ok(out)
}

/// Wedge of basis elements `b_{j1} ∧ ... ∧ b_{jm}` (0-based indices) built
/// from grade-1 tensors by repeated [`tensor_wedge`].
fn basis_wedge<K: Kind>(dim: Dimension, start: Tensor<K>, indices: &[usize]) -> Result<Tensor<K>> {
    let mut acc = start;
    for &j in indices {
        acc = tensor_wedge(&acc, &Tensor::<K>::basis(dim, j + 1)?)?;
    }
    Ok(acc)
}

/// Tuples with a repeated index are skipped by the contractions: their basis
/// wedge has integer components that cancel exactly, so the skipped terms
/// add exact zeros.
fn all_distinct(js: &[usize]) -> bool {
    js.iter().enumerate().all(|(i, j)| !js[..i].contains(j))
}

/// Left contraction of `x_q` by `φ^p` (`p <= q`):
///
/// ```text
/// ⟨φ^p, x_q| = 1/(q-p)! Σ_{j} ⟨φ̃ ∧ ε^{j1} ∧ ... ∧ ε^{j(q-p)}, x_q⟩ e_{j1} ∧ ... ∧ e_{j(q-p)}
/// ```
///
/// and `⟨φ̃^p, x_p⟩` when `p = q`. Generic over which side is the
/// multivector, so the same code covers `⟨x_p, φ^q|`.
pub fn tensor_left_contraction<K: Kind>(phi: &Tensor<K::Dual>, x: &Tensor<K>) -> Result<Tensor<K>> {
    phi.dim.check_same(x.dim)?;
    let dim = x.dim;
    let (p, q) = (phi.grade, x.grade);
    if p > q {
        return Err(AlgebraError::GradeOverflow { grade: p, dim: q });
    }
    let rev = phi.reversion();
    if p == q {
        return Tensor::scalar(dim, tensor_pairing(&rev, x)?);
    }
    let m = q - p;
    let mut out = Tensor::<K>::zeros(dim, m);
    for js in tuples(dim.get(), m).filter(|js| all_distinct(js)) {
        let form = basis_wedge(dim, rev.clone(), &js)?;
        let coeff = tensor_pairing(&form, x)?;
        if coeff == 0.0 {
            continue;
        }
        let blade = basis_wedge(dim, Tensor::<K>::scalar(dim, 1.0)?, &js)?;
        out.add_scaled(&blade, coeff);
    }
    Ok(out.scale(1.0 / factorial(m)))
}

/// Right contraction of `x_q` by `φ^p` (`p <= q`):
///
/// ```text
/// |x_q, φ^p⟩ = 1/(q-p)! Σ_{j} ⟨x_q, ε^{j1} ∧ ... ∧ ε^{j(q-p)} ∧ φ̃⟩ e_{j1} ∧ ... ∧ e_{j(q-p)}
/// ```
pub fn tensor_right_contraction<K: Kind>(x: &Tensor<K>, phi: &Tensor<K::Dual>) -> Result<Tensor<K>> {
    phi.dim.check_same(x.dim)?;
    let dim = x.dim;
    let (p, q) = (phi.grade, x.grade);
    if p > q {
        return Err(AlgebraError::GradeOverflow { grade: p, dim: q });
    }
    let rev = phi.reversion();
    if p == q {
        return Tensor::scalar(dim, tensor_pairing(&rev, x)?);
    }
    let m = q - p;
    let mut out = Tensor::<K>::zeros(dim, m);
    for js in tuples(dim.get(), m).filter(|js| all_distinct(js)) {
        let head = basis_wedge(dim, Tensor::<K::Dual>::scalar(dim, 1.0)?, &js)?;
        let form = tensor_wedge(&head, &rev)?;
        let coeff = tensor_pairing(&form, x)?;
        if coeff == 0.0 {
            continue;
        }
        let blade = basis_wedge(dim, Tensor::<K>::scalar(dim, 1.0)?, &js)?;
        out.add_scaled(&blade, coeff);
    }
    Ok(out.scale(1.0 / factorial(m)))
}

/// Largest absolute difference between the blade code and the oracle over one
/// random draw: pairing, reversion, wedge and the four contractions on every
/// grade pair, then wedge and contraction on full inhomogeneous operands.
/// Contractions with `p > q` must vanish in the blade code.
pub fn max_discrepancy<R: Rng + ?Sized>(duality: &Duality, rng: &mut R) -> Result<f64> {
    let dim = duality.dim();
    check_dim(dim)?;
    let n = dim.get();
    let mut worst = 0.0f64;
    let mut note = |d: f64| worst = worst.max(d);

    let xs: Vec<Multivector> = (0..=n).map(|p| random_homogeneous(dim, p, rng)).collect();
    let phis: Vec<Multiform> = (0..=n).map(|p| random_homogeneous(dim, p, rng)).collect();
    let txs = (0..=n)
        .map(|p| Tensor::from_blades(&xs[p], p))
        .collect::<Result<Vec<_>>>()?;
    let tphis = (0..=n)
        .map(|p| Tensor::from_blades(&phis[p], p))
        .collect::<Result<Vec<_>>>()?;

    for p in 0..=n {
        note((duality.pairing(&phis[p], &xs[p])? - tensor_pairing(&tphis[p], &txs[p])?).abs());
        note(xs[p].reversion().max_abs_diff(&txs[p].reversion().to_blades()));
        note(phis[p].reversion().max_abs_diff(&tphis[p].reversion().to_blades()));
        for q in 0..=n {
            if p + q <= n {
                let w = tensor_wedge(&txs[p], &txs[q])?;
                note(w.max_antisymmetry_violation());
                note(xs[p].wedge(&xs[q])?.max_abs_diff(&w.to_blades()));
                let w = tensor_wedge(&tphis[p], &tphis[q])?;
                note(phis[p].wedge(&phis[q])?.max_abs_diff(&w.to_blades()));
            }
            let blade = [
                duality.left_contract_mv(&phis[p], &xs[q])?.max_abs(),
                duality.right_contract_mv(&xs[q], &phis[p])?.max_abs(),
                duality.left_contract_mf(&xs[p], &phis[q])?.max_abs(),
                duality.right_contract_mf(&phis[q], &xs[p])?.max_abs(),
            ];
            if p > q {
                blade.iter().for_each(|&b| note(b));
                continue;
            }
            let l = tensor_left_contraction(&tphis[p], &txs[q])?.to_blades();
            note(duality.left_contract_mv(&phis[p], &xs[q])?.max_abs_diff(&l));
            let r = tensor_right_contraction(&txs[q], &tphis[p])?.to_blades();
            note(duality.right_contract_mv(&xs[q], &phis[p])?.max_abs_diff(&r));
            let l = tensor_left_contraction(&txs[p], &tphis[q])?.to_blades();
            note(duality.left_contract_mf(&xs[p], &phis[q])?.max_abs_diff(&l));
            let r = tensor_right_contraction(&tphis[q], &txs[p])?.to_blades();
            note(duality.right_contract_mf(&phis[q], &xs[p])?.max_abs_diff(&r));
        }
    }

    // Bilinear extension to mixed grades.
    let x: Multivector = random_graded(dim, rng);
    let y: Multivector = random_graded(dim, rng);
    let phi: Multiform = random_graded(dim, rng);
    let mut wedge = Multivector::zero(dim);
    let mut contraction = Multivector::zero(dim);
    for p in 0..=n {
        let tx = Tensor::from_blades(&x, p)?;
        let tphi = Tensor::<Covariant>::from_blades(&phi, p)?;
        for q in 0..=n {
            let ty = Tensor::from_blades(&y, q)?;
            if p + q <= n {
                wedge = wedge + tensor_wedge(&tx, &ty)?.to_blades();
            }
            if p <= q {
                contraction = contraction + tensor_left_contraction(&tphi, &ty)?.to_blades();
            }
        }
    }
    note(x.wedge(&y)?.max_abs_diff(&wedge));
    note(duality.left_contract_mv(&phi, &y)?.max_abs_diff(&contraction));
    Ok(worst)
}
