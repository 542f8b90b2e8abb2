//! Randomized identity suite. Every identity is a function that draws its
//! inputs from a seeded generator and records one or more `lhs == rhs`
//! comparisons; the runner repeats it `trials` times and keeps the worst
//! error.

mod duality_ids;
mod metric_ids;
mod product_ids;

use std::fmt;
use std::sync::Arc;

use dualmetric::sampling::{random_graded, random_homogeneous};
use dualmetric::{Dimension, Duality, Graded, Kind, MetricSpace, Multiform, Multivector};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Below this magnitude errors are judged absolutely instead of relatively.
pub const ABS_FLOOR: f64 = 1e-12;

/// Outcome of one identity over all trials.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub label: &'static str,
    pub trials: usize,
    pub max_abs: f64,
    pub max_rel: f64,
    pub passed: bool,
    /// First library error hit while evaluating, if any. Counts as a failure.
    pub error: Option<String>,
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {:.3e} {:.3e} {}",
            self.label,
            self.trials,
            self.max_abs,
            self.max_rel,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

type Check = fn(&mut Ctx<'_>) -> dualmetric::Result<()>;

/// A named identity check.
#[derive(Clone, Copy)]
pub struct Identity {
    pub label: &'static str,
    check: Check,
}

const fn id(label: &'static str, check: Check) -> Identity {
    Identity { label, check }
}

/// All identities, in report order. The index in this list is mixed into
/// the per-identity seed.
pub fn identities() -> Vec<Identity> {
    let mut all = duality_ids::IDENTITIES.to_vec();
    all.extend_from_slice(metric_ids::IDENTITIES);
    all.extend_from_slice(product_ids::IDENTITIES);
    all
}

/// State handed to an identity for one trial.
pub struct Ctx<'a> {
    pub dim: Dimension,
    pub n: usize,
    pub space: &'a MetricSpace,
    pub duality: &'a Duality,
    pub rng: &'a mut ChaCha8Rng,
    max_abs: f64,
    max_rel: f64,
}

impl Ctx<'_> {
    pub fn mv(&mut self) -> Multivector {
        random_graded(self.dim, self.rng)
    }

    pub fn mf(&mut self) -> Multiform {
        random_graded(self.dim, self.rng)
    }

    pub fn homogeneous<K: Kind>(&mut self, grade: usize) -> Graded<K> {
        random_homogeneous(self.dim, grade, self.rng)
    }

    pub fn vector(&mut self) -> Multivector {
        self.homogeneous(1)
    }

    pub fn form(&mut self) -> Multiform {
        self.homogeneous(1)
    }

    pub fn vectors(&mut self, count: usize) -> Vec<Multivector> {
        (0..count).map(|_| self.vector()).collect()
    }

    pub fn forms(&mut self, count: usize) -> Vec<Multiform> {
        (0..count).map(|_| self.form()).collect()
    }

    /// Uniform grade in `lo..=n`.
    pub fn grade_from(&mut self, lo: usize) -> usize {
        self.rng.random_range(lo.min(self.n)..=self.n)
    }

    /// `(p, q)` with `p <= q <= n`.
    pub fn grades_le(&mut self) -> (usize, usize) {
        let q = self.grade_from(0);
        (self.rng.random_range(0..=q), q)
    }

    /// `(p, q)` with `q < p <= n`.
    pub fn grades_gt(&mut self) -> (usize, usize) {
        let p = self.grade_from(1);
        (p, self.rng.random_range(0..p))
    }

    /// `(p, q)` with `p != q`.
    pub fn grades_ne(&mut self) -> (usize, usize) {
        let p = self.grade_from(0);
        let mut q = self.rng.random_range(0..self.n);
        if q >= p {
            q += 1;
        }
        (p, q)
    }

    /// Random subset of `{1..n}` as increasing indices.
    pub fn subset(&mut self) -> Vec<usize> {
        (1..=self.n).filter(|_| self.rng.random_bool(0.5)).collect()
    }

    fn record(&mut self, abs: f64, scale: f64) {
        let abs = if abs.is_nan() { f64::INFINITY } else { abs };
        let rel = if scale > ABS_FLOOR { abs / scale } else { abs };
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
    }

    pub fn eq<K: Kind>(&mut self, lhs: &Graded<K>, rhs: &Graded<K>) {
        let scale = lhs.max_abs().max(rhs.max_abs());
        self.record(lhs.max_abs_diff(rhs), scale);
    }

    pub fn eq_scalar(&mut self, lhs: f64, rhs: f64) {
        self.record((lhs - rhs).abs(), lhs.abs().max(rhs.abs()));
    }

    pub fn eq_zero<K: Kind>(&mut self, value: &Graded<K>) {
        self.record(value.max_abs(), 0.0);
    }

    pub fn eq_matrix(&mut self, lhs: &DMatrix<f64>, rhs: &DMatrix<f64>) {
        let scale = lhs.amax().max(rhs.amax());
        self.record((lhs - rhs).amax(), scale);
    }
}

/// `v_1 ∧ ... ∧ v_p`, the scalar 1 when empty.
pub fn wedge_all<K: Kind>(dim: Dimension, factors: &[Graded<K>]) -> dualmetric::Result<Graded<K>> {
    factors
        .iter()
        .try_fold(Graded::scalar(dim, 1.0), |acc, f| acc.wedge(f))
}

/// Suite parameters. Trial `t` uses `metrics[t % metrics.len()]`.
pub struct Suite {
    dim: Dimension,
    spaces: Vec<MetricSpace>,
    duality: Arc<Duality>,
    trials: usize,
    seed: u64,
    tolerance: f64,
}

impl Suite {
    pub fn new(
        metrics: &[DMatrix<f64>],
        trials: usize,
        seed: u64,
        tolerance: f64,
    ) -> dualmetric::Result<Self> {
        let first = metrics
            .first()
            .ok_or(dualmetric::AlgebraError::Inconsistent("suite needs at least one metric"))?;
        let dim = Dimension::new(first.nrows())?;
        Self::with_duality(metrics, Duality::shared(dim), trials, seed, tolerance)
    }

    /// Like [`Suite::new`] but with a caller-supplied duality table, so a
    /// deliberately corrupted table can be shown to fail.
    pub fn with_duality(
        metrics: &[DMatrix<f64>],
        duality: Arc<Duality>,
        trials: usize,
        seed: u64,
        tolerance: f64,
    ) -> dualmetric::Result<Self> {
        let dim = duality.dim();
        let spaces = metrics
            .iter()
            .map(|g| {
                let extensor = dualmetric::MetricExtensor::from_matrix(g.clone())?;
                MetricSpace::new(extensor, duality.clone())
            })
            .collect::<dualmetric::Result<Vec<_>>>()?;
        if spaces.is_empty() {
            return Err(dualmetric::AlgebraError::Inconsistent("suite needs at least one metric"));
        }
        Ok(Suite {
            dim,
            spaces,
            duality,
            trials: trials.max(1),
            seed,
            tolerance,
        })
    }

    pub fn run(&self) -> Vec<IdentityReport> {
        identities()
            .into_par_iter()
            .enumerate()
            .map(|(index, identity)| self.run_identity(index, identity))
            .collect()
    }

    /// Run only the identity with this label.
    pub fn run_label(&self, label: &str) -> Option<IdentityReport> {
        identities()
            .into_iter()
            .enumerate()
            .find(|(_, i)| i.label == label)
            .map(|(index, identity)| self.run_identity(index, identity))
    }

    fn run_identity(&self, index: usize, identity: Identity) -> IdentityReport {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ index as u64);
        let mut max_abs = 0.0f64;
        let mut max_rel = 0.0f64;
        let mut error = None;
        for t in 0..self.trials {
            let mut ctx = Ctx {
                dim: self.dim,
                n: self.dim.get(),
                space: &self.spaces[t % self.spaces.len()],
                duality: &self.duality,
                rng: &mut rng,
                max_abs: 0.0,
                max_rel: 0.0,
            };
            if let Err(e) = (identity.check)(&mut ctx) {
                error.get_or_insert_with(|| e.to_string());
                max_abs = f64::INFINITY;
                max_rel = f64::INFINITY;
            }
            max_abs = max_abs.max(ctx.max_abs);
            max_rel = max_rel.max(ctx.max_rel);
        }
        IdentityReport {
            label: identity.label,
            trials: self.trials,
            max_abs,
            max_rel,
            passed: error.is_none() && max_rel <= self.tolerance,
            error,
        }
    }
}
