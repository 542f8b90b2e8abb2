//! Micro-benchmarks of the main kernels at one dimension.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use dualmetric::sampling::random_graded;
use dualmetric::{MetricSpace, Multiform, Multivector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const MIN_RUNS: usize = 20;
/// Each timed run repeats the kernel until at least this much time passes.
const MIN_RUN_TIME: Duration = Duration::from_micros(200);

#[derive(Debug, Clone, PartialEq)]
pub struct BenchEntry {
    pub kernel: &'static str,
    pub dim: usize,
    pub runs: usize,
    /// Upper bound on blade (or blade pair) visits per call.
    pub blades_touched: u64,
    pub min_ns: f64,
    pub median_ns: f64,
    pub max_ns: f64,
}

impl fmt::Display for BenchEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} runs={} blades_touched={} min_ns={:.1} median_ns={:.1} max_ns={:.1}",
            self.kernel,
            self.dim,
            self.runs,
            self.blades_touched,
            self.min_ns,
            self.median_ns,
            self.max_ns
        )
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Per-call nanoseconds for `runs` timed runs of `kernel`.
fn time<T>(runs: usize, mut kernel: impl FnMut() -> T) -> Vec<f64> {
    let mut reps = 1u32;
    loop {
        let start = Instant::now();
        for _ in 0..reps {
            black_box(kernel());
        }
        if start.elapsed() >= MIN_RUN_TIME || reps >= 1 << 20 {
            break;
        }
        reps *= 2;
    }
    (0..runs)
        .map(|_| {
            let start = Instant::now();
            for _ in 0..reps {
                black_box(kernel());
            }
            start.elapsed().as_nanos() as f64 / reps as f64
        })
        .collect()
}

fn entry(kernel: &'static str, dim: usize, blades_touched: u64, mut samples: Vec<f64>) -> BenchEntry {
    samples.sort_by(f64::total_cmp);
    BenchEntry {
        kernel,
        dim,
        runs: samples.len(),
        blades_touched,
        min_ns: samples[0],
        median_ns: samples[samples.len() / 2],
        max_ns: samples[samples.len() - 1],
    }
}

/// Times wedge, duality contraction, extension, scalar product and the
/// inversion formula on random inputs drawn from `seed`.
pub fn run_bench(space: &MetricSpace, seed: u64, runs: usize) -> Vec<BenchEntry> {
    let runs = runs.max(MIN_RUNS);
    let dim = space.dim();
    let n = dim.get() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Multivector = random_graded(dim, &mut rng);
    let y: Multivector = random_graded(dim, &mut rng);
    let phi: Multiform = random_graded(dim, &mut rng);
    let full = 1u64 << n;
    let subset_pairs = 3u64.pow(n as u32);
    let minors: u64 = (0..=n).map(|p| binomial(n, p).pow(2)).sum();

    vec![
        entry("wedge", dim.get(), full * full, time(runs, || x.wedge(&y))),
        entry(
            "contraction",
            dim.get(),
            subset_pairs,
            time(runs, || space.duality().left_contract_mv(&phi, &x)),
        ),
        entry("extend", dim.get(), minors, time(runs, || space.extensor().extend(&x))),
        entry(
            "scalar_product",
            dim.get(),
            minors + full,
            time(runs, || space.scalar_product_mv(&x, &y)),
        ),
        entry(
            "inversion_formula",
            dim.get(),
            2 * subset_pairs + 2 * minors,
            time(runs, || space.invert_extension_via_formula(&phi)),
        ),
    ]
}
