//! Parameter sweeps shared by the verifiers: job lists, per-job RNG streams, ordered parallel merge.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::partitions::{enumerate_partitions, Partition};
use crate::report::Report;

/// Deterministic per-job generator: stream `job` of the master seed.
pub fn job_rng(seed: u64, job: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(job);
    rng
}

/// All λ ⊢ n′ with min_n ≤ n′ ≤ n and at most d′ rows, for each 1 ≤ d′ ≤ d (λ carries ambient length d′).
pub fn shapes_upto(n: usize, d: usize, min_n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for dd in 1..=d {
        for nn in min_n..=n {
            out.extend(enumerate_partitions(nn, dd));
        }
    }
    out
}

/// Runs `f` on every shape in parallel and merges the reports in job order.
pub fn run_jobs<F>(suite: &str, n: usize, d: usize, jobs: Vec<Partition>, f: F) -> Report
where
    F: Fn(usize, &Partition) -> Report + Sync,
{
    let start = std::time::Instant::now();
    let parts: Vec<Report> = jobs.par_iter().enumerate().map(|(idx, l)| f(idx, l)).collect();
    let mut r = Report::new(suite).param("n", n).param("d", d).merge_all(parts);
    r.wall_time = start.elapsed();
    r
}
