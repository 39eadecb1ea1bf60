//! RSK row insertion as a sampler for weak Schur sampling and Plancherel measure.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`; parallel runs
//! split the work into fixed chunks, chunk c using stream c of the master seed,
//! so results do not depend on the thread count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::partitions::Partition;
use crate::scalar::ratio_to_f64;
use crate::schur_stats::{Spectrum, WssDistribution};

/// Samples per parallel chunk.
pub const CHUNK: usize = 4096;

/// The insertion tableau of RSK; the recording tableau is not kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsertionState {
    rows: Vec<Vec<usize>>,
}

impl InsertionState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Row insertion with bumping.
    pub fn insert(&mut self, symbol: usize) {
        let mut x = symbol;
        for row in self.rows.iter_mut() {
            let pos = row.partition_point(|&y| y <= x);
            if pos == row.len() {
                row.push(x);
                return;
            }
            std::mem::swap(&mut row[pos], &mut x);
        }
        self.rows.push(vec![x]);
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Shape padded to `d` rows.
    pub fn shape(&self, d: usize) -> Partition {
        Partition::from_parts(&self.rows.iter().map(|r| r.len()).collect::<Vec<_>>(), d)
            .expect("insertion tableau has at most d rows")
    }
}

/// Shape of RSK applied to `word`.
pub fn rsk_shape(word: &[usize], d: usize) -> Partition {
    let mut st = InsertionState::new();
    for &x in word {
        st.insert(x);
    }
    st.shape(d)
}

/// Draws letters from α by comparing a 64-bit uniform against ⌊cum·2⁶⁴⌋.
#[derive(Clone, Debug)]
pub struct Categorical {
    thresholds: Vec<u128>,
}

impl Categorical {
    pub fn new(alpha: &Spectrum<BigRational>) -> Self {
        let two64 = BigInt::from(1u128 << 64);
        let mut cum = BigRational::zero();
        let mut thresholds = Vec::with_capacity(alpha.d());
        for a in alpha.values() {
            cum += a;
            let t = (&cum * BigRational::from_integer(two64.clone())).floor().to_integer();
            thresholds.push(t.to_u128().expect("threshold ≤ 2^64"));
        }
        Categorical { thresholds }
    }

    /// A letter in 1..=d.
    pub fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        let x = rng.next_u64() as u128;
        self.thresholds.iter().position(|&t| x < t).map_or(self.thresholds.len(), |i| i + 1)
    }
}

/// RSK shape of n iid draws from α.
pub fn sample_shape<R: RngCore + ?Sized>(n: usize, sampler: &Categorical, d: usize, rng: &mut R) -> Partition {
    let mut st = InsertionState::new();
    for _ in 0..n {
        st.insert(sampler.draw(rng));
    }
    st.shape(d)
}

/// RSK shape of a uniformly random permutation of [n].
pub fn sample_plancherel<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    rsk_shape(&perm, n.max(1))
}

fn chunked<F>(count: usize, seed: u64, f: F) -> Vec<Partition>
where
    F: Fn(&mut ChaCha8Rng) -> Partition + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(count - c * CHUNK);
            (0..len).map(|_| f(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

/// `count` WSS samples, reproducible for a fixed seed regardless of thread count.
pub fn sample_shapes(n: usize, alpha: &Spectrum<BigRational>, count: usize, seed: u64) -> Vec<Partition> {
    let sampler = Categorical::new(alpha);
    let d = alpha.d();
    chunked(count, seed, |rng| sample_shape(n, &sampler, d, rng))
}

/// `count` Plancherel samples.
pub fn sample_plancherel_many(n: usize, count: usize, seed: u64) -> Vec<Partition> {
    chunked(count, seed, |rng| sample_plancherel(n, rng))
}

pub fn histogram(samples: &[Partition]) -> BTreeMap<Partition, u64> {
    let mut h = BTreeMap::new();
    for s in samples {
        *h.entry(s.clone()).or_insert(0) += 1;
    }
    h
}

/// ½ Σ_λ |empirical(λ) − Pr[λ]|.
pub fn tv_distance(hist: &BTreeMap<Partition, u64>, dist: &WssDistribution<BigRational>) -> f64 {
    let total: u64 = hist.values().sum();
    let mut tv = 0.0;
    for (lam, p) in dist.entries() {
        let emp = hist.get(lam).copied().unwrap_or(0) as f64 / total as f64;
        tv += (emp - ratio_to_f64(p)).abs();
    }
    // Mass outside the distribution's support.
    for (lam, &c) in hist {
        if !dist.entries().iter().any(|(l, _)| l == lam) {
            tv += c as f64 / total as f64;
        }
    }
    tv / 2.0
}
