//! Exact verifiers for the first- and second-moment identities of the debiased Keyl estimator.
//!
//! Identities stated in |·|² are checked in exact rationals. Sums of distinct
//! radicals (off-diagonal 2×2 block entries) use rational approximations
//! accurate to 10^-64 per term.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clebsch_gordan::{cg_coefficient, dim_ratio, dim_ratio2, one_step, two_step};
use crate::partitions::{donate, staircase, staircase_r, LegalSpectrum, Partition};
use crate::report::Report;
use crate::scalar::{q, ratio_to_f64};
use crate::schur_stats::{dim_gl_q, Spectrum, WssDistribution};
use crate::sqrt_rational::{sqrt_approx, SqrtRational};
pub use crate::sweep::{job_rng, shapes_upto};
use crate::sweep::run_jobs;
use crate::tableaux::enumerate_ssyt;
use crate::yor::{delta_ji, order_valid, swap_block, SwapKind};

/// Tolerance for 2×2 Main Lemma blocks.
pub const BLOCK_TOLERANCE: f64 = 1e-9;

fn vq(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| q(x)).collect()
}

fn c_i(lambda: &Partition, i: usize) -> BigRational {
    q(lambda.last_content(i))
}

/// C^{λ+e_i}_j, or C^λ_j when λ+e_i is not a partition (the coefficient it multiplies is then 0).
fn c_j_after(lambda: &Partition, i: usize, j: usize) -> BigRational {
    q(lambda.part(j) as i64 + i64::from(i == j) - j as i64)
}

fn idx(lambda: &Partition, extra: &str) -> String {
    format!("{} {extra}", lambda.canonical())
}

// ---------------------------------------------------------------- first moment

/// Σ_k f_k |c^λ_{k→i}|².
pub fn first_moment_sum(lambda: &Partition, f: &[BigRational], i: usize) -> BigRational {
    (1..=lambda.d()).map(|k| &f[k - 1] * one_step(lambda, k, i).square()).sum()
}

/// (dim V_λ / dim V_{λ+e_i}) · Σ_k f_k |c^λ_{k→i}|²; 0 when λ+e_i is not a partition.
pub fn first_moment_diag(lambda: &Partition, f: &[BigRational], i: usize) -> BigRational {
    let d = dim_ratio(lambda, lambda.d(), i);
    if d.is_zero() {
        return BigRational::zero();
    }
    first_moment_sum(lambda, f, i) / d
}

/// The legal spectra exercised per λ: donate, staircase, every valid rank-r donation, and `random` random legal spectra.
pub fn legal_family(lambda: &Partition, random: usize, rng: &mut ChaCha8Rng) -> Vec<(String, Vec<BigRational>)> {
    let mut fs = vec![("donate".to_string(), vq(&donate(lambda).0)), ("staircase".to_string(), vq(&staircase(lambda).0))];
    for r in lambda.length().max(1)..=lambda.d() {
        fs.push((format!("staircase_{r}"), vq(&staircase_r(lambda, r).expect("ℓ ≤ r ≤ d").0)));
    }
    for t in 0..random {
        fs.push((format!("random{t}"), LegalSpectrum::random(lambda, rng).values().to_vec()));
    }
    fs
}

/// Σ_k f_k|c_{k→i}|² = (λ_i+1−i)·D^λ_{d→i} for every λ ⊢ n' ≤ n, d' ≤ d, every i and legal f.
pub fn verify_first_moment(n: usize, d: usize, random: usize, seed: u64) -> Report {
    let jobs = shapes_upto(n, d, 0);
    run_jobs("first-moment", n, d, jobs, |job, lambda| {
        let mut r = Report::new("");
        let mut rng = job_rng(seed, job as u64);
        let dd = lambda.d();
        for (name, f) in legal_family(lambda, random, &mut rng) {
            for i in 1..=dd {
                let lhs = first_moment_sum(lambda, &f, i);
                let rhs = q(lambda.part(i) as i64 + 1 - i as i64) * dim_ratio(lambda, dd, i);
                r.check_exact(|| idx(lambda, &format!("f={name} i={i}")), &lhs, &rhs);
            }
        }
        r
    })
    .param("random", random)
    .param("seed", seed)
}

// ---------------------------------------------------------------- two-step tables

/// Two-step coefficients (a, b) for all k, ℓ ∈ [d], indexed [k-1][ℓ-1].
#[derive(Clone, Debug)]
pub struct TwoStepTable {
    pub a: Vec<Vec<SqrtRational>>,
    pub b: Vec<Vec<SqrtRational>>,
}

impl TwoStepTable {
    pub fn new(lambda: &Partition, i: usize, j: usize) -> Self {
        let d = lambda.d();
        let mut a = vec![vec![SqrtRational::zero(); d]; d];
        let mut b = a.clone();
        for k in 1..=d {
            for l in 1..=d {
                let (x, y) = two_step(lambda, k, l, i, j);
                a[k - 1][l - 1] = x;
                b[k - 1][l - 1] = y;
            }
        }
        TwoStepTable { a, b }
    }

    /// |c_{kℓ→ij}|² = |a|² + |b|².
    pub fn squared(&self) -> Vec<Vec<BigRational>> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.square() + y.square()).collect())
            .collect()
    }
}

// ---------------------------------------------------------------- partial sums

/// F(s,t) by brute force from a table of |c_{kℓ→ij}|².
pub fn partial_sum_from(sq: &[Vec<BigRational>], s: usize, t: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for row in sq.iter().take(s) {
        for v in row.iter().take(t) {
            acc += v;
        }
    }
    acc
}

pub fn partial_sum(lambda: &Partition, i: usize, j: usize, s: usize, t: usize) -> BigRational {
    partial_sum_from(&TwoStepTable::new(lambda, i, j).squared(), s, t)
}

/// D^λ_{k→i} · D^{λ+e_i}_{t→j}, with the second factor 0 when λ+e_i is not a partition.
fn dd(lambda: &Partition, s: usize, i: usize, t: usize, j: usize) -> BigRational {
    match lambda.plus_box(i) {
        Some(up) => dim_ratio(lambda, s, i) * dim_ratio(&up, t, j),
        None => BigRational::zero(),
    }
}

/// Closed form of F(s,t).
pub fn partial_sum_closed(lambda: &Partition, i: usize, j: usize, s: usize, t: usize) -> BigRational {
    if s <= t {
        return dd(lambda, s, i, t, j);
    }
    let delta = q(delta_ji(lambda, i, j));
    let fj = dd(lambda, t, j, s, i);
    let fi = dd(lambda, t, i, s, j);
    &fj + (fi - &fj) / (&delta * &delta)
}

/// Brute-force F(s,t) equals the closed form; also the inner-summation identity of the dual-CG step.
pub fn verify_partial_sums(n: usize, d: usize) -> Report {
    run_jobs("partial-sums", n, d, shapes_upto(n, d, 0), |_, lambda| {
        let mut r = Report::new("");
        let dd_ = lambda.d();
        for i in 1..=dd_ {
            for j in 1..=dd_ {
                let sq = TwoStepTable::new(lambda, i, j).squared();
                for s in 1..=dd_ {
                    for t in 1..=dd_ {
                        let lhs = partial_sum_from(&sq, s, t);
                        let rhs = partial_sum_closed(lambda, i, j, s, t);
                        r.check_exact(|| idx(lambda, &format!("i={i} j={j} s={s} t={t}")), &lhs, &rhs);
                    }
                }
            }
        }
        inner_summation(lambda, &mut r);
        r
    })
}

/// Σ_{ℓ≤t} Σ_{T′ ∈ SSYT(λ_ij)} |⟨T′|T_{k→i},ℓ⟩|² = D^{λ+e_i}_{t→j} for k ≤ t.
fn inner_summation(lambda: &Partition, r: &mut Report) {
    let d = lambda.d();
    for i in 1..=d {
        let Some(up) = lambda.plus_box(i) else { continue };
        for k in i..=d {
            let Some(tk) = crate::tableaux::one_step_tableau(lambda, k, i) else { continue };
            for j in 1..=d {
                let Some(up2) = up.plus_box(j) else { continue };
                let targets = enumerate_ssyt(&up2);
                let mut acc = BigRational::zero();
                for t in 1..=d {
                    acc += targets.iter().map(|tp| cg_coefficient(tp, &tk, t).square()).sum::<BigRational>();
                    if k <= t {
                        let rhs = dim_ratio(&up, t, j);
                        r.check_exact(|| idx(lambda, &format!("inner k={k} i={i} j={j} t={t}")), &acc, &rhs);
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------- diagonal expression

/// Σ_{k,ℓ} (f_k f_ℓ + f_max(k,ℓ)/Δ_ji) |c_{kℓ→ij}|².
pub fn diagonal_expression_lhs(lambda: &Partition, i: usize, j: usize, f: &[BigRational]) -> BigRational {
    let sq = TwoStepTable::new(lambda, i, j).squared();
    diagonal_expression_from(&sq, lambda, i, j, f, |_, _| true)
}

fn diagonal_expression_from(
    sq: &[Vec<BigRational>],
    lambda: &Partition,
    i: usize,
    j: usize,
    f: &[BigRational],
    keep: impl Fn(usize, usize) -> bool,
) -> BigRational {
    let inv_delta = BigRational::one() / q(delta_ji(lambda, i, j));
    let mut acc = BigRational::zero();
    for (k, row) in sq.iter().enumerate() {
        for (l, v) in row.iter().enumerate() {
            if v.is_zero() || !keep(k + 1, l + 1) {
                continue;
            }
            let w = &f[k] * &f[l] + &f[k.max(l)] * &inv_delta;
            acc += w * v;
        }
    }
    acc
}

/// (C_i+1)(C_j^{λ+e_i}+1) · D^λ_{d→ij}, equal to the dimension-ratio form when λ+e_i, λ_ij are partitions.
pub fn diagonal_expression_rhs(lambda: &Partition, i: usize, j: usize) -> BigRational {
    let one = BigRational::one();
    (c_i(lambda, i) + &one) * (c_j_after(lambda, i, j) + &one) * dim_ratio2(lambda, lambda.d(), i, j)
}

/// Diagonal Expression Lemma (donate, staircase), boundary lemma and the two corollary sums.
pub fn verify_diagonal_expression(n: usize, d: usize) -> Report {
    run_jobs("diagonal-expression", n, d, shapes_upto(n, d, 0), |_, lambda| {
        let mut r = Report::new("");
        let dd_ = lambda.d();
        let don = vq(&donate(lambda).0);
        let st = vq(&staircase(lambda).0);
        let one = BigRational::one();
        for i in 1..=dd_ {
            for j in 1..=dd_ {
                let sq = TwoStepTable::new(lambda, i, j).squared();
                let rhs = diagonal_expression_rhs(lambda, i, j);
                if order_valid(lambda, i, j) {
                    let ratio = dim_gl_q(&lambda.plus_box(i).and_then(|l| l.plus_box(j)).expect("valid order"))
                        / dim_gl_q(lambda);
                    r.check_exact(|| idx(lambda, &format!("D-ratio i={i} j={j}")), &dim_ratio2(lambda, dd_, i, j), &ratio);
                }
                for (name, f) in [("donate", &don), ("staircase", &st)] {
                    let lhs = diagonal_expression_from(&sq, lambda, i, j, f, |_, _| true);
                    r.check_exact(|| idx(lambda, &format!("f={name} i={i} j={j}")), &lhs, &rhs);
                }
                // Boundary slice max(k,ℓ) = d, staircase weights.
                let lhs = diagonal_expression_from(&sq, lambda, i, j, &st, |k, l| k.max(l) == dd_);
                let ci = c_i(lambda, i);
                let cj = c_j_after(lambda, i, j);
                let two = q(2);
                let rhs_b = (&ci + &one) * (&cj + &one) * dim_ratio2(lambda, dd_, i, j)
                    - (&ci + &two) * (&cj + &two) * dim_ratio2(lambda, dd_ - 1, i, j);
                r.check_exact(|| idx(lambda, &format!("boundary i={i} j={j}")), &lhs, &rhs_b);
                // Corollary sums.
                let dij = dim_ratio2(lambda, dd_, i, j);
                let inv_delta = &one / q(delta_ji(lambda, i, j));
                let mut s1 = BigRational::zero();
                let mut s2 = BigRational::zero();
                for k in 0..dd_ {
                    for l in 0..dd_ {
                        s1 += &st[k] * &sq[k][l];
                        s2 += (&st[l] + &inv_delta) * &sq[k][l];
                    }
                }
                r.check_exact(|| idx(lambda, &format!("corollary-i i={i} j={j}")), &s1, &((&ci + &one) * &dij));
                r.check_exact(|| idx(lambda, &format!("corollary-ii i={i} j={j}")), &s2, &((&cj + &one) * &dij));
            }
        }
        r
    })
}

// ---------------------------------------------------------------- moment blocks

/// Which weights a moment block uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentKind {
    /// M_avg^(2): f_k f_ℓ.
    Avg,
    /// M_corr^(2): f_max(k,ℓ).
    Corr,
}

/// A 1×1 or 2×2 block of M_avg^(2) or M_corr^(2) on span(S_ij, S_ji).
///
/// The block does not depend on the SYT S, only on (λ, i, j).
#[derive(Clone, Debug)]
pub struct MomentBlock {
    pub lambda: Partition,
    pub i: usize,
    pub j: usize,
    pub size: usize,
    /// Exact diagonal entries (S_ij first).
    pub diag: Vec<BigRational>,
    /// ⟨S_ij|M|S_ji⟩ and ⟨S_ji|M|S_ij⟩, each a sum of radicals approximated to 10^-64 per term.
    pub off: Option<(BigRational, BigRational)>,
    /// Whether the off-diagonal sums had any irrational term.
    pub off_exact: bool,
}

fn weight(kind: MomentKind, f: &[BigRational], k: usize, l: usize) -> BigRational {
    match kind {
        MomentKind::Avg => &f[k] * &f[l],
        MomentKind::Corr => f[k.max(l)].clone(),
    }
}

/// Full two-step vector: c_{k→i} · Σ_{T′ ∈ SSYT(λ_ij)} ⟨T′|T_{k→i},ℓ⟩ |T′⟩.
pub fn two_step_vector(lambda: &Partition, k: usize, l: usize, i: usize, j: usize) -> Vec<(crate::tableaux::Ssyt, SqrtRational)> {
    let Some(t1) = crate::tableaux::one_step_tableau(lambda, k, i) else { return Vec::new() };
    let Some(target) = lambda.plus_box(i).and_then(|p| p.plus_box(j)) else { return Vec::new() };
    let c1 = one_step(lambda, k, i);
    if c1.is_zero() {
        return Vec::new();
    }
    crate::clebsch_gordan::cg_insert(&t1, l)
        .into_iter()
        .filter(|(t, c)| t.shape() == target && !c.is_zero())
        .map(|(t, c)| (t, &c1 * &c))
        .collect()
}

/// Σ_{kℓ} w(k,ℓ) ⟨v_{kℓ→ij}, v_{kℓ→ji}⟩, returning (approximate sum, exact?).
fn off_sum(kind: MomentKind, f: &[BigRational], lambda: &Partition, i: usize, j: usize) -> (BigRational, bool) {
    let d = f.len();
    let mut acc = BigRational::zero();
    let mut exact = true;
    for k in 1..=d {
        for l in 1..=d {
            let w = weight(kind, f, k - 1, l - 1);
            if w.is_zero() {
                continue;
            }
            let u = two_step_vector(lambda, k, l, i, j);
            let v = two_step_vector(lambda, k, l, j, i);
            for (t, x) in &u {
                for (t2, y) in &v {
                    if t != t2 {
                        continue;
                    }
                    let term = x * y;
                    let val = match term.to_rational() {
                        Some(val) => val,
                        None => {
                            exact = false;
                            term.approx()
                        }
                    };
                    acc += &w * val;
                }
            }
        }
    }
    (acc, exact)
}

/// Block of (1/n²)·Σ_λ … with weights from `f` (normally donate(λ)).
pub fn moment_block(lambda: &Partition, f: &[BigRational], i: usize, j: usize, kind: MomentKind) -> Option<MomentBlock> {
    let block = swap_block(lambda, i, j).ok()?;
    let n = lambda.size();
    if n == 0 || !order_valid(lambda, i, j) {
        return None;
    }
    let big = lambda.plus_box(i)?.plus_box(j)?;
    let scale = dim_gl_q(lambda) / dim_gl_q(&big) / q((n * n) as i64);
    let t_ij = TwoStepTable::new(lambda, i, j);
    let diag_of = |t: &TwoStepTable| -> BigRational {
        let sq = t.squared();
        let mut acc = BigRational::zero();
        for (k, row) in sq.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    acc += weight(kind, f, k, l) * v;
                }
            }
        }
        acc * &scale
    };
    let mut diag = vec![diag_of(&t_ij)];
    let mut off = None;
    let mut off_exact = true;
    if block.kind == SwapKind::Swappable {
        let t_ji = TwoStepTable::new(lambda, j, i);
        diag.push(diag_of(&t_ji));
        let (x, ex) = off_sum(kind, f, lambda, i, j);
        let (y, ey) = off_sum(kind, f, lambda, j, i);
        off_exact = ex && ey;
        off = Some((x * &scale, y * &scale));
    }
    Some(MomentBlock { lambda: lambda.clone(), i, j, size: block.size(), diag, off, off_exact })
}

pub fn mavg2_block(lambda: &Partition, i: usize, j: usize) -> Option<MomentBlock> {
    moment_block(lambda, &vq(&donate(lambda).0), i, j, MomentKind::Avg)
}

pub fn mcorr2_block(lambda: &Partition, i: usize, j: usize) -> Option<MomentBlock> {
    moment_block(lambda, &vq(&donate(lambda).0), i, j, MomentKind::Corr)
}

/// Outcome of the Main Lemma on one block.
#[derive(Clone, Debug)]
pub struct BlockCheck {
    pub size: usize,
    /// 1×1: exact equality. 2×2: exact equality of the diagonal parts that are rational.
    pub exact_ok: bool,
    /// max |entry| of M_avg + M_corr·SWAP − X_{n+1}X_{n+2}/n² (0 for 1×1 blocks that match).
    pub residual: f64,
    /// M_corr block is a multiple of the identity.
    pub corr_scalar: bool,
}

/// M_avg + M_corr·SWAP = X_{n+1}X_{n+2}/n² on the (λ, {i,j}) block, with i ≤ j.
pub fn main_lemma_block(lambda: &Partition, i: usize, j: usize) -> Option<BlockCheck> {
    let avg = mavg2_block(lambda, i, j)?;
    let corr = mcorr2_block(lambda, i, j)?;
    let n = lambda.size() as i64;
    let n2 = q(n * n);
    let one = BigRational::one();
    let delta = delta_ji(lambda, i, j);
    let inv = &one / q(delta);
    let t1 = (c_i(lambda, i) + &one) * (c_j_after(lambda, i, j) + &one) / &n2;
    if avg.size == 1 {
        let lhs = &avg.diag[0] + &corr.diag[0] * &inv;
        let ok = lhs == t1;
        let residual = ratio_to_f64(&(&lhs - &t1).abs());
        return Some(BlockCheck { size: 1, exact_ok: ok, residual, corr_scalar: true });
    }
    let t2 = (c_i(lambda, j) + &one) * (c_j_after(lambda, j, i) + &one) / &n2;
    let s = sqrt_approx(&(&one - &inv * &inv));
    let (a12, a21) = avg.off.clone().expect("2×2 block");
    let (c12, c21) = corr.off.clone().expect("2×2 block");
    let (a11, a22) = (&avg.diag[0], &avg.diag[1]);
    let (c11, c22) = (&corr.diag[0], &corr.diag[1]);
    // (A + C·SWAP − diag(t1, t2)), SWAP = [[1/Δ, s], [s, −1/Δ]].
    let r11 = a11 + c11 * &inv + &c12 * &s - &t1;
    let r12 = &a12 + c11 * &s - &c12 * &inv;
    let r21 = &a21 + &c21 * &inv + c22 * &s;
    let r22 = a22 + &c21 * &s - c22 * &inv - &t2;
    let residual = [r11, r12, r21, r22].iter().map(|x| ratio_to_f64(&x.abs())).fold(0.0, f64::max);
    let exact_ok = a11 + c11 * &inv == t1 && a22 - c22 * &inv == t2;
    let corr_scalar = c11 == c22;
    Some(BlockCheck { size: 2, exact_ok, residual, corr_scalar })
}

/// Main Lemma over all λ ⊢ n′ (1 ≤ n′ ≤ n), d′ ≤ d and i ≤ j; 2×2 residuals are held to `tolerance`.
pub fn verify_main_lemma(n: usize, d: usize, tolerance: f64) -> Report {
    run_jobs("main-lemma", n, d, shapes_upto(n, d, 1), |_, lambda| {
        let mut r = Report::new("");
        for i in 1..=lambda.d() {
            for j in i..=lambda.d() {
                let Some(c) = main_lemma_block(lambda, i, j) else { continue };
                let at = |what: &str| idx(lambda, &format!("{what} i={i} j={j} size={}", c.size));
                if c.size == 1 {
                    r.check(|| at("block"), c.exact_ok, || "exact".into(), || "exact".into(), c.residual);
                } else {
                    r.check(|| at("diag"), c.exact_ok, || "exact".into(), || "exact".into(), 0.0);
                    r.check_residual(|| at("block"), c.residual, tolerance);
                    r.check(|| at("corr-scalar"), c.corr_scalar, || "c11".into(), || "c22".into(), 0.0);
                }
            }
        }
        r
    })
}

// ---------------------------------------------------------------- M_corr decomposition

/// The multiplicities m^λ_j (index j-1).
pub fn mcorr_multiplicities(lambda: &Partition) -> Vec<i64> {
    let blocks = lambda.blocks();
    let mut m = vec![0i64; lambda.d()];
    for (a, b) in blocks.iter().enumerate() {
        let lam_b = lambda.part(b.start) as i64;
        match blocks.get(a + 1) {
            Some(next) => {
                m[b.end - 1] = lam_b - lambda.part(next.start) as i64 + b.len() as i64 + next.len() as i64;
            }
            None if lam_b > 0 => m[b.end - 1] = lam_b + b.len() as i64,
            None => {}
        }
    }
    m
}

/// Σ_{j ≥ max(k,ℓ)} m_j − ℓ(λ) = donate(λ)_{max(k,ℓ)} entrywise, and m_j ≥ 0.
pub fn verify_mcorr_decomposition(n: usize, d: usize) -> Report {
    run_jobs("mcorr-decomp", n, d, shapes_upto(n, d, 0), |_, lambda| {
        let mut r = Report::new("");
        let m = mcorr_multiplicities(lambda);
        let don = donate(lambda).0;
        let len = lambda.length() as i64;
        for (j, &mj) in m.iter().enumerate() {
            r.check(|| idx(lambda, &format!("m_{}", j + 1)), mj >= 0, || mj.to_string(), || ">= 0".into(), 0.0);
        }
        let dd_ = lambda.d();
        for k in 1..=dd_ {
            for l in 1..=dd_ {
                let mx = k.max(l);
                let lhs: i64 = m[mx - 1..].iter().sum::<i64>() - len;
                r.check_exact(|| idx(lambda, &format!("k={k} l={l}")), &q(lhs), &q(don[mx - 1]));
            }
        }
        r
    })
}

// ---------------------------------------------------------------- block equalities

/// Two-step block equalities for one (λ, i, j).
pub fn verify_block_equalities_for(lambda: &Partition, i: usize, j: usize) -> Report {
    let mut r = Report::new("block-equalities");
    let sq = TwoStepTable::new(lambda, i, j).squared();
    let blocks = lambda.blocks();
    let factor = BigRational::one() + BigRational::one() / q(delta_ji(lambda, i, j));
    for b1 in &blocks {
        for b2 in &blocks {
            let mut cells = Vec::new();
            for k in b1.rows() {
                for l in b2.rows() {
                    if b1 != b2 || k != l {
                        cells.push((k, l));
                    }
                }
            }
            let Some(&(k0, l0)) = cells.first() else { continue };
            let v = &sq[k0 - 1][l0 - 1];
            for &(k, l) in &cells[1..] {
                r.check_exact(|| idx(lambda, &format!("i={i} j={j} B={b1}x{b2} k={k} l={l}")), &sq[k - 1][l - 1], v);
            }
            if b1 == b2 {
                let expect = &factor * v;
                for k in b1.rows() {
                    r.check_exact(|| idx(lambda, &format!("i={i} j={j} B={b1} diag k={k}")), &sq[k - 1][k - 1], &expect);
                }
            }
        }
    }
    r
}

pub fn verify_block_equalities(n: usize, d: usize) -> Report {
    run_jobs("block-equalities", n, d, shapes_upto(n, d, 0), |_, lambda| {
        let mut r = Report::new("");
        for i in 1..=lambda.d() {
            for j in 1..=lambda.d() {
                r.merge(verify_block_equalities_for(lambda, i, j));
            }
        }
        r
    })
}

// ---------------------------------------------------------------- complement lemma

/// ⟨S′|S,k⟩ = (−1)^{d−k} √(dim V_{λ+e_i}/dim V_λ) ⟨T′|T,k⟩ with T = compl(S′), T′ = compl(S).
pub fn verify_complement_cg(n: usize, d: usize) -> Report {
    run_jobs("complement-cg", n, d, shapes_upto(n, d, 0), |_, lambda| {
        let mut r = Report::new("");
        let dd_ = lambda.d();
        let small = enumerate_ssyt(lambda);
        for i in 1..=dd_ {
            let Some(up) = lambda.plus_box(i) else { continue };
            let ratio = SqrtRational::sqrt(dim_gl_q(&up) / dim_gl_q(lambda));
            let big = enumerate_ssyt(&up);
            for s in &small {
                for sp in &big {
                    let m = sp.columns().max(s.columns()) + 1;
                    let t = sp.complement(m).expect("m exceeds the column count");
                    let tp = s.complement(m).expect("m exceeds the column count");
                    for k in 1..=dd_ {
                        let lhs = cg_coefficient(sp, s, k);
                        let sign = if (dd_ - k) % 2 == 0 { 1 } else { -1 };
                        let rhs = &SqrtRational::new(sign, BigRational::one()) * &(&ratio * &cg_coefficient(&tp, &t, k));
                        let at = || idx(lambda, &format!("S={s} S'={sp} k={k} m={m}"));
                        r.check_exact(at, &lhs.square(), &rhs.square());
                        r.check(
                            || idx(lambda, &format!("sign S={s} S'={sp} k={k}")),
                            lhs.sign() == rhs.sign(),
                            || lhs.to_string(),
                            || rhs.to_string(),
                            0.0,
                        );
                    }
                }
            }
        }
        r
    })
}

// ---------------------------------------------------------------- estimator variance

/// E‖ρ̂ − ρ‖²_F = Σ_λ Pr[λ] Σ_i (f(λ)_i/n)² − p₂(α) for an unbiased spectrum estimator f.
pub fn estimator_variance(
    dist: &WssDistribution<BigRational>,
    alpha: &Spectrum<BigRational>,
    f: impl Fn(&Partition) -> Vec<BigRational>,
) -> BigRational {
    let n = q(dist.n() as i64);
    let n2 = &n * &n;
    dist.expect(|l| f(l).iter().map(|v| v * v).sum::<BigRational>() / &n2) - alpha.p2()
}

/// 2d/n + d²·E[ℓ(λ)]/n².
pub fn variance_bound(dist: &WssDistribution<BigRational>) -> BigRational {
    let n = q(dist.n() as i64);
    let d = q(dist.d() as i64);
    q(2) * &d / &n + &d * &d * dist.expected_length() / (&n * &n)
}

/// Var(donate) ≤ bound and Var(donate) ≤ Var(f) for staircase and random legal f.
pub fn variance_bound_check(n: usize, alpha: &Spectrum<BigRational>, random: usize, seed: u64) -> Report {
    let mut r = Report::new("variance").param("n", n).param("d", alpha.d());
    let dist = WssDistribution::new(n, alpha);
    let v_don = estimator_variance(&dist, alpha, |l| vq(&donate(l).0));
    let bound = variance_bound(&dist);
    let tag = alpha.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    r.check(|| format!("n={n} α={tag} bound"), v_don <= bound, || v_don.to_string(), || bound.to_string(), 0.0);
    let v_st = estimator_variance(&dist, alpha, |l| vq(&staircase(l).0));
    r.check(|| format!("n={n} α={tag} staircase"), v_don <= v_st, || v_don.to_string(), || v_st.to_string(), 0.0);
    for t in 0..random {
        let v = estimator_variance(&dist, alpha, |l| {
            let mut rng = job_rng(seed ^ t as u64, l.rows().iter().fold(17u64, |h, &x| h.wrapping_mul(31).wrapping_add(x as u64)));
            LegalSpectrum::random(l, &mut rng).values().to_vec()
        });
        r.check(|| format!("n={n} α={tag} random{t}"), v_don <= v, || v_don.to_string(), || v.to_string(), 0.0);
    }
    r
}

/// Variance checks over 1 ≤ n' ≤ n, 1 ≤ d' ≤ d, with `spectra` random rational spectra each.
pub fn verify_variance(n: usize, d: usize, spectra: usize, seed: u64) -> Report {
    let start = std::time::Instant::now();
    let mut jobs = Vec::new();
    for dd_ in 1..=d {
        for nn in 1..=n {
            for s in 0..spectra {
                jobs.push((nn, dd_, s));
            }
        }
    }
    let parts: Vec<Report> = jobs
        .par_iter()
        .enumerate()
        .map(|(job, &(nn, dd_, _))| {
            let alpha = Spectrum::random(dd_, &mut job_rng(seed, job as u64));
            variance_bound_check(nn, &alpha, 3, seed.wrapping_add(job as u64))
        })
        .collect();
    let mut r = Report::new("variance").param("n", n).param("d", d).param("seed", seed).merge_all(parts);
    r.wall_time = start.elapsed();
    r
}

/// E[p₂*(λ)] = n(n−1)·p₂(α) over n' ≤ n, d' ≤ d and `spectra` random spectra.
pub fn verify_p2_star(n: usize, d: usize, spectra: usize, seed: u64) -> Report {
    let mut jobs = Vec::new();
    for dd_ in 1..=d {
        for s in 0..spectra {
            jobs.push((dd_, s));
        }
    }
    let parts: Vec<Report> = jobs
        .par_iter()
        .enumerate()
        .map(|(job, &(dd_, _))| {
            let alpha = Spectrum::random(dd_, &mut job_rng(seed, job as u64));
            let mut r = Report::new("");
            for nn in 0..=n {
                let dist = WssDistribution::new(nn, &alpha);
                let lhs = dist.expect(|l| q(crate::schur_stats::p2_star(l)));
                let rhs = q((nn * nn.saturating_sub(1)) as i64) * alpha.p2();
                r.check_exact(|| format!("n={nn} d={dd_} job={job}"), &lhs, &rhs);
                r.check_exact(|| format!("total n={nn} d={dd_} job={job}"), &dist.total(), &BigRational::one());
            }
            r
        })
        .collect();
    Report::new("p2-star").param("n", n).param("d", d).param("seed", seed).merge_all(parts)
}

/// E[ℓ(λ)] ≤ 2√n under the uniform spectrum, for 1 ≤ n' ≤ n and every d' ≤ n'.
pub fn verify_row_height(n: usize) -> Report {
    let mut r = Report::new("row-height").param("n", n);
    for nn in 1..=n {
        for d in 1..=nn {
            let dist = WssDistribution::new(nn, &Spectrum::<BigRational>::uniform(d));
            let e = dist.expected_length();
            // E ≤ 2√n  ⇔  E² ≤ 4n (E ≥ 0).
            let ok = &e * &e <= q(4 * nn as i64);
            r.check(|| format!("n={nn} d={d}"), ok, || e.to_string(), || format!("2√{nn}"), 0.0);
        }
    }
    r
}

/// Exact Σ_λ (dim V_λ)·… helper for tests: the value of the two-step partial sum at (d, d).
pub fn full_two_step_mass(lambda: &Partition, i: usize, j: usize) -> BigRational {
    partial_sum(lambda, i, j, lambda.d(), lambda.d())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn p(parts: &[usize], d: usize) -> Partition {
        Partition::from_parts(parts, d).unwrap()
    }

    #[test]
    fn first_moment_examples() {
        let lam = p(&[1], 2);
        let f = vq(&donate(&lam).0);
        assert_eq!(first_moment_diag(&lam, &f, 1), q(1));
        assert_eq!(first_moment_diag(&lam, &f, 2), q(-1));
        assert_eq!(first_moment_sum(&lam, &f, 1), frac(3, 2));
        let st = vq(&staircase(&lam).0);
        assert_eq!(first_moment_diag(&lam, &st, 1), q(1));
    }

    #[test]
    fn partial_sum_examples() {
        let lam = p(&[1], 2);
        assert_eq!(partial_sum(&lam, 1, 2, 2, 2), q(1));
        assert_eq!(partial_sum_closed(&lam, 1, 2, 2, 2), q(1));
        assert_eq!(full_two_step_mass(&lam, 1, 2), dim_ratio2(&lam, 2, 1, 2));
        let lam = p(&[2, 1], 3);
        assert!(partial_sum(&lam, 3, 1, 2, 3).is_zero());
    }

    #[test]
    fn mcorr_examples() {
        assert_eq!(mcorr_multiplicities(&p(&[3, 3, 1, 0], 4)), vec![0, 5, 3, 0]);
        assert_eq!(mcorr_multiplicities(&p(&[2, 2], 2)), vec![0, 4]);
        assert_eq!(mcorr_multiplicities(&p(&[0, 0, 0], 3)), vec![0, 0, 0]);
    }

    #[test]
    fn variance_examples() {
        let alpha = Spectrum::uniform(2);
        let dist = WssDistribution::new(1, &alpha);
        let v = estimator_variance(&dist, &alpha, |l| vq(&donate(l).0));
        assert_eq!(v, frac(9, 2));
        assert_eq!(variance_bound(&dist), q(8));
        let dist = WssDistribution::new(2, &alpha);
        let vd = estimator_variance(&dist, &alpha, |l| vq(&donate(l).0));
        let vs = estimator_variance(&dist, &alpha, |l| vq(&staircase(l).0));
        assert!(vs > vd);
    }

    #[test]
    fn small_suites_pass() {
        for r in [
            verify_first_moment(4, 3, 2, 1),
            verify_partial_sums(3, 3),
            verify_diagonal_expression(3, 3),
            verify_main_lemma(3, 3, BLOCK_TOLERANCE),
            verify_mcorr_decomposition(5, 4),
            verify_block_equalities(4, 4),
            verify_complement_cg(2, 3),
            verify_variance(3, 2, 2, 5),
            verify_p2_star(4, 3, 2, 3),
            verify_row_height(6),
        ] {
            assert!(r.passed, "{}\n{:#?}", r.summary(), r.records);
        }
    }

    #[test]
    fn block_equality_figure() {
        let lam = p(&[3, 3, 3, 2, 2, 1, 1, 1], 9);
        for (i, j) in [(1, 4), (4, 6), (6, 9), (9, 9), (1, 1)] {
            let r = verify_block_equalities_for(&lam, i, j);
            assert!(r.passed, "{:#?}", r.records);
        }
        // Horizontal Δ = 1 doubles the value on the diagonal of a block.
        let lam = p(&[2, 2, 0], 3);
        let sq = TwoStepTable::new(&lam, 1, 1).squared();
        assert_eq!(delta_ji(&lam, 1, 1), 1);
        assert_eq!(sq[0][0], &sq[0][1] * q(2));
    }

    #[test]
    fn diagonal_expression_single_row() {
        // d = 1: λ₁(λ₁ + 1) for both estimators.
        for n in 0..6 {
            let lam = p(&[n], 1);
            let expect = q((n * (n + 1)) as i64);
            assert_eq!(diagonal_expression_rhs(&lam, 1, 1), expect);
            for f in [vq(&donate(&lam).0), vq(&staircase(&lam).0)] {
                assert_eq!(diagonal_expression_lhs(&lam, 1, 1, &f), expect);
            }
        }
    }

    #[test]
    fn complement_sign_has_no_flip_at_k_equal_d() {
        assert!(verify_complement_cg(3, 2).passed);
    }

    #[test]
    fn main_lemma_one_by_one_is_exact() {
        let lam = p(&[1, 0], 2);
        let c = main_lemma_block(&lam, 1, 1).unwrap();
        assert_eq!(c.size, 1);
        assert!(c.exact_ok);
        let c = main_lemma_block(&lam, 1, 2).unwrap();
        assert_eq!(c.size, 2);
        assert!(c.residual <= BLOCK_TOLERANCE, "{}", c.residual);
    }
}
