//! Toy-scale dense checks: the recursive Schur transform built from CG unitaries,
//! Schur-Weyl block structure, Jucys-Murphy diagonalization and unbiasedness of
//! the first-moment functional.

use std::collections::HashMap;

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::clebsch_gordan::cg_insert;
use crate::error::{Error, Result};
use crate::sweep::job_rng;
use crate::partitions::{enumerate_partitions, Partition};
use crate::report::Report;
use crate::tableaux::{enumerate_ssyt, enumerate_syt, Ssyt, Syt};
use crate::yor::{perm_matrix, Permutation};

pub const MAX_N: usize = 4;
pub const MAX_D: usize = 3;
pub const SCHUR_WEYL_TOLERANCE: f64 = 1e-8;
pub const JM_TOLERANCE: f64 = 1e-8;
pub const TRACE_TOLERANCE: f64 = 1e-10;
pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// A dense complex operator on (ℂ^d)^{⊗m}.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T: RealField> {
    pub d: usize,
    pub m: usize,
    pub matrix: DMatrix<Complex<T>>,
}

impl<T: RealField + Copy> DenseOperator<T> {
    pub fn identity(d: usize, m: usize) -> Self {
        let dim = d.pow(m as u32);
        DenseOperator { d, m, matrix: DMatrix::identity(dim, dim) }
    }

    /// A^{⊗m}.
    pub fn tensor_power(a: &DMatrix<Complex<T>>, m: usize) -> Self {
        let d = a.nrows();
        let mut acc = DMatrix::identity(1, 1);
        for _ in 0..m {
            acc = acc.kronecker(a);
        }
        DenseOperator { d, m, matrix: acc }
    }

    /// 𝒫(π): |x_1 … x_m⟩ ↦ |y⟩ with y_{π(i)} = x_i.
    pub fn permutation(d: usize, pi: &Permutation) -> Self {
        let m = pi.n();
        let dim = d.pow(m as u32);
        let mut matrix = DMatrix::zeros(dim, dim);
        let mut x = vec![0usize; m];
        let mut y = vec![0usize; m];
        for col in 0..dim {
            digits(col, d, &mut x);
            for i in 0..m {
                y[pi.apply(i + 1) - 1] = x[i];
            }
            matrix[(undigits(&y, d), col)] = Complex::new(T::one(), T::zero());
        }
        DenseOperator { d, m, matrix }
    }

    /// ‖A†A − I‖_F.
    pub fn unitarity_residual(&self) -> f64 {
        let dim = self.matrix.nrows();
        frob(&(self.matrix.adjoint() * &self.matrix - DMatrix::<Complex<T>>::identity(dim, dim)))
    }
}

fn digits(mut x: usize, d: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = x % d;
        x /= d;
    }
}

fn undigits(x: &[usize], d: usize) -> usize {
    x.iter().fold(0, |acc, &v| acc * d + v)
}

fn frob<T: RealField + Copy>(m: &DMatrix<Complex<T>>) -> f64 {
    let s: T = m.iter().fold(T::zero(), |acc, z| acc + z.re * z.re + z.im * z.im);
    nalgebra::try_convert::<T, f64>(s.sqrt()).unwrap_or(f64::NAN)
}

fn real<T: RealField + Copy>(x: f64) -> Complex<T> {
    Complex::new(nalgebra::convert(x), T::zero())
}

fn check_cap(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 || n > MAX_N || d > MAX_D {
        return Err(Error::SizeCap { n, d, max_n: MAX_N, max_d: MAX_D });
    }
    Ok(())
}

/// Row label of the Schur basis: |λ⟩ ⊗ |S⟩ ⊗ |T⟩.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchurLabel {
    pub syt: Syt,
    pub ssyt: Ssyt,
}

/// One irrep block: rows offset .. offset + f·m, ordered S-major.
#[derive(Clone, Debug)]
pub struct SchurBlock {
    pub lambda: Partition,
    pub offset: usize,
    pub syts: Vec<Syt>,
    pub ssyts: Vec<Ssyt>,
}

impl SchurBlock {
    pub fn size(&self) -> usize {
        self.syts.len() * self.ssyts.len()
    }
}

/// U_SW^{(n)} with rows in the Schur basis and columns in the computational basis.
#[derive(Clone, Debug)]
pub struct SchurTransform<T: RealField> {
    pub n: usize,
    pub d: usize,
    pub blocks: Vec<SchurBlock>,
    pub op: DenseOperator<T>,
}

fn layout(n: usize, d: usize) -> (Vec<SchurBlock>, HashMap<SchurLabel, usize>) {
    let mut blocks = Vec::new();
    let mut index = HashMap::new();
    let mut offset = 0;
    for lambda in enumerate_partitions(n, d) {
        let syts = enumerate_syt(&lambda);
        let ssyts = enumerate_ssyt(&lambda);
        for (a, s) in syts.iter().enumerate() {
            for (b, t) in ssyts.iter().enumerate() {
                index.insert(SchurLabel { syt: s.clone(), ssyt: t.clone() }, offset + a * ssyts.len() + b);
            }
        }
        let block = SchurBlock { lambda, offset, syts, ssyts };
        offset += block.size();
        blocks.push(block);
    }
    (blocks, index)
}

/// U^{(n)}[(λ,S′,T′),(x,k)] = Σ_T ⟨T′|T,k⟩ · U^{(n−1)}[(μ,S,T),x], starting from the empty tableau.
pub fn build_schur_transform<T: RealField + Copy>(n: usize, d: usize) -> Result<SchurTransform<T>> {
    check_cap(n, d)?;
    let (mut prev_blocks, _) = layout(0, d);
    let mut prev = DMatrix::<Complex<T>>::identity(1, 1);
    for m in 1..=n {
        let (blocks, index) = layout(m, d);
        let dim = d.pow(m as u32);
        let prev_dim = prev.ncols();
        let mut cur = DMatrix::<Complex<T>>::zeros(dim, dim);
        for pb in &prev_blocks {
            for (a, s) in pb.syts.iter().enumerate() {
                for (b, t) in pb.ssyts.iter().enumerate() {
                    let r_prev = pb.offset + a * pb.ssyts.len() + b;
                    for k in 1..=d {
                        for (t_out, c) in cg_insert(t, k) {
                            let row = (1..=d)
                                .find(|&i| t_out.shape().part(i) != t.shape().part(i))
                                .expect("insertion adds one box");
                            let s_out = s.add(row).expect("insertion shape is a partition");
                            let r = index[&SchurLabel { syt: s_out, ssyt: t_out }];
                            let c = real::<T>(c.to_f64());
                            for x in 0..prev_dim {
                                let v = prev[(r_prev, x)];
                                if v != Complex::new(T::zero(), T::zero()) {
                                    cur[(r, x * d + k - 1)] += c * v;
                                }
                            }
                        }
                    }
                }
            }
        }
        prev = cur;
        prev_blocks = blocks;
    }
    Ok(SchurTransform { n, d, blocks: prev_blocks, op: DenseOperator { d, m: n, matrix: prev } })
}

impl<T: RealField + Copy> SchurTransform<T> {
    /// U_SW · A · U_SW†.
    pub fn conjugate(&self, a: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
        &self.op.matrix * a * self.op.matrix.adjoint()
    }

    /// The ν_λ(A) block read off at the S-th standard tableau.
    pub fn nu_block(&self, conj: &DMatrix<Complex<T>>, block: &SchurBlock, s: usize) -> DMatrix<Complex<T>> {
        let m = block.ssyts.len();
        let o = block.offset + s * m;
        conj.view((o, o), (m, m)).into_owned()
    }

    /// ⊕_λ κ_λ(π) ⊗ ν_λ, with ν_λ taken from `nus`.
    pub fn assemble(&self, pi: &Permutation, nus: &[DMatrix<Complex<T>>]) -> Result<DMatrix<Complex<T>>> {
        let dim = self.op.matrix.nrows();
        let mut out = DMatrix::zeros(dim, dim);
        for (block, nu) in self.blocks.iter().zip(nus) {
            let kappa = perm_matrix::<T>(&block.lambda, pi)?.map(|x| Complex::new(x, T::zero()));
            let piece = kappa.kronecker(nu);
            out.view_mut((block.offset, block.offset), (block.size(), block.size())).copy_from(&piece);
        }
        Ok(out)
    }
}

/// ‖U_SW 𝒫(π) A^{⊗n} U_SW† − ⊕_λ κ_λ(π) ⊗ ν_λ(A)‖_F, with ν_λ(A) read off the π = e conjugate at the first SYT.
pub fn verify_schur_weyl<T: RealField + Copy>(
    st: &SchurTransform<T>,
    pi: &Permutation,
    a: &DMatrix<Complex<T>>,
) -> Result<f64> {
    let q = DenseOperator::tensor_power(a, st.n).matrix;
    let base = st.conjugate(&q);
    let nus: Vec<_> = st.blocks.iter().map(|b| st.nu_block(&base, b, 0)).collect();
    let lhs = st.conjugate(&(DenseOperator::<T>::permutation(st.d, pi).matrix * q));
    Ok(frob(&(lhs - st.assemble(pi, &nus)?)))
}

/// max_k ‖U_SW X_k U_SW† − diag(cont_S(k))‖_F with X_k = Σ_{j<k} 𝒫((j k)).
pub fn verify_jm_dense<T: RealField + Copy>(st: &SchurTransform<T>) -> Result<f64> {
    let dim = st.op.matrix.nrows();
    let mut worst: f64 = 0.0;
    for k in 1..=st.n {
        let mut x = DMatrix::<Complex<T>>::zeros(dim, dim);
        for j in 1..k {
            x += DenseOperator::<T>::permutation(st.d, &Permutation::transposition(j, k, st.n)?).matrix;
        }
        let mut target = DMatrix::<Complex<T>>::zeros(dim, dim);
        for block in &st.blocks {
            let m = block.ssyts.len();
            for (a, s) in block.syts.iter().enumerate() {
                for b in 0..m {
                    let r = block.offset + a * m + b;
                    target[(r, r)] = real(s.content(k) as f64);
                }
            }
        }
        worst = worst.max(frob(&(st.conjugate(&x) - target)));
    }
    Ok(worst)
}

/// ‖tr_{[n]}((1/n) X_{n+1} · ρ^{⊗n} ⊗ I) − ρ‖_F.
pub fn verify_unbiased_trace<T: RealField + Copy>(n: usize, rho: &DMatrix<Complex<T>>) -> Result<f64> {
    let d = rho.nrows();
    check_cap(n, d)?;
    let big = DenseOperator::tensor_power(rho, n).matrix.kronecker(&DMatrix::<Complex<T>>::identity(d, d));
    let mut x = DMatrix::<Complex<T>>::zeros(big.nrows(), big.ncols());
    for j in 1..=n {
        x += DenseOperator::<T>::permutation(d, &Permutation::transposition(j, n + 1, n + 1)?).matrix;
    }
    let prod = x * big;
    let rest = d.pow(n as u32);
    let mut out = DMatrix::<Complex<T>>::zeros(d, d);
    let scale = real::<T>(1.0 / n as f64);
    for a in 0..d {
        for b in 0..d {
            let mut acc = Complex::new(T::zero(), T::zero());
            for y in 0..rest {
                acc += prod[(y * d + a, y * d + b)];
            }
            out[(a, b)] = acc * scale;
        }
    }
    Ok(frob(&(out - rho)))
}

fn gaussian<T: RealField + Copy, R: Rng>(d: usize, rng: &mut R) -> DMatrix<Complex<T>>
where
    StandardNormal: Distribution<T>,
{
    let half: T = nalgebra::convert(std::f64::consts::FRAC_1_SQRT_2);
    DMatrix::from_fn(d, d, |_, _| Complex::new(StandardNormal.sample(rng) * half, StandardNormal.sample(rng) * half))
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of R's diagonal removed.
pub fn haar_unitary<T: RealField + Copy, R: Rng>(d: usize, rng: &mut R) -> DMatrix<Complex<T>>
where
    StandardNormal: Distribution<T>,
{
    let qr = gaussian::<T, R>(d, rng).qr();
    let (mut q, r) = qr.unpack();
    for c in 0..d {
        let z = r[(c, c)];
        let norm = (z.re * z.re + z.im * z.im).sqrt();
        if norm > T::zero() {
            let phase = Complex::new(z.re / norm, z.im / norm);
            for row in 0..d {
                q[(row, c)] *= phase;
            }
        }
    }
    q
}

/// Random density matrix G G† / tr(G G†).
pub fn random_density<T: RealField + Copy, R: Rng>(d: usize, rng: &mut R) -> DMatrix<Complex<T>>
where
    StandardNormal: Distribution<T>,
{
    let g = gaussian::<T, R>(d, rng);
    let w = &g * g.adjoint();
    let tr = w.trace();
    w.map(|z| z / tr)
}

/// Identity, (1 2), (1 n), the n-cycle, and one uniformly random permutation.
pub fn test_permutations<R: Rng>(n: usize, rng: &mut R) -> Vec<Permutation> {
    let mut cycle: Vec<usize> = (2..=n).collect();
    cycle.push(1);
    let mut shuffled: Vec<usize> = (1..=n).collect();
    shuffled.shuffle(rng);
    vec![
        Permutation::identity(n),
        Permutation::transposition(1, 2.min(n), n).expect("in range"),
        Permutation::transposition(1, n, n).expect("in range"),
        Permutation::new(cycle).expect("cycle"),
        Permutation::new(shuffled).expect("shuffle"),
    ]
}

/// Dense checks for every 1 ≤ n′ ≤ n, 1 ≤ d′ ≤ d: unitarity, block dimensions,
/// Schur-Weyl over `samples` Haar unitaries × 5 permutations, Jucys-Murphy, and unbiased trace over `samples` states.
/// `tolerance` overrides every residual threshold when given.
pub fn verify_dense(n: usize, d: usize, samples: usize, seed: u64, tolerance: Option<f64>) -> Result<Report> {
    check_cap(n, d)?;
    let start = std::time::Instant::now();
    let mut jobs = Vec::new();
    for dd in 1..=d {
        for nn in 1..=n {
            jobs.push((nn, dd));
        }
    }
    let parts: Vec<Result<Report>> = jobs
        .par_iter()
        .enumerate()
        .map(|(job, &(nn, dd))| {
            let mut r = Report::new("");
            let mut rng = job_rng(seed, job as u64);
            let st = build_schur_transform::<f64>(nn, dd)?;
            let at = |what: &str| format!("n={nn} d={dd} {what}");
            r.check_residual(|| at("unitary"), st.op.unitarity_residual(), tolerance.unwrap_or(UNITARY_TOLERANCE));
            let total: usize = st.blocks.iter().map(SchurBlock::size).sum();
            r.check(|| at("block dims"), total == dd.pow(nn as u32), || total.to_string(), || dd.pow(nn as u32).to_string(), 0.0);
            r.check_residual(|| at("jucys-murphy"), verify_jm_dense(&st)?, tolerance.unwrap_or(JM_TOLERANCE));
            let perms = test_permutations(nn, &mut rng);
            for s in 0..samples {
                let u = haar_unitary::<f64, _>(dd, &mut rng);
                for pi in &perms {
                    let res = verify_schur_weyl(&st, pi, &u)?;
                    r.check_residual(|| at(&format!("schur-weyl sample={s} π={pi}")), res, tolerance.unwrap_or(SCHUR_WEYL_TOLERANCE));
                }
                let rho = random_density::<f64, _>(dd, &mut rng);
                let res = verify_schur_weyl(&st, &Permutation::identity(nn), &rho)?;
                r.check_residual(|| at(&format!("ρ^⊗n blocks sample={s}")), res, tolerance.unwrap_or(SCHUR_WEYL_TOLERANCE));
                r.check_residual(|| at(&format!("unbiased trace sample={s}")), verify_unbiased_trace(nn, &rho)?, tolerance.unwrap_or(TRACE_TOLERANCE));
            }
            Ok(r)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    let mut r = Report::new("dense")
        .param("n", n)
        .param("d", d)
        .param("samples", samples)
        .param("seed", seed)
        .merge_all(parts);
    r.wall_time = start.elapsed();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubits_split_into_triplet_and_singlet() {
        let st = build_schur_transform::<f64>(2, 2).unwrap();
        let sizes: Vec<_> = st.blocks.iter().map(|b| (b.lambda.rows().to_vec(), b.size())).collect();
        assert_eq!(sizes, vec![(vec![2, 0], 3), (vec![1, 1], 1)]);
        // Singlet row is (|01⟩ − |10⟩)/√2 up to sign.
        let singlet = st.op.matrix.row(3);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((singlet[1].re.abs() - h).abs() < 1e-12 && (singlet[2].re + singlet[1].re).abs() < 1e-12);
        let swap = verify_jm_dense(&st).unwrap();
        assert!(swap < 1e-12);
    }

    #[test]
    fn single_qudit_is_identity() {
        let st = build_schur_transform::<f64>(1, 3).unwrap();
        assert!(frob(&(st.op.matrix.clone() - DMatrix::identity(3, 3))) < 1e-14);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(build_schur_transform::<f64>(5, 2), Err(Error::SizeCap { .. })));
        assert!(matches!(build_schur_transform::<f64>(2, 4), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn identity_gives_zero_residual() {
        let st = build_schur_transform::<f64>(3, 2).unwrap();
        let id = DMatrix::identity(2, 2);
        assert!(verify_schur_weyl(&st, &Permutation::identity(3), &id).unwrap() < 1e-12);
    }

    #[test]
    fn three_cycle_and_haar() {
        let st = build_schur_transform::<f64>(3, 2).unwrap();
        let mut rng = job_rng(7, 0);
        let u = haar_unitary::<f64, _>(2, &mut rng);
        assert!(frob(&(u.adjoint() * &u - DMatrix::identity(2, 2))) < 1e-12);
        for pi in [Permutation::new(vec![2, 3, 1]).unwrap(), Permutation::transposition(1, 2, 3).unwrap()] {
            let r = verify_schur_weyl(&st, &pi, &u).unwrap();
            assert!(r < 1e-8, "{pi}: {r}");
        }
    }

    #[test]
    fn unbiased_trace_small() {
        let mut rng = job_rng(3, 1);
        let rho = random_density::<f64, _>(2, &mut rng);
        assert!(verify_unbiased_trace(1, &rho).unwrap() < 1e-12);
        let mixed = DMatrix::<Complex<f64>>::identity(3, 3).map(|z| z / Complex::new(3.0, 0.0));
        assert!(verify_unbiased_trace(2, &mixed).unwrap() < 1e-12);
    }

    #[test]
    fn full_dense_suite_small() {
        let r = verify_dense(3, 2, 3, 11, None).unwrap();
        assert!(r.passed, "{}\n{:#?}", r.summary(), r.records);
    }

    #[test]
    fn f32_transform_is_unitary() {
        let st = build_schur_transform::<f32>(2, 2).unwrap();
        assert!(st.op.unitarity_residual() < 1e-5);
    }
}
