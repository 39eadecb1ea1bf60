//! Young's orthogonal form of S_n on SYT bases, Jucys-Murphy elements and SWAP blocks.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, RealField};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::sqrt_rational::SqrtRational;
use crate::tableaux::{enumerate_syt, Syt};

/// A permutation of [n] in one-line notation (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &x in &one_line {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotAPermutation(one_line));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The transposition (a b).
    pub fn transposition(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::IndexOutOfRange { index: a.max(b), bound: n });
        }
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(a - 1, b - 1);
        Ok(Permutation(v))
    }

    /// Parses cycle notation such as "(1 3)(2 4)" or "(2,3)"; "()" or "e" is the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut perm: Vec<usize> = (1..=n).collect();
        let text = text.trim();
        if text == "e" || text.is_empty() {
            return Ok(Permutation(perm));
        }
        let bad = || Error::Parse(format!("bad cycle notation {text:?}"));
        let mut rest = text;
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body_start.find(')').ok_or_else(bad)?;
            let cycle: Vec<usize> = body_start[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if cycle.iter().any(|&x| x == 0 || x > n) {
                return Err(bad());
            }
            let c = Permutation(
                (1..=n)
                    .map(|x| match cycle.iter().position(|&y| y == x) {
                        Some(p) => cycle[(p + 1) % cycle.len()],
                        None => x,
                    })
                    .collect(),
            );
            perm = Permutation(perm).compose(&c).0;
            rest = body_start[close + 1..].trim_start();
        }
        Permutation::new(perm)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// π(x), 1-based.
    pub fn apply(&self, x: usize) -> usize {
        self.0[x - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x - 1] = i + 1;
        }
        Permutation(v)
    }

    /// Reduced word [a_1, …, a_m] with π = s_{a_1} ∘ ⋯ ∘ s_{a_m}, s_a = (a a+1).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.0.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
            p.swap(i, i + 1);
            word.push(i + 1);
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.n()];
        let mut any = false;
        for start in 1..=self.n() {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            any = true;
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            write!(f, "({})", cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))?;
        }
        if !any {
            write!(f, "e")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line notation "2,1,3".
    fn from_str(s: &str) -> Result<Self> {
        let v = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad permutation {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(v)
    }
}

/// A matrix on the SYT basis of λ with single-radical entries.
#[derive(Clone, Debug, PartialEq)]
pub struct YorMatrix {
    pub basis: Vec<Syt>,
    pub entries: Vec<Vec<SqrtRational>>,
}

impl YorMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_matrix<T: RealField + Copy>(&self) -> DMatrix<T> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |r, c| nalgebra::convert(self.entries[r][c].to_f64()))
    }
}

/// 1/Δ and √(1 − 1/Δ²) for a content difference Δ.
fn mixing(delta: i64) -> (SqrtRational, SqrtRational) {
    let inv = BigRational::new(1.into(), delta.into());
    let diag = SqrtRational::from_rational(&inv);
    let off = SqrtRational::sqrt(BigRational::one() - &inv * &inv);
    (diag, off)
}

/// κ_λ((i i+1)) on the SYT basis, columns are images of basis vectors.
pub fn transposition_action(lambda: &Partition, i: usize) -> Result<YorMatrix> {
    let n = lambda.size();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, bound: n.saturating_sub(1) });
    }
    let basis = enumerate_syt(lambda);
    let dim = basis.len();
    let mut entries = vec![vec![SqrtRational::zero(); dim]; dim];
    for (col, s) in basis.iter().enumerate() {
        let delta = s.content(i + 1) - s.content(i);
        let (diag, off) = mixing(delta);
        entries[col][col] = diag;
        if let Some(t) = s.swap_adjacent(i) {
            let row = basis.iter().position(|b| *b == t).expect("swap stays in SYT(λ)");
            entries[row][col] = off;
        }
    }
    Ok(YorMatrix { basis, entries })
}

/// κ_λ(π) as a product of adjacent transpositions along the reduced word.
pub fn perm_matrix<T: RealField + Copy>(lambda: &Partition, pi: &Permutation) -> Result<DMatrix<T>> {
    let n = lambda.size();
    if pi.n() != n {
        return Err(Error::LengthMismatch { expected: n, got: pi.n() });
    }
    let dim = enumerate_syt(lambda).len();
    let mut acc = DMatrix::<T>::identity(dim, dim);
    for a in pi.reduced_word() {
        acc *= transposition_action(lambda, a)?.to_matrix::<T>();
    }
    Ok(acc)
}

/// Diagonal of X_k in Young's orthogonal basis: cont_S(k) for each S.
pub fn jucys_murphy(lambda: &Partition, k: usize) -> Result<Vec<i64>> {
    let n = lambda.size();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    Ok(enumerate_syt(lambda).iter().map(|s| s.content(k)).collect())
}

/// Shape of a SWAP block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapKind {
    Horizontal,
    Vertical,
    Swappable,
}

/// SWAP restricted to the span of {S_ij, S_ji}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapBlock {
    pub delta: i64,
    pub kind: SwapKind,
}

impl SwapBlock {
    pub fn size(&self) -> usize {
        if self.kind == SwapKind::Swappable {
            2
        } else {
            1
        }
    }

    /// Block entries ordered (S_ij, S_ji).
    pub fn entries(&self) -> Vec<Vec<SqrtRational>> {
        let (diag, off) = mixing(self.delta);
        match self.kind {
            SwapKind::Swappable => vec![vec![diag.clone(), off.clone()], vec![off, -diag]],
            _ => vec![vec![diag]],
        }
    }

    pub fn to_matrix<T: RealField + Copy>(&self) -> DMatrix<T> {
        let e = self.entries();
        let k = e.len();
        DMatrix::from_fn(k, k, |r, c| nalgebra::convert(e[r][c].to_f64()))
    }
}

/// Δ_ji: content of the box added to row j of λ+e_i minus content of the box added to row i of λ.
pub fn delta_ji(lambda: &Partition, i: usize, j: usize) -> i64 {
    let first = lambda.part(i) as i64 + 1 - i as i64;
    let second = lambda.part(j) as i64 + i64::from(i == j) + 1 - j as i64;
    second - first
}

/// Whether S_ij (n+1 in row i, n+2 in row j) is standard; depends only on shapes.
pub fn order_valid(lambda: &Partition, i: usize, j: usize) -> bool {
    lambda.plus_box(i).and_then(|l| l.plus_box(j)).is_some()
}

pub fn swap_block(lambda: &Partition, i: usize, j: usize) -> Result<SwapBlock> {
    let (ij, ji) = (order_valid(lambda, i, j), order_valid(lambda, j, i));
    if !ij && !ji {
        return Err(Error::NoValidOrder { i, j });
    }
    let delta = delta_ji(lambda, i, j);
    let kind = if i != j && ij && ji {
        SwapKind::Swappable
    } else if delta == 1 {
        SwapKind::Horizontal
    } else {
        SwapKind::Vertical
    };
    Ok(SwapBlock { delta, kind })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;
    use crate::scalar::frac;
    use crate::tableaux::Syt;

    fn p(parts: &[usize], d: usize) -> Partition {
        Partition::from_parts(parts, d).unwrap()
    }

    fn close(a: &DMatrix<f64>, b: &DMatrix<f64>) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn two_one_example() {
        let lam = p(&[2, 1], 2);
        let s1 = Syt::from_row_sequence(&[1, 1, 2], 2).unwrap();
        let s2 = Syt::from_row_sequence(&[1, 2, 1], 2).unwrap();
        let k12 = transposition_action(&lam, 1).unwrap();
        let at = |m: &YorMatrix, a: &Syt, b: &Syt| {
            let r = m.basis.iter().position(|x| x == a).unwrap();
            let c = m.basis.iter().position(|x| x == b).unwrap();
            m.entries[r][c].clone()
        };
        assert_eq!(at(&k12, &s1, &s1), SqrtRational::one());
        assert_eq!(at(&k12, &s2, &s2), -SqrtRational::one());
        let k23 = transposition_action(&lam, 2).unwrap();
        assert_eq!(at(&k23, &s1, &s1), SqrtRational::from_rational(&frac(-1, 2)));
        assert_eq!(at(&k23, &s2, &s1), SqrtRational::sqrt(frac(3, 4)));
        let mut jm = jucys_murphy(&lam, 3).unwrap();
        jm.sort();
        assert_eq!(jm, vec![-1, 1]);
        assert!(jucys_murphy(&lam, 1).unwrap().iter().all(|&x| x == 0));
    }

    #[test]
    fn involutions_and_braids() {
        for n in 2..=6 {
            for lam in enumerate_partitions(n, n) {
                let dim = enumerate_syt(&lam).len();
                let mats: Vec<DMatrix<f64>> =
                    (1..n).map(|i| transposition_action(&lam, i).unwrap().to_matrix()).collect();
                for m in &mats {
                    assert!(close(&(m * m), &DMatrix::identity(dim, dim)));
                }
                if n <= 5 {
                    for i in 0..mats.len().saturating_sub(1) {
                        let (a, b) = (&mats[i], &mats[i + 1]);
                        assert!(close(&(a * b * a), &(b * a * b)));
                    }
                }
            }
        }
    }

    #[test]
    fn permutations_compose() {
        let p13 = Permutation::parse_cycles("(1 3)", 3).unwrap();
        assert_eq!(p13.one_line(), &[3, 2, 1]);
        assert_eq!(p13.to_string(), "(1 3)");
        let lam = p(&[2, 1], 3);
        let via_word: DMatrix<f64> = perm_matrix(&lam, &p13).unwrap();
        // (1 3) = s1 s2 s1 = s2 s1 s2
        let s1: DMatrix<f64> = transposition_action(&lam, 1).unwrap().to_matrix();
        let s2: DMatrix<f64> = transposition_action(&lam, 2).unwrap().to_matrix();
        assert!(close(&via_word, &(&s1 * &s2 * &s1)));
        assert!(close(&via_word, &(&s2 * &s1 * &s2)));
        let lam = p(&[3, 1], 4);
        let a = Permutation::new(vec![2, 3, 1, 4]).unwrap();
        let b = Permutation::new(vec![1, 4, 2, 3]).unwrap();
        let ma: DMatrix<f64> = perm_matrix(&lam, &a).unwrap();
        let mb: DMatrix<f64> = perm_matrix(&lam, &b).unwrap();
        let mab: DMatrix<f64> = perm_matrix(&lam, &a.compose(&b)).unwrap();
        assert!(close(&(ma * mb), &mab));
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert_eq!(Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap().one_line(), &[2, 1, 4, 3]);
    }

    #[test]
    fn jucys_murphy_is_transposition_sum() {
        for n in 1..=5 {
            for lam in enumerate_partitions(n, n) {
                let dim = enumerate_syt(&lam).len();
                for k in 1..=n {
                    let mut sum = DMatrix::<f64>::zeros(dim, dim);
                    for j in 1..k {
                        sum += perm_matrix::<f64>(&lam, &Permutation::transposition(j, k, n).unwrap()).unwrap();
                    }
                    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                        dim,
                        jucys_murphy(&lam, k).unwrap().into_iter().map(|c| c as f64),
                    ));
                    assert!(close(&sum, &diag), "λ={lam} k={k}");
                }
            }
        }
    }

    #[test]
    fn swap_blocks() {
        let b = swap_block(&p(&[1, 0], 2), 1, 2).unwrap();
        assert_eq!(b.delta, -2);
        assert_eq!(b.kind, SwapKind::Swappable);
        let e = b.entries();
        assert_eq!(e[0][0], SqrtRational::from_rational(&frac(-1, 2)));
        assert_eq!(e[0][1], SqrtRational::sqrt(frac(3, 4)));
        assert_eq!(e[1][1], SqrtRational::from_rational(&frac(1, 2)));
        let h = swap_block(&p(&[3, 1], 3), 2, 2).unwrap();
        assert_eq!((h.kind, h.delta), (SwapKind::Horizontal, 1));
        let v = swap_block(&p(&[2, 0, 0], 3), 2, 3).unwrap();
        assert_eq!((v.kind, v.delta), (SwapKind::Vertical, -1));
        assert!(swap_block(&p(&[2, 2], 2), 2, 2).is_err());
        let m: DMatrix<f64> = b.to_matrix();
        assert!(close(&(&m * &m), &DMatrix::identity(2, 2)));
    }

    #[test]
    fn swap_block_is_restricted_transposition() {
        for n in 0..=3 {
            for lam in enumerate_partitions(n, 3) {
                let s = enumerate_syt(&lam)[0].clone();
                for i in 1..=3 {
                    for j in 1..=3 {
                        let Ok(block) = swap_block(&lam, i, j) else { continue };
                        let sij = s.add(i).and_then(|t| t.add(j));
                        let sji = s.add(j).and_then(|t| t.add(i));
                        let big = sij.as_ref().or(sji.as_ref()).unwrap().shape().clone();
                        let k = transposition_action(&big, n + 1).unwrap();
                        let idx = |t: &Syt| k.basis.iter().position(|b| b == t).unwrap();
                        let e = block.entries();
                        match (&sij, &sji, block.size()) {
                            (Some(a), Some(b), 2) => {
                                assert_eq!(k.entries[idx(a)][idx(a)], e[0][0]);
                                assert_eq!(k.entries[idx(b)][idx(a)], e[0][1]);
                                assert_eq!(k.entries[idx(b)][idx(b)], e[1][1]);
                            }
                            (Some(a), _, 1) | (None, Some(a), 1) => {
                                assert_eq!(k.entries[idx(a)][idx(a)].to_f64().abs(), 1.0);
                                if sij.is_some() {
                                    assert_eq!(k.entries[idx(a)][idx(a)], e[0][0]);
                                }
                            }
                            _ => panic!("inconsistent block for λ={lam}, i={i}, j={j}"),
                        }
                    }
                }
            }
        }
    }
}
