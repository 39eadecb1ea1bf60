//! Partitions of bounded length, blocks, contents, hooks, complements and
//! the box-donation transformations.
//!
//! Row indices are 1-based throughout, matching the usual tableau notation.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{frac, q};

/// A weakly decreasing vector of nonnegative row lengths with explicit ambient length `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    rows: Vec<usize>,
}

impl Partition {
    /// Creates a partition whose ambient length is `rows.len()`.
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(rows));
        }
        Ok(Partition { rows })
    }

    /// Pads `parts` with zeros up to length `d`.
    pub fn from_parts(parts: &[usize], d: usize) -> Result<Self> {
        let len = parts.iter().filter(|&&p| p > 0).count();
        if parts.len() > d && parts[d..].iter().any(|&p| p > 0) {
            return Err(Error::TooManyRows { len, d });
        }
        let mut rows: Vec<usize> = parts.iter().copied().take(d).collect();
        rows.resize(d, 0);
        Partition::new(rows)
    }

    pub fn empty(d: usize) -> Self {
        Partition { rows: vec![0; d] }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Ambient length.
    pub fn d(&self) -> usize {
        self.rows.len()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of nonzero rows, written ℓ(λ).
    pub fn length(&self) -> usize {
        self.rows.iter().take_while(|&&r| r > 0).count()
    }

    /// Row `i` (1-based); rows past `d` read as zero.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 || i > self.rows.len() {
            0
        } else {
            self.rows[i - 1]
        }
    }

    pub fn columns(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    /// λ + e_i, if it is still a partition.
    pub fn plus_box(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.d() {
            return None;
        }
        if i > 1 && self.rows[i - 2] == self.rows[i - 1] {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[i - 1] += 1;
        Some(Partition { rows })
    }

    /// λ - e_i, if it is still a partition.
    pub fn minus_box(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.d() || self.rows[i - 1] == 0 {
            return None;
        }
        if i < self.d() && self.rows[i] == self.rows[i - 1] {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[i - 1] -= 1;
        Some(Partition { rows })
    }

    /// The first `k` rows, λ_{≤k}, as a partition of ambient length `k`.
    pub fn prefix(&self, k: usize) -> Partition {
        let mut rows: Vec<usize> = self.rows.iter().copied().take(k).collect();
        rows.resize(k, 0);
        Partition { rows }
    }

    /// Maximal runs of equal rows, including the run of trailing zeros.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        let mut start = 1;
        for i in 1..=self.d() {
            if i == self.d() || self.rows[i] != self.rows[i - 1] {
                out.push(Block { start, end: i });
                start = i + 1;
            }
        }
        out
    }

    /// The block containing row `i`.
    pub fn block_of(&self, i: usize) -> Option<Block> {
        self.blocks().into_iter().find(|b| b.contains(i))
    }

    /// C_i = λ_i - i, the content of the last cell of row `i` (defined for empty rows too).
    pub fn last_content(&self, i: usize) -> i64 {
        self.part(i) as i64 - i as i64
    }

    /// Hook length of cell (row, col), both 1-based.
    pub fn hook(&self, row: usize, col: usize) -> Result<usize> {
        if row == 0 || col == 0 || row > self.d() || col > self.rows[row - 1] {
            return Err(Error::CellOutside { row, col });
        }
        let arm = self.rows[row - 1] - col;
        let leg = self.rows[row..].iter().filter(|&&r| r >= col).count();
        Ok(arm + leg + 1)
    }

    /// Cells as 1-based (row, col) pairs in reading order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (1..=r).map(move |j| (i + 1, j)))
    }

    /// μ_i = m - λ_{d+1-i}.
    pub fn complement(&self, m: usize) -> Result<Partition> {
        if m < self.columns() {
            return Err(Error::ColumnBound { m, columns: self.columns() });
        }
        Ok(Partition { rows: self.rows.iter().rev().map(|&r| m - r).collect() })
    }

    /// Text form `λ=[4,4,2,1,0]`.
    pub fn canonical(&self) -> String {
        format!("λ={self}")
    }

    /// Same rows with a different ambient length; fails if nonzero rows would be cut.
    pub fn with_d(&self, d: usize) -> Result<Partition> {
        Partition::from_parts(&self.rows, d)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `4,4,2,1,0`, `[4,4,2,1,0]` or `λ=[4,4,2,1,0]`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("λ=").unwrap_or(body);
        let body = body.trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Partition::new(Vec::new());
        }
        let rows = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(rows)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Partition::new(rows)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.rows
    }
}

/// A maximal run `start..=end` of equal rows (1-based, inclusive).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.start <= i && i <= self.end
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().map(|r| r.to_string()).collect();
        write!(f, "{{{}}}", rows.join(","))
    }
}

/// Content j - i of cell (i, j).
pub fn content(row: usize, col: usize) -> i64 {
    col as i64 - row as i64
}

/// Integer row vector that may go negative; output of the donation maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedShape(pub Vec<i64>);

impl SignedShape {
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.0.iter().map(|&v| q(v)).collect()
    }
}

impl fmt::Display for SignedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Every λ ⊢ n with ℓ(λ) ≤ d, in lexicographically decreasing order.
pub fn enumerate_partitions(n: usize, d: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if slots == 0 {
            if left == 0 {
                out.push(Partition { rows: cur.clone() });
            }
            return;
        }
        if left > max * slots {
            return;
        }
        for v in (0..=left.min(max)).rev() {
            cur.push(v);
            rec(left - v, v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, d, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Box donation: every row gives a box to each strictly longer row above it
/// and receives one from each strictly shorter row below it.
pub fn donate(lambda: &Partition) -> SignedShape {
    let r = lambda.rows();
    let vals = (0..r.len())
        .map(|i| {
            let above = r[..i].iter().filter(|&&x| x > r[i]).count() as i64;
            let below = r[i + 1..].iter().filter(|&&x| r[i] > x).count() as i64;
            r[i] as i64 - above + below
        })
        .collect();
    SignedShape(vals)
}

/// Staircase donation λ_i + d - 2i + 1.
pub fn staircase(lambda: &Partition) -> SignedShape {
    let d = lambda.d() as i64;
    SignedShape(
        lambda
            .rows()
            .iter()
            .enumerate()
            .map(|(k, &r)| r as i64 + d - 2 * (k as i64 + 1) + 1)
            .collect(),
    )
}

/// Rank-r staircase: rows up to `r` as in [`staircase`], the rest set to -r.
pub fn staircase_r(lambda: &Partition, r: usize) -> Result<SignedShape> {
    if lambda.length() > r {
        return Err(Error::RankTooSmall { r, len: lambda.length() });
    }
    if r > lambda.d() {
        return Err(Error::RankTooLarge { r, d: lambda.d() });
    }
    let full = staircase(lambda);
    Ok(SignedShape(
        full.0.iter().enumerate().map(|(k, &v)| if k < r { v } else { -(r as i64) }).collect(),
    ))
}

/// True iff every block sum of `mu` equals the block sum of [`donate`].
pub fn is_legal(lambda: &Partition, mu: &[BigRational]) -> bool {
    if mu.len() != lambda.d() {
        return false;
    }
    let don = donate(lambda);
    lambda.blocks().iter().all(|b| {
        let lhs: BigRational = b.rows().map(|i| mu[i - 1].clone()).sum();
        let rhs: i64 = b.rows().map(|i| don.0[i - 1]).sum();
        lhs == q(rhs)
    })
}

/// μ_i = m - λ_{d+1-i}.
pub fn complement_partition(lambda: &Partition, m: usize) -> Result<Partition> {
    lambda.complement(m)
}

/// A rational spectrum whose block sums agree with box donation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegalSpectrum {
    values: Vec<BigRational>,
}

impl LegalSpectrum {
    pub fn new(lambda: &Partition, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != lambda.d() {
            return Err(Error::LengthMismatch { expected: lambda.d(), got: values.len() });
        }
        if !is_legal(lambda, &values) {
            return Err(Error::InvalidSpectrum(format!(
                "block sums of {values:?} differ from donate({lambda})"
            )));
        }
        Ok(LegalSpectrum { values })
    }

    pub fn from_shape(lambda: &Partition, shape: &SignedShape) -> Result<Self> {
        Self::new(lambda, shape.to_rationals())
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Redistributes donate(λ) randomly inside each block with small rational shifts.
    pub fn random<R: Rng + ?Sized>(lambda: &Partition, rng: &mut R) -> Self {
        let don = donate(lambda);
        let mut values = vec![BigRational::zero(); lambda.d()];
        for b in lambda.blocks() {
            let base = q(don.0[b.start - 1]);
            let mut acc = BigRational::zero();
            for i in b.start..b.end {
                let shift = frac(rng.gen_range(-12..=12), rng.gen_range(1..=7));
                acc += &shift;
                values[i - 1] = &base + shift;
            }
            values[b.end - 1] = base - acc;
        }
        LegalSpectrum { values }
    }
}

/// Named members of the legal family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transform {
    Donate,
    Staircase,
    StaircaseRank(usize),
}

impl Transform {
    pub fn apply(&self, lambda: &Partition) -> Result<SignedShape> {
        match *self {
            Transform::Donate => Ok(donate(lambda)),
            Transform::Staircase => Ok(staircase(lambda)),
            Transform::StaircaseRank(r) => staircase_r(lambda, r),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Donate => write!(f, "donate"),
            Transform::Staircase => write!(f, "staircase"),
            Transform::StaircaseRank(r) => write!(f, "staircase_r{r}"),
        }
    }
}
