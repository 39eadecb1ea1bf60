//! Standard and semistandard Young tableaux.
//!
//! An SSYT is equivalent to its chain of restriction shapes
//! T^{≤0} ≼ T^{≤1} ≼ … ≼ T^{≤d}; most of the CG code works on that chain.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{content, Partition};

/// Semistandard tableau over the alphabet [d]: rows weakly increase, columns strictly increase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ssyt {
    rows: Vec<Vec<usize>>,
    d: usize,
}

impl Ssyt {
    /// Builds and validates a tableau; `rows` may be shorter than `d`.
    pub fn from_rows(mut rows: Vec<Vec<usize>>, d: usize) -> Result<Self> {
        while rows.len() > d && rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        if rows.len() > d {
            return Err(Error::InvalidTableau(format!("{} rows exceed alphabet size {d}", rows.len())));
        }
        rows.resize(d, Vec::new());
        let t = Ssyt { rows, d };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.iter().any(|&x| x == 0 || x > self.d) {
                return Err(Error::InvalidTableau(format!("row {} has a letter outside 1..={}", i + 1, self.d)));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidTableau(format!("row {} decreases", i + 1)));
            }
            if i > 0 {
                let above = &self.rows[i - 1];
                if row.len() > above.len() {
                    return Err(Error::InvalidTableau("shape is not a partition".into()));
                }
                if row.iter().zip(above).any(|(b, a)| b <= a) {
                    return Err(Error::InvalidTableau(format!("column strictness fails in row {}", i + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len()).collect()).expect("validated shape")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn columns(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// Shape T^{≤p} of the cells holding letters ≤ p, as a partition of length p.
    pub fn restrict_shape(&self, p: usize) -> Partition {
        let rows = (0..p)
            .map(|i| self.rows.get(i).map_or(0, |r| r.iter().take_while(|&&x| x <= p).count()))
            .collect();
        Partition::new(rows).expect("restriction of an SSYT is a partition")
    }

    /// The restriction T^{[p]}: an SSYT over [p].
    pub fn restrict(&self, p: usize) -> Ssyt {
        let rows = (0..p)
            .map(|i| self.rows.get(i).map_or_else(Vec::new, |r| r.iter().copied().filter(|&x| x <= p).collect()))
            .collect();
        Ssyt { rows, d: p }
    }

    /// The interlacing chain T^{≤0}, …, T^{≤d}.
    pub fn chain(&self) -> Vec<Partition> {
        (0..=self.d).map(|p| self.restrict_shape(p)).collect()
    }

    /// Rebuilds a tableau from an interlacing chain; `chain[p]` has length p.
    pub fn from_chain(chain: &[Partition]) -> Result<Ssyt> {
        let d = chain.len().saturating_sub(1);
        let mut rows = vec![Vec::new(); d];
        for p in 1..=d {
            let (outer, inner) = (&chain[p], &chain[p - 1]);
            if outer.d() != p || inner.d() != p - 1 {
                return Err(Error::InvalidTableau("chain entry has the wrong length".into()));
            }
            for i in 1..=p {
                let lo = inner.part(i);
                let hi = outer.part(i);
                if hi < lo || (i < p && outer.part(i + 1) > inner.part(i)) {
                    return Err(Error::InvalidTableau(format!("chain does not interlace at level {p}")));
                }
                rows[i - 1].extend(std::iter::repeat_n(p, hi - lo));
            }
        }
        Ssyt::from_rows(rows, d)
    }

    /// Number of occurrences of each letter.
    pub fn weight(&self) -> Vec<usize> {
        let mut w = vec![0; self.d];
        for &x in self.rows.iter().flatten() {
            w[x - 1] += 1;
        }
        w
    }

    /// Appends `letter` to row `i` (1-based) if the result is still semistandard.
    pub fn append(&self, i: usize, letter: usize) -> Option<Ssyt> {
        if i == 0 || i > self.d {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[i - 1].push(letter);
        Ssyt::from_rows(rows, self.d).ok()
    }

    /// Complement inside the d × m rectangle: (compl T)^{≤p}_i = m - T^{≤p}_{p+1-i}.
    pub fn complement(&self, m: usize) -> Result<Ssyt> {
        if m < self.columns() {
            return Err(Error::ColumnBound { m, columns: self.columns() });
        }
        let chain: Vec<Partition> = self
            .chain()
            .iter()
            .map(|c| c.complement(m))
            .collect::<Result<_>>()?;
        Ssyt::from_chain(&chain)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>, d: usize) -> Ssyt {
        Ssyt { rows, d }
    }
}

impl fmt::Display for Ssyt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for Ssyt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nonempty: Vec<&Vec<usize>> = self.rows.iter().filter(|r| !r.is_empty()).collect();
        let mut seq = s.serialize_seq(Some(nonempty.len()))?;
        for r in nonempty {
            seq.serialize_element(r)?;
        }
        seq.end()
    }
}

/// Row i filled with the letter i.
pub fn highest_weight(lambda: &Partition) -> Ssyt {
    let rows = lambda.rows().iter().enumerate().map(|(i, &r)| vec![i + 1; r]).collect();
    Ssyt::from_rows_unchecked(rows, lambda.d())
}

/// The SSYT with T^{≤p}_i = λ_{d-p+i}.
pub fn lowest_weight(lambda: &Partition) -> Ssyt {
    let d = lambda.d();
    let chain: Vec<Partition> = (0..=d)
        .map(|p| Partition::new((1..=p).map(|i| lambda.part(d - p + i)).collect()).expect("suffix of a partition"))
        .collect();
    Ssyt::from_chain(&chain).expect("suffix chain interlaces")
}

/// All SSYT of shape λ over [d] (d = λ.d()), in a fixed deterministic order.
pub fn enumerate_ssyt(lambda: &Partition) -> Vec<Ssyt> {
    let d = lambda.d();
    let mut out = Vec::new();
    let mut chain = vec![Partition::empty(0); d + 1];
    chain[d] = lambda.clone();
    fn rec(p: usize, chain: &mut Vec<Partition>, out: &mut Vec<Ssyt>) {
        if p == 0 {
            out.push(Ssyt::from_chain(chain).expect("interlacing chain"));
            return;
        }
        let outer = chain[p].clone();
        if p == 1 {
            chain[0] = Partition::empty(0);
            rec(0, chain, out);
            return;
        }
        let mut cur = vec![0usize; p - 1];
        fn fill(i: usize, outer: &Partition, cur: &mut Vec<usize>, p: usize, chain: &mut Vec<Partition>, out: &mut Vec<Ssyt>) {
            if i > p - 1 {
                chain[p - 1] = Partition::new(cur.clone()).expect("interlacing rows decrease");
                rec(p - 1, chain, out);
                return;
            }
            for v in (outer.part(i + 1)..=outer.part(i)).rev() {
                cur[i - 1] = v;
                fill(i + 1, outer, cur, p, chain, out);
            }
        }
        fill(1, &outer, &mut cur, p, chain, out);
    }
    rec(d, &mut chain, &mut out);
    out
}

/// Standard tableau stored as the row of each entry 1..=n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syt {
    shape: Partition,
    row_of: Vec<usize>,
    col_of: Vec<usize>,
}

impl Syt {
    /// The empty tableau of ambient length `d`.
    pub fn empty(d: usize) -> Syt {
        Syt { shape: Partition::empty(d), row_of: Vec::new(), col_of: Vec::new() }
    }

    /// Builds from the growth sequence: entry m sits in row `rows[m-1]`.
    pub fn from_row_sequence(rows: &[usize], d: usize) -> Result<Syt> {
        let mut s = Syt::empty(d);
        for &r in rows {
            s = s
                .add(r)
                .ok_or_else(|| Error::InvalidTableau(format!("row sequence {rows:?} leaves the set of partitions")))?;
        }
        Ok(s)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.row_of.len()
    }

    /// Row (1-based) holding entry `m`.
    pub fn row_of(&self, m: usize) -> usize {
        self.row_of[m - 1]
    }

    pub fn row_sequence(&self) -> &[usize] {
        &self.row_of
    }

    /// cont_S(m).
    pub fn content(&self, m: usize) -> i64 {
        content(self.row_of[m - 1], self.col_of[m - 1])
    }

    /// Adds entry n+1 at the end of row `i`.
    pub fn add(&self, i: usize) -> Option<Syt> {
        let shape = self.shape.plus_box(i)?;
        let mut row_of = self.row_of.clone();
        let mut col_of = self.col_of.clone();
        row_of.push(i);
        col_of.push(shape.part(i));
        Some(Syt { shape, row_of, col_of })
    }

    /// Removes entry n, returning the smaller tableau and the row it came from.
    pub fn remove_last(&self) -> Option<(Syt, usize)> {
        let &i = self.row_of.last()?;
        let mut rows = self.shape.rows().to_vec();
        rows[i - 1] -= 1;
        Some((
            Syt {
                shape: Partition::new(rows).expect("removing the largest entry keeps a partition"),
                row_of: self.row_of[..self.row_of.len() - 1].to_vec(),
                col_of: self.col_of[..self.col_of.len() - 1].to_vec(),
            },
            i,
        ))
    }

    /// Swaps entries m and m+1 if the result is standard.
    pub fn swap_adjacent(&self, m: usize) -> Option<Syt> {
        let (r1, r2) = (self.row_of[m - 1], self.row_of[m]);
        let (c1, c2) = (self.col_of[m - 1], self.col_of[m]);
        if r1 == r2 || c1 == c2 {
            return None;
        }
        let mut s = self.clone();
        s.row_of.swap(m - 1, m);
        s.col_of.swap(m - 1, m);
        Some(s)
    }

    /// Entries laid out row by row.
    pub fn filling(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.shape.rows().iter().map(|&r| vec![0; r]).collect();
        for (m, (&r, &c)) in self.row_of.iter().zip(&self.col_of).enumerate() {
            rows[r - 1][c - 1] = m + 1;
        }
        rows
    }
}

impl fmt::Display for Syt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .filling()
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for Syt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<usize>> = self.filling().into_iter().filter(|r| !r.is_empty()).collect();
        rows.serialize(s)
    }
}

/// All standard tableaux of shape λ, ordered by the row of the largest entry, then recursively.
pub fn enumerate_syt(lambda: &Partition) -> Vec<Syt> {
    if lambda.size() == 0 {
        return vec![Syt::empty(lambda.d())];
    }
    let mut out = Vec::new();
    for i in 1..=lambda.d() {
        if let Some(smaller) = lambda.minus_box(i) {
            for s in enumerate_syt(&smaller) {
                out.push(s.add(i).expect("adding back a removable corner"));
            }
        }
    }
    out
}

/// A pair of nested shapes (T^{≤p}, T^{≤p-1}) forming a horizontal strip.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HorizontalStrip {
    pub outer: Partition,
    pub inner: Partition,
}

impl HorizontalStrip {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        let s = HorizontalStrip { outer, inner };
        if !s.is_valid() {
            return Err(Error::InvalidTableau(format!("({}, {}) is not a horizontal strip", s.outer, s.inner)));
        }
        Ok(s)
    }

    /// The level p, equal to the outer length.
    pub fn level(&self) -> usize {
        self.outer.d()
    }

    /// Interlacing test: outer_{i+1} ≤ inner_i ≤ outer_i.
    pub fn is_valid(&self) -> bool {
        let p = self.outer.d();
        if self.inner.d() + 1 != p {
            return false;
        }
        (1..p).all(|i| self.outer.part(i + 1) <= self.inner.part(i) && self.inner.part(i) <= self.outer.part(i))
    }

    pub fn of(t: &Ssyt, p: usize) -> HorizontalStrip {
        HorizontalStrip { outer: t.restrict_shape(p), inner: t.restrict_shape(p - 1) }
    }
}

/// T^λ_{k→i}: the highest-weight tableau with k appended to row i.
pub fn one_step_tableau(lambda: &Partition, k: usize, i: usize) -> Option<Ssyt> {
    if i > k {
        return None;
    }
    highest_weight(lambda).append(i, k)
}

/// T^λ_{kℓ→ij}: k appended to row i, then ℓ to row j; within one row the pair is sorted.
pub fn two_step_tableau(lambda: &Partition, k: usize, l: usize, i: usize, j: usize) -> Option<Ssyt> {
    let d = lambda.d();
    if i == 0 || j == 0 || i > d || j > d {
        return None;
    }
    let mut rows = highest_weight(lambda).rows;
    if i == j {
        rows[i - 1].push(k.min(l));
        rows[i - 1].push(k.max(l));
    } else {
        rows[i - 1].push(k);
        rows[j - 1].push(l);
    }
    Ssyt::from_rows(rows, d).ok()
}
