use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rows are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("partition has {len} nonzero rows but ambient length is {d}")]
    TooManyRows { len: usize, d: usize },
    #[error("rank {r} is smaller than the partition length {len}")]
    RankTooSmall { r: usize, len: usize },
    #[error("rank {r} exceeds the ambient length {d}")]
    RankTooLarge { r: usize, d: usize },
    #[error("cell ({row}, {col}) lies outside the diagram")]
    CellOutside { row: usize, col: usize },
    #[error("column bound {m} is smaller than the column count {columns}")]
    ColumnBound { m: usize, columns: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index {index} outside 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("size n={n}, d={d} exceeds the cap n<={max_n}, d<={max_d}")]
    SizeCap { n: usize, d: usize, max_n: usize, max_d: usize },
    #[error("neither S_ij nor S_ji is a standard tableau for rows ({i}, {j})")]
    NoValidOrder { i: usize, j: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
