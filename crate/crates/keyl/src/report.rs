//! Verification reports shared by the library verifiers and the CLI.

use std::collections::BTreeMap;
use std::time::Duration;

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::scalar::ratio_to_f64;

/// A rational as a pair of decimal strings, so no precision is lost in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(q: &BigRational) -> Self {
        RationalJson { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

/// One checked identity instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub index: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: f64,
}

/// Number of violating records kept verbatim; the rest are only counted.
pub const MAX_KEPT_RECORDS: usize = 32;

/// Outcome of one verification suite.
///
/// Only violations are kept as records; `checked` counts every instance.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub passed: bool,
    pub checked: u64,
    pub violations: u64,
    pub max_residual: f64,
    pub records: Vec<Record>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            passed: true,
            checked: 0,
            violations: 0,
            max_residual: 0.0,
            records: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Records one instance; `ok` decides pass/fail, `residual` feeds the maximum.
    pub fn check(&mut self, index: impl FnOnce() -> String, ok: bool, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String, residual: f64) {
        self.checked += 1;
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = residual;
        }
        if !ok {
            self.passed = false;
            self.violations += 1;
            if self.records.len() < MAX_KEPT_RECORDS {
                self.records.push(Record { index: index(), lhs: lhs(), rhs: rhs(), residual });
            }
        }
    }

    /// Exact equality of two rationals.
    pub fn check_exact(&mut self, index: impl FnOnce() -> String, lhs: &BigRational, rhs: &BigRational) {
        let ok = lhs == rhs;
        let residual = if ok { 0.0 } else { ratio_to_f64(&(lhs - rhs).abs()) };
        self.check(index, ok, || lhs.to_string(), || rhs.to_string(), residual);
    }

    /// |lhs - rhs| ≤ tol.
    pub fn check_close(&mut self, index: impl FnOnce() -> String, lhs: f64, rhs: f64, tol: f64) {
        let residual = (lhs - rhs).abs();
        self.check(index, residual <= tol, || format!("{lhs:e}"), || format!("{rhs:e}"), residual);
    }

    /// A residual that must not exceed `tol`.
    pub fn check_residual(&mut self, index: impl FnOnce() -> String, residual: f64, tol: f64) {
        self.check(index, residual <= tol, || format!("{residual:e}"), || format!("≤ {tol:e}"), residual);
    }

    /// Folds another report into this one, keeping record order.
    pub fn merge(&mut self, other: Report) {
        self.passed &= other.passed;
        self.checked += other.checked;
        self.violations += other.violations;
        if other.max_residual.is_nan() || other.max_residual > self.max_residual {
            self.max_residual = other.max_residual;
        }
        let room = MAX_KEPT_RECORDS.saturating_sub(self.records.len());
        self.records.extend(other.records.into_iter().take(room));
        self.wall_time += other.wall_time;
    }

    /// Merges reports produced in index order into `self`.
    pub fn merge_all(mut self, parts: impl IntoIterator<Item = Report>) -> Self {
        for p in parts {
            self.merge(p);
        }
        self
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} checked, {} violations, max residual {:e})",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" },
            self.checked,
            self.violations,
            self.max_residual
        )
    }
}
