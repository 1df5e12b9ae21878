// SPDX-License-Identifier: Apache-2.0
//! Certificate records shared by every checking routine.
//!
//! A [`Check`] names one identity, counts the exact equations tested and
//! keeps the first counterexample. A [`Report`] is an ordered list of
//! checks.

use crate::exactfield::Scalar;

/// One side of a checked equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Datum {
    /// A vector, or a scalar as a vector of length one.
    Vector(Vec<Scalar>),
    /// A dimension or rank.
    Count(usize),
    Flag(bool),
}

impl From<Scalar> for Datum {
    fn from(s: Scalar) -> Self {
        Datum::Vector(vec![s])
    }
}

impl From<Vec<Scalar>> for Datum {
    fn from(v: Vec<Scalar>) -> Self {
        Datum::Vector(v)
    }
}

impl From<usize> for Datum {
    fn from(n: usize) -> Self {
        Datum::Count(n)
    }
}

impl From<bool> for Datum {
    fn from(b: bool) -> Self {
        Datum::Flag(b)
    }
}

/// Outcome of checking one identity on a finite set of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    /// Number of exact equations evaluated.
    pub checked: usize,
    /// Number of equations that failed.
    pub failures: usize,
    /// Labels of the first failing case; empty when the check passes.
    pub indices: Vec<String>,
    pub lhs: Option<Datum>,
    pub rhs: Option<Datum>,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

/// Accumulates cases for one identity.
pub struct Checker {
    check: Check,
}

impl Checker {
    pub fn new(identity: impl Into<String>) -> Self {
        Checker {
            check: Check {
                identity: identity.into(),
                checked: 0,
                failures: 0,
                indices: Vec::new(),
                lhs: None,
                rhs: None,
            },
        }
    }

    /// Records `lhs = rhs`; `labels` is only evaluated on the first failure.
    pub fn case<T: Into<Datum> + PartialEq>(
        &mut self,
        labels: impl FnOnce() -> Vec<String>,
        lhs: T,
        rhs: T,
    ) -> bool {
        self.check.checked += 1;
        if lhs == rhs {
            return true;
        }
        self.check.failures += 1;
        if self.check.failures == 1 {
            self.check.indices = labels();
            self.check.lhs = Some(lhs.into());
            self.check.rhs = Some(rhs.into());
        }
        false
    }

    /// Records a condition without sides.
    pub fn assert(&mut self, labels: impl FnOnce() -> Vec<String>, ok: bool) -> bool {
        self.case(labels, ok, true)
    }

    pub fn failures(&self) -> usize {
        self.check.failures
    }

    pub fn finish(self) -> Check {
        self.check
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass())
    }

    pub fn get(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }
}
