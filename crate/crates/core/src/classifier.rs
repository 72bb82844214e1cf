//! Linear inequalities on delta-vectors and the realizability decision for
//! candidates of normalized volume at most 3.

use std::fmt;

use crate::engine::DeltaVector;
use crate::error::{Error, Result};

/// A sequence `(delta_0, ..., delta_d)` with no validity assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateDelta(Vec<i64>);

impl CandidateDelta {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Parameter("candidate needs at least delta_0".into()));
        }
        Ok(CandidateDelta(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn with_trailing_zero(&self) -> CandidateDelta {
        let mut e = self.0.clone();
        e.push(0);
        CandidateDelta(e)
    }

    fn at(&self, i: usize) -> i64 {
        self.0[i]
    }

    fn range_sum(&self, idx: impl Iterator<Item = usize>) -> i64 {
        idx.map(|i| self.at(i)).sum()
    }
}

impl From<&DeltaVector> for CandidateDelta {
    fn from(d: &DeltaVector) -> Self {
        CandidateDelta(d.entries().iter().map(|&v| v as i64).collect())
    }
}

impl fmt::Display for CandidateDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// First failing instance of an indexed inequality family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub lhs: i64,
    pub rhs: i64,
}

pub type Check = std::result::Result<(), Violation>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicViolation {
    LeadingNotOne { value: i64 },
    Negative { index: usize, value: i64 },
    FirstBelowLast { first: i64, last: i64 },
}

impl fmt::Display for BasicViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicViolation::LeadingNotOne { value } => write!(f, "delta_0 = {value} != 1"),
            BasicViolation::Negative { index, value } => {
                write!(f, "delta_{index} = {value} is negative")
            }
            BasicViolation::FirstBelowLast { first, last } => {
                write!(f, "delta_1 = {first} < delta_d = {last}")
            }
        }
    }
}

/// `delta_0 = 1`, all entries nonnegative, and `delta_1 >= delta_d`.
pub fn check_basic(c: &CandidateDelta) -> std::result::Result<(), BasicViolation> {
    if c.at(0) != 1 {
        return Err(BasicViolation::LeadingNotOne { value: c.at(0) });
    }
    if let Some(index) = c.0.iter().position(|&v| v < 0) {
        return Err(BasicViolation::Negative {
            index,
            value: c.at(index),
        });
    }
    let d = c.dim();
    if d >= 1 && c.at(1) < c.at(d) {
        return Err(BasicViolation::FirstBelowLast {
            first: c.at(1),
            last: c.at(d),
        });
    }
    Ok(())
}

/// When `delta_d != 0`: `delta_1 <= delta_i` for `1 <= i < d`.
pub fn check_lower_bound(c: &CandidateDelta) -> Check {
    let d = c.dim();
    if d < 2 || c.at(d) == 0 {
        return Ok(());
    }
    for i in 1..d {
        if c.at(1) > c.at(i) {
            return Err(Violation {
                index: i,
                lhs: c.at(1),
                rhs: c.at(i),
            });
        }
    }
    Ok(())
}

/// `delta_0 + ... + delta_i <= delta_s + ... + delta_{s-i}` for
/// `0 <= i <= floor(s/2)`, where `s` is the last nonzero index.
pub fn check_stanley(c: &CandidateDelta) -> Result<Check> {
    let s =
        c.0.iter()
            .rposition(|&v| v != 0)
            .ok_or_else(|| Error::Parameter("all-zero sequence has no top degree".into()))?;
    for i in 0..=s / 2 {
        let lhs = c.range_sum(0..=i);
        let rhs = c.range_sum(s - i..=s);
        if lhs > rhs {
            return Ok(Err(Violation { index: i, lhs, rhs }));
        }
    }
    Ok(Ok(()))
}

/// `delta_{d-1} + ... + delta_{d-i} <= delta_2 + ... + delta_{i+1}` for
/// `1 <= i <= floor((d-1)/2)`.
pub fn check_hibi(c: &CandidateDelta) -> Check {
    let d = c.dim();
    if d < 3 {
        return Ok(());
    }
    for i in 1..=(d - 1) / 2 {
        let lhs = c.range_sum(d - i..d);
        let rhs = c.range_sum(2..=i + 1);
        if lhs > rhs {
            return Err(Violation { index: i, lhs, rhs });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub basic: std::result::Result<(), BasicViolation>,
    /// `None` when the sequence is all zero and `s` is undefined.
    pub stanley: Option<Check>,
    pub hibi: Check,
    pub lower_bound: Check,
}

impl InequalityReport {
    pub fn all_pass(&self) -> bool {
        self.basic.is_ok()
            && matches!(self.stanley, Some(Ok(())))
            && self.hibi.is_ok()
            && self.lower_bound.is_ok()
    }
}

pub fn inequality_report(c: &CandidateDelta) -> InequalityReport {
    InequalityReport {
        basic: check_basic(c),
        stanley: check_stanley(c).ok(),
        hibi: check_hibi(c),
        lower_bound: check_lower_bound(c),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    Basic(BasicViolation),
    Stanley(Violation),
    Hibi(Violation),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Basic(b) => write!(f, "basic: {b}"),
            Reason::Stanley(v) => {
                write!(f, "stanley: fails at i={} ({} > {})", v.index, v.lhs, v.rhs)
            }
            Reason::Hibi(v) => write!(f, "hibi: fails at i={} ({} > {})", v.index, v.lhs, v.rhs),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScopeReason {
    DimensionBelowThree(usize),
    SumAboveThree(i64),
}

impl fmt::Display for ScopeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScopeReason::DimensionBelowThree(d) => write!(f, "dimension {d} < 3"),
            ScopeReason::SumAboveThree(s) => write!(f, "sum {s} > 3"),
        }
    }
}

/// Realizability verdict for candidates with `d >= 3` and sum at most 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No(Reason),
    OutOfScope(ScopeReason),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No(_) => "no",
            Verdict::OutOfScope(_) => "out-of-scope",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No(r) => write!(f, "no ({r})"),
            Verdict::OutOfScope(r) => write!(f, "out-of-scope ({r})"),
        }
    }
}

/// For `d >= 3` and sum at most 3, a candidate is a delta-vector of some
/// `d`-dimensional integral polytope iff it passes the basic, Stanley and
/// Hibi checks. Outside that range no decision is made.
pub fn is_realizable(c: &CandidateDelta) -> Verdict {
    let d = c.dim();
    if d < 3 {
        return Verdict::OutOfScope(ScopeReason::DimensionBelowThree(d));
    }
    let sum = c.sum();
    if sum > 3 {
        return Verdict::OutOfScope(ScopeReason::SumAboveThree(sum));
    }
    if let Err(b) = check_basic(c) {
        return Verdict::No(Reason::Basic(b));
    }
    // delta_0 = 1 here, so s is defined
    if let Ok(Err(v)) = check_stanley(c) {
        return Verdict::No(Reason::Stanley(v));
    }
    if let Err(v) = check_hibi(c) {
        return Verdict::No(Reason::Hibi(v));
    }
    Verdict::Yes
}

/// Every nonnegative sequence of length `d + 1` with `delta_0 = 1` and sum at
/// most `max_sum`, in lexicographic order, with its verdict.
pub fn enumerate_candidates(d: usize, max_sum: u64) -> Vec<(CandidateDelta, Verdict)> {
    let mut out = Vec::new();
    let mut current = vec![0i64; d + 1];
    current[0] = 1;
    let budget = max_sum.saturating_sub(1) as i64;
    if max_sum == 0 {
        return out;
    }
    fill(&mut current, 1, budget, &mut out);
    out
}

fn fill(current: &mut Vec<i64>, pos: usize, left: i64, out: &mut Vec<(CandidateDelta, Verdict)>) {
    if pos == current.len() {
        let c = CandidateDelta(current.clone());
        let v = is_realizable(&c);
        out.push((c, v));
        return;
    }
    for v in 0..=left {
        current[pos] = v;
        fill(current, pos + 1, left - v, out);
    }
    current[pos] = 0;
}
