//! Numeral systems: one numeral per number of a contiguous range.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::{ExprError, Morpheme, NumeralExpr};

/// Inclusive range of numbers, `1 <= lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NumberRange {
    lo: u32,
    hi: u32,
}

impl NumberRange {
    pub fn new(lo: u32, hi: u32) -> Option<Self> {
        (lo >= 1 && lo <= hi).then_some(NumberRange { lo, hi })
    }

    pub fn lo(self) -> u32 {
        self.lo
    }

    pub fn hi(self) -> u32 {
        self.hi
    }

    pub fn len(self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, n: u32) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    pub fn iter(self) -> impl DoubleEndedIterator<Item = u32> {
        self.lo..=self.hi
    }

    pub fn index(self, n: u32) -> Option<usize> {
        self.contains(n).then(|| (n - self.lo) as usize)
    }
}

impl Default for NumberRange {
    fn default() -> Self {
        NumberRange { lo: 1, hi: 99 }
    }
}

impl fmt::Display for NumberRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expected a range `lo:hi` with 1 <= lo <= hi, got `{0}`")]
pub struct RangeParseError(pub String);

impl core::str::FromStr for NumberRange {
    type Err = RangeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_once(':')
            .and_then(|(lo, hi)| NumberRange::new(lo.trim().parse().ok()?, hi.trim().parse().ok()?))
            .ok_or_else(|| RangeParseError(String::from(s)))
    }
}

/// Where a system came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Natural,
    Baseline,
    Ga,
    Local,
    Manual,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Natural => "natural",
            Source::Baseline => "baseline",
            Source::Ga => "ga",
            Source::Local => "local",
            Source::Manual => "manual",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Source {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "natural" => Source::Natural,
            "baseline" => Source::Baseline,
            "ga" => Source::Ga,
            "local" => Source::Local,
            "manual" => Source::Manual,
            _ => return Err(()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("expected {expected} entries for range {range}, got {got}")]
    WrongLength { range: NumberRange, expected: usize, got: usize },
    #[error("numeral `{numeral}` for {number} evaluates to {value}")]
    ValueMismatch { number: u32, value: u64, numeral: NumeralExpr },
    #[error("numeral for {number}: {source}")]
    Expr { number: u32, source: ExprError },
}

/// Total map from every number of `range` to a numeral evaluating to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumeralSystem {
    label: String,
    source: Source,
    range: NumberRange,
    entries: Vec<NumeralExpr>,
}

impl NumeralSystem {
    /// `entries[i]` is the numeral for `range.lo() + i`.
    pub fn new(label: impl Into<String>, source: Source, range: NumberRange, entries: Vec<NumeralExpr>) -> Result<Self, SystemError> {
        if entries.len() != range.len() {
            return Err(SystemError::WrongLength { range, expected: range.len(), got: entries.len() });
        }
        for (number, e) in range.iter().zip(&entries) {
            let value = e.evaluate().map_err(|source| SystemError::Expr { number, source })?;
            if value != u64::from(number) {
                return Err(SystemError::ValueMismatch { number, value, numeral: e.clone() });
            }
        }
        Ok(NumeralSystem { label: label.into(), source, range, entries })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn range(&self) -> NumberRange {
        self.range
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn get(&self, n: u32) -> Option<&NumeralExpr> {
        self.range.index(n).map(|i| &self.entries[i])
    }

    pub fn entries(&self) -> &[NumeralExpr] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &NumeralExpr)> {
        self.range.iter().zip(&self.entries)
    }

    /// Linearized token sequences, one per number.
    pub fn words(&self) -> Vec<Vec<Morpheme>> {
        self.entries.iter().map(NumeralExpr::linearize).collect()
    }
}
