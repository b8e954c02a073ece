//! Asymptotic records shared by the system and critical-point solvers.

use crate::arith::{format_rat, Int, Rat};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coordinate of an extended covector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Finite(Rat),
    Infinite,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Finite(x) => write!(f, "{}", format_rat(x)),
            Entry::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsymptoticClass {
    Internal,
    SemiInternal,
    Raised,
    Dropped,
}

impl fmt::Display for AsymptoticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AsymptoticClass::Internal => "internal",
            AsymptoticClass::SemiInternal => "semi-internal",
            AsymptoticClass::Raised => "raised",
            AsymptoticClass::Dropped => "dropped",
        };
        f.write_str(s)
    }
}

/// Asymptotic covector with its class and multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticRecord {
    pub covector: Vec<Entry>,
    pub class: AsymptoticClass,
    pub multiplicity: Int,
    /// Coordinates spanning the subspace whose subproblem produced the record.
    pub subspace: Vec<usize>,
    /// Base asymptotic on the subspace for raised and dropped records.
    pub base: Option<Vec<Entry>>,
}

impl AsymptoticRecord {
    pub fn finite(v: &[Rat], class: AsymptoticClass, multiplicity: Int, subspace: Vec<usize>) -> Self {
        AsymptoticRecord {
            covector: v.iter().cloned().map(Entry::Finite).collect(),
            class,
            multiplicity,
            subspace,
            base: None,
        }
    }

    pub fn covector_string(&self) -> String {
        let parts: Vec<String> = self.covector.iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Sorts records lexicographically by covector.
pub fn sort_records(records: &mut [AsymptoticRecord]) {
    records.sort_by(|a, b| a.covector.cmp(&b.covector).then_with(|| a.class.cmp(&b.class)));
}

/// Parses `"p/q"`, `"p"` or `"inf"`.
pub fn parse_entry(s: &str) -> Option<Entry> {
    if s.trim() == "inf" {
        Some(Entry::Infinite)
    } else {
        crate::arith::parse_rat(s).map(Entry::Finite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn infinite_sorts_last() {
        assert!(Entry::Finite(rat(1000, 1)) < Entry::Infinite);
        assert_eq!(parse_entry("inf"), Some(Entry::Infinite));
        assert_eq!(Entry::Finite(rat(3, 6)).to_string(), "1/2");
    }
}
