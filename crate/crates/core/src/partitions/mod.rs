//! Partitions, signed partitions, and the brute-force laboratory that checks
//! combinatorial interpretations against series coefficients.

pub mod counting;
pub mod crosscheck;
pub mod signed;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use counting::{count_andrews_lewis_9, count_gap2, count_residues, count_s, count_t};
pub use crosscheck::{crosscheck, find_theorem, theorems, CrosscheckReport, CrosscheckRow, Theorem};
pub use signed::{count_signed, enumerate_signed, is_member, SignedClass, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Engine(#[from] crate::identity::EngineError),
}

/// A weakly decreasing tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into weakly decreasing order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Option<Partition> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, if any.
    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// Part value -> multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, part: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == part).count() as u32
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A pair `(positive, negative)` of partitions with weight
/// `|positive| - |negative|`. Negative parts are stored as positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct SignedPartition {
    pub positive: Partition,
    pub negative: Partition,
}

impl SignedPartition {
    pub fn new(positive: Partition, negative: Partition) -> SignedPartition {
        SignedPartition { positive, negative }
    }

    pub fn weight(&self) -> i64 {
        self.positive.weight() as i64 - self.negative.weight() as i64
    }
}

impl fmt::Display for SignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

/// Calls `visit` with every partition of `n` into parts at most `max_part`,
/// parts in weakly decreasing order.
pub fn for_each_partition(n: u32, max_part: u32, visit: &mut impl FnMut(&[u32])) {
    fn go(rest: u32, max_part: u32, acc: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
        if rest == 0 {
            visit(acc);
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            acc.push(p);
            go(rest - p, p, acc, visit);
            acc.pop();
        }
    }
    go(n, max_part, &mut Vec::new(), visit);
}

/// All partitions of `n`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, n, &mut |parts| out.push(Partition { parts: parts.to_vec() }));
    out
}
