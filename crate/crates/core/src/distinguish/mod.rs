//! Distinguishing long factors that start in `p` from every other factor of
//! `p tau(phi(s))`, by refining classes of possibly equal factors.

mod refine;
mod template;

pub use refine::{
    minus_one_positions, refine_classes, resolve_residual_pairs, short_start_powers, verify_short_start_powers, PairResolution, PositionClasses,
    RefineOutcome, Refiner, DISTINGUISH_LEN,
};
pub use template::{PositionSet, Template};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter of the symbolic template: an integer, or `n + d` for a symbol
/// `n` that is independent at every occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolicLetter {
    Concrete(i64),
    Offset(u8),
}

impl SymbolicLetter {
    pub fn offset(d: u8) -> Result<Self> {
        if (1..=3).contains(&d) {
            Ok(Self::Offset(d))
        } else {
            Err(Error::Unsupported(format!("offset {d} outside 1..=3")))
        }
    }
}

impl fmt::Display for SymbolicLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Concrete(c) => write!(f, "{c}"),
            Self::Offset(d) => write!(f, "(n+{d})"),
        }
    }
}

/// The finite set of values a symbol may take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamDomain {
    values: BTreeSet<i64>,
}

impl ParamDomain {
    pub fn new(values: impl IntoIterator<Item = i64>) -> Result<Self> {
        let values: BTreeSet<i64> = values.into_iter().collect();
        if values.is_empty() {
            return Err(Error::Parse("parameter domain must be nonempty".into()));
        }
        Ok(Self { values })
    }

    pub fn range(lo: i64, hi: i64) -> Result<Self> {
        Self::new(lo..=hi)
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().copied()
    }

    pub fn contains(&self, n: i64) -> bool {
        self.values.contains(&n)
    }
}

impl FromStr for ParamDomain {
    type Err = Error;

    /// Accepts `lo..hi` (inclusive) or a comma-separated list.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        match s.split_once("..") {
            Some((lo, hi)) => Self::range(num(lo)?, num(hi.trim_start_matches('='))?),
            None => Self::new(s.split(',').map(num).collect::<Result<Vec<_>>>()?),
        }
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The integers a letter can take for symbol values in `n`.
pub fn x_set(a: SymbolicLetter, n: &ParamDomain) -> BTreeSet<i64> {
    match a {
        SymbolicLetter::Concrete(c) => BTreeSet::from([c]),
        SymbolicLetter::Offset(d) => n.values().map(|v| v + d as i64).collect(),
    }
}

/// True iff some substitution of values from `n` makes the letters equal.
pub fn possibly_equal(a: SymbolicLetter, b: SymbolicLetter, n: &ParamDomain) -> bool {
    !x_set(a, n).is_disjoint(&x_set(b, n))
}
