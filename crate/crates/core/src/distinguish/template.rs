//! The symbolic reading of `p tau(phi(s))`.
//!
//! Factors starting in `p` are read concretely. A position `i >= |p|` stands
//! for every large position congruent to `i` modulo 48, read from the
//! periodic word `tau(phi(n_2) phi(n_3) ... phi(n_1))` with an independent
//! symbol in every sixth column.

use crate::distinguish::SymbolicLetter;
use crate::error::{Error, Result};
use crate::morphic::canonical::{CanonicalWords, P_LEN, Z_START};
use crate::morphic::table::{ImageValue, K, PHI, TYPES};
use crate::word::Letter;

/// Largest concrete letter the refinement expects.
pub const MAX_CONCRETE: Letter = 5;

/// Length of the symbolic period.
pub const PERIOD: usize = K * TYPES;

/// The two sets of starting positions used for the refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionSet {
    /// `0..|p|` together with `|p|..|p| + 24`.
    S1,
    /// `0..|p|` together with `|p| + 24..|p| + 48`.
    S2,
}

impl PositionSet {
    pub fn positions(self) -> Vec<usize> {
        let tail = match self {
            Self::S1 => P_LEN..P_LEN + 24,
            Self::S2 => P_LEN + 24..P_LEN + 48,
        };
        (0..P_LEN).chain(tail).collect()
    }
}

/// Factor readings up to a fixed maximum length.
#[derive(Debug, Clone)]
pub struct Template {
    concrete: Vec<Letter>,
    max_len: usize,
}

impl Template {
    /// Supports factors of length at most `max_len`.
    ///
    /// Fails unless every letter a factor of that length starting in `p` can
    /// reach lies in `0..=5`, the range the refinement rule is built for.
    pub fn new(words: &CanonicalWords, max_len: usize) -> Result<Self> {
        let concrete = words.full_word(P_LEN + max_len);
        let reach = (P_LEN + max_len).saturating_sub(1);
        if let Some(t) = concrete[..reach].iter().position(|&c| c > MAX_CONCRETE) {
            return Err(Error::Invariant(format!(
                "letter {} at position {t} exceeds {MAX_CONCRETE}",
                concrete[t]
            )));
        }
        Ok(Self { concrete, max_len })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// The prefix of `p tau(phi(s))` read concretely.
    pub fn concrete_word(&self) -> &[Letter] {
        &self.concrete
    }

    /// The symbolic letter at `i` of the periodic tail, for `i >= |p|`.
    pub fn periodic(i: usize) -> SymbolicLetter {
        let o = (i - P_LEN) % PERIOD;
        let row = ((Z_START as usize + o / K) % TYPES) as u8;
        match PHI.image(row)[o % K].value {
            ImageValue::Const(c) => SymbolicLetter::Concrete(c as i64),
            ImageValue::Offset(d) => SymbolicLetter::Offset(d as u8),
        }
    }

    /// The letter at `offset` in the factor starting at `start`.
    ///
    /// Panics if `offset >= max_len`.
    pub fn letter(&self, start: usize, offset: usize) -> SymbolicLetter {
        if start < P_LEN {
            SymbolicLetter::Concrete(self.concrete[start + offset] as i64)
        } else {
            Self::periodic(start + offset)
        }
    }
}
