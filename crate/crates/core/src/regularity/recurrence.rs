//! Recurrences of the form `w(K i + R) = w(i + S) + D(i)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::greedy::generate;
use crate::morphic::access::{RECURRENCE_R, RECURRENCE_S};
use crate::morphic::table::PHI;
use crate::regularity::kernel::IndexedSequence;
use crate::word::FracExponent;

/// An increment map: explicit values for the first few `i`, then periodic
/// in `i` with the given period (indexed by `i mod period.len()`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Increment {
    pub initial: Vec<i64>,
    pub period: Vec<i64>,
}

impl Increment {
    pub fn constant(d: i64) -> Self {
        Self { initial: Vec::new(), period: vec![d] }
    }

    pub fn periodic(period: Vec<i64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse("increment period must be nonempty".into()));
        }
        Ok(Self { initial: Vec::new(), period })
    }

    pub fn at(&self, i: u64) -> i64 {
        match self.initial.get(i as usize) {
            Some(&d) => d,
            None => self.period[(i % self.period.len() as u64) as usize],
        }
    }
}

impl FromStr for Increment {
    type Err = Error;

    /// Comma-separated period values, e.g. `3,2,3,2,1,2,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let period = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::periodic(period)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    pub k: u64,
    pub r: u64,
    pub s: u64,
    pub d: Increment,
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({} i + {}) = w(i + {}) + D(i)", self.k, self.r, self.s)
    }
}

/// A failing index with both sides of the recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecurrenceFailure {
    pub i: u64,
    pub lhs: i64,
    pub rhs: i64,
}

impl Recurrence {
    /// Largest `i` whose left side lies within `n` letters.
    pub fn max_index(&self, n: u64) -> Option<u64> {
        (n > self.r).then(|| (n - 1 - self.r) / self.k)
    }

    /// Checks `0 <= i <= i_max`; returns the first failure.
    pub fn verify<S: IndexedSequence + ?Sized>(&self, w: &S, i_max: u64) -> Result<Option<RecurrenceFailure>> {
        if let Some(n) = w.available() {
            if self.max_index(n).is_none_or(|m| m < i_max) {
                return Err(Error::IndexOutOfRange {
                    index: (self.k * i_max + self.r) as usize,
                    len: n as usize,
                });
            }
        }
        Ok((0..=i_max)
            .into_par_iter()
            .filter_map(|i| {
                let lhs = w.at(self.k * i + self.r);
                let rhs = w.at(i + self.s) + self.d.at(i);
                (lhs != rhs).then_some(RecurrenceFailure { i, lhs, rhs })
            })
            .min_by_key(|f| f.i))
    }
}

/// A named recurrence, with the exponent whose greedy word it describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub exponent: FracExponent,
    pub recurrence: Recurrence,
}

/// The self-similar column of `w_{5/4}`.
pub fn five_fourths_recurrence() -> Recurrence {
    Recurrence {
        k: 6,
        r: RECURRENCE_R,
        s: RECURRENCE_S,
        d: Increment::periodic(PHI.increments().iter().map(|&x| x as i64).collect()).expect("nonempty"),
    }
}

pub fn presets() -> Vec<Preset> {
    let simple = |name, a, b, k, r, d| Preset {
        name,
        exponent: FracExponent::new(a, b).expect("valid exponent"),
        recurrence: Recurrence { k, r, s: 0, d: Increment::constant(d) },
    };
    vec![
        Preset {
            name: "5/4",
            exponent: FracExponent::new(5, 4).expect("valid exponent"),
            recurrence: five_fourths_recurrence(),
        },
        simple("7/6", 7, 6, 41190, 41201, 3),
        simple("8/7", 8, 7, 340, 52670, 3),
        simple("9/7", 9, 7, 44, 2701, 2),
        Preset {
            name: "10/7",
            exponent: FracExponent::new(10, 7).expect("valid exponent"),
            recurrence: Recurrence { k: 26, r: 428, s: 0, d: Increment { initial: vec![0], period: vec![1] } },
        },
        simple("15/8", 15, 8, 22763, 22850, 2),
        simple("7/5", 7, 5, 80874, 173978, 1),
    ]
}

pub fn preset(name: &str) -> Result<Preset> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::Unsupported(format!("no recurrence preset named {name:?}")))
}

/// Outcome of testing a preset against a generated prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub name: &'static str,
    pub letters: usize,
    /// `None` when the prefix is too short to test even `i = 0`.
    pub i_max: Option<u64>,
    pub failure: Option<RecurrenceFailure>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.i_max.is_some() && self.failure.is_none()
    }
}

/// Generates `budget` letters of the greedy word and checks the preset on
/// every index it reaches.
pub fn check_preset(p: &Preset, budget: usize) -> Result<ConjectureReport> {
    let w = generate(p.exponent, budget);
    let i_max = p.recurrence.max_index(budget as u64);
    let failure = match i_max {
        Some(m) => p.recurrence.verify(&w, m)?,
        None => None,
    };
    Ok(ConjectureReport { name: p.name, letters: budget, i_max, failure })
}
