//! Word types and fractional-power detection.
//!
//! A word of length `L` is an `a/b`-power with block length `P` exactly when
//! `L * b == P * a` and `w[t] == w[t + P]` for every `t < L - P`. All scans
//! in this crate use that period form rather than materializing `v^{a/b}`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// A letter of a word over the nonnegative integers.
pub type Letter = u32;

/// A finite word over the nonnegative integers.
pub type NatWord = Vec<Letter>;

/// A finite word over the subscripted alphabet.
pub type SubWord = Vec<SubLetter>;

/// The exponent `a/b` of a fractional power, with `gcd(a, b) = 1` and `a > b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FracExponent {
    a: u32,
    b: u32,
}

impl FracExponent {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidExponent { a, b, reason: "denominator must be positive" });
        }
        if a <= b {
            return Err(Error::InvalidExponent { a, b, reason: "exponent must exceed 1" });
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidExponent { a, b, reason: "a and b must be coprime" });
        }
        Ok(Self { a, b })
    }

    pub fn a(self) -> u32 {
        self.a
    }

    pub fn b(self) -> u32 {
        self.b
    }

    /// Block length and total length of the `m`-th smallest power: `(b m, a m)`.
    #[inline]
    pub fn shape(self, m: usize) -> (usize, usize) {
        (self.b as usize * m, self.a as usize * m)
    }
}

impl fmt::Display for FracExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

impl FromStr for FracExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        match s.split_once('/') {
            Some((a, b)) => Self::new(parse(a)?, parse(b)?),
            None => Self::new(parse(s)?, 1),
        }
    }
}

/// A letter `n_j` of the alphabet with eight letter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubLetter {
    pub value: i32,
    subscript: u8,
}

impl SubLetter {
    /// Panics if `subscript >= 8`.
    pub const fn new(value: i32, subscript: u8) -> Self {
        assert!(subscript < 8, "subscript out of range");
        Self { value, subscript }
    }

    pub fn checked(value: i32, subscript: i64) -> Result<Self> {
        if (0..8).contains(&subscript) {
            Ok(Self::new(value, subscript as u8))
        } else {
            Err(Error::InvalidSubscript(subscript))
        }
    }

    pub const fn subscript(self) -> u8 {
        self.subscript
    }
}

impl fmt::Display for SubLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.value, self.subscript)
    }
}

impl FromStr for SubLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (v, j) = s
            .rsplit_once('_')
            .ok_or_else(|| Error::Parse(format!("expected n_j, got {s:?}")))?;
        let v = v.trim_matches(|c| c == '(' || c == ')');
        let value = v.parse::<i32>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let sub = j.parse::<i64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Self::checked(value, sub)
    }
}

/// True if subscripts advance by one modulo 8 from each letter to the next.
pub fn is_subscript_increasing(w: &[SubLetter]) -> bool {
    w.windows(2).all(|p| p[1].subscript == (p[0].subscript + 1) % 8)
}

/// Builds a subscript-increasing word from values, starting at `start`.
pub fn with_subscripts(values: &[i32], start: u8) -> SubWord {
    values
        .iter()
        .enumerate()
        .map(|(t, &v)| SubLetter::new(v, ((start as usize + t) % 8) as u8))
        .collect()
}

/// The `a/b`-power of `v`: `v^{floor(a/b)}` followed by the prefix of `v` of
/// length `|v| * {a/b}`.
pub fn frac_power<T: Clone>(v: &[T], e: FracExponent) -> Result<Vec<T>> {
    let b = e.b as usize;
    if v.is_empty() || !v.len().is_multiple_of(b) {
        return Err(Error::LengthNotDivisible { len: v.len(), divisor: b });
    }
    let len = v.len() / b * e.a as usize;
    Ok(v.iter().cycle().take(len).cloned().collect())
}

/// An `a/b`-power ending at `end` with block length `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PowerWitness {
    pub end: usize,
    pub period: usize,
}

impl PowerWitness {
    pub fn start(&self, e: FracExponent) -> usize {
        let len = self.period / e.b as usize * e.a as usize;
        self.end + 1 - len
    }
}

impl fmt::Display for PowerWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "power with period {} ending at {}", self.period, self.end)
    }
}

/// Block lengths `P` of all `e`-powers that end at position `i`, ascending.
///
/// Each candidate is compared from its last letter backwards and abandoned at
/// the first mismatch.
pub fn power_ending_at<T: PartialEq>(w: &[T], i: usize, e: FracExponent) -> Result<Vec<usize>> {
    if i >= w.len() {
        return Err(Error::IndexOutOfRange { index: i, len: w.len() });
    }
    let mut periods = Vec::new();
    let mut m = 1;
    loop {
        let (period, len) = e.shape(m);
        if len > i + 1 {
            break;
        }
        let start = i + 1 - len;
        let lo = &w[start..=i - period];
        let hi = &w[start + period..=i];
        if lo.iter().rev().zip(hi.iter().rev()).all(|(x, y)| x == y) {
            periods.push(period);
        }
        m += 1;
    }
    Ok(periods)
}

/// The power that ends earliest in `w` (smallest period on ties), if any.
///
/// Scans each block length independently, tracking the current run of
/// positions with `w[t] == w[t + P]`.
pub fn first_power<T: PartialEq + Sync>(w: &[T], e: FracExponent) -> Option<PowerWitness> {
    let max_m = w.len() / e.a as usize;
    (1..=max_m)
        .into_par_iter()
        .filter_map(|m| {
            let (period, len) = e.shape(m);
            let need = len - period;
            let mut run = 0;
            for t in 0..w.len() - period {
                if w[t] == w[t + period] {
                    run += 1;
                    if run >= need {
                        return Some(PowerWitness { end: t + period, period });
                    }
                } else {
                    run = 0;
                }
            }
            None
        })
        .min()
}

pub fn is_power_free<T: PartialEq + Sync>(w: &[T], e: FracExponent) -> bool {
    first_power(w, e).is_none()
}
