//! Pre-5/4-powers: words whose image under the morphism is a 5/4-power.

mod gamma;
mod locate;

pub use gamma::{derive_gamma, GammaSet, GAMMA};
pub use locate::locates_length;

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::morphic::CanonicalWords;
use crate::word::{first_power, FracExponent, PowerWitness, SubLetter};

/// True iff the two letters have the same image.
///
/// With `a = n_i` and `b = m_j` this holds when `i - j` is `-4`, `0` or `4`
/// and `n - m` is `(i - j) / 2` for even `i`, `0` for odd `i`.
pub fn phi_image_equal(a: SubLetter, b: SubLetter) -> bool {
    let (i, j) = (a.subscript() as i32, b.subscript() as i32);
    let diff = i - j;
    if !matches!(diff, -4 | 0 | 4) {
        return false;
    }
    let expected = if i % 2 == 0 { diff / 2 } else { 0 };
    a.value - b.value == expected
}

/// A representative of the letters with the same image as `a`.
///
/// Rows `j` and `j + 4` of the morphism share their constant columns, so
/// `n_{j+4}` is identified with `(n - 2)_j` for even `j` and `n_j` for odd `j`.
pub fn image_class(a: SubLetter) -> SubLetter {
    let j = a.subscript();
    match (j >= 4, j.is_multiple_of(2)) {
        (false, _) => a,
        (true, true) => SubLetter::new(a.value - 2, j - 4),
        (true, false) => SubLetter::new(a.value, j - 4),
    }
}

/// Relation between the subscripts of `x` and `x'` in a pre-power `x y x'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrePowerKind {
    SubscriptsEqual,
    SubscriptsDifferBy4,
}

/// A factor `x y x'` of length `5 * block` starting at `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrePowerWitness {
    pub start: usize,
    pub block: usize,
    pub kind: PrePowerKind,
}

impl fmt::Display for PrePowerWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pre-5/4-power at {} with |x| = {} ({:?})", self.start, self.block, self.kind)
    }
}

pub fn is_pre_power(w: &[SubLetter]) -> Result<bool> {
    if w.is_empty() || !w.len().is_multiple_of(5) {
        return Err(Error::LengthNotDivisible { len: w.len(), divisor: 5 });
    }
    let l = w.len() / 5;
    Ok((0..l).all(|t| phi_image_equal(w[t], w[t + 4 * l])))
}

/// All pre-5/4-powers in `w` with `|x| <= l_max` (default: all lengths),
/// sorted by start and then block length.
///
/// For each block length the scan walks the word once, tracking the run of
/// positions `t` whose letters have the same image as the letters at `t + 4l`.
pub fn scan_pre_powers(w: &[SubLetter], l_max: Option<usize>) -> Vec<PrePowerWitness> {
    let keys: Vec<u64> = w
        .iter()
        .map(|&a| {
            let c = image_class(a);
            ((c.value as u32 as u64) << 3) | c.subscript() as u64
        })
        .collect();
    let l_max = l_max.unwrap_or(usize::MAX).min(w.len() / 5);
    let mut found: Vec<PrePowerWitness> = (1..=l_max)
        .into_par_iter()
        .flat_map_iter(|l| {
            let period = 4 * l;
            let mut hits = Vec::new();
            let mut run = 0;
            for t in 0..w.len() - period {
                if keys[t] == keys[t + period] {
                    run += 1;
                    if run >= l {
                        let start = t + 1 - l;
                        let kind = if w[start].subscript() == w[start + period].subscript() {
                            PrePowerKind::SubscriptsEqual
                        } else {
                            PrePowerKind::SubscriptsDifferBy4
                        };
                        hits.push(PrePowerWitness { start, block: l, kind });
                    }
                } else {
                    run = 0;
                }
            }
            hits
        })
        .collect();
    found.sort_unstable();
    found
}

/// The first 5/4-power in the length-`n` prefix of the morphic word.
pub fn verify_power_free_prefix(words: &CanonicalWords, n: usize) -> Option<PowerWitness> {
    let e = FracExponent::new(5, 4).expect("valid exponent");
    first_power(&words.full_word(n), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_subscripted;

    fn sub(s: &str) -> Vec<SubLetter> {
        parse_subscripted(s).unwrap()
    }

    #[test]
    fn image_equality_examples() {
        assert!(phi_image_equal(SubLetter::new(0, 0), SubLetter::new(2, 4)));
        assert!(phi_image_equal(SubLetter::new(5, 1), SubLetter::new(5, 5)));
        assert!(!phi_image_equal(SubLetter::new(0, 0), SubLetter::new(0, 4)));
    }

    #[test]
    fn pre_power_examples() {
        assert!(is_pre_power(&sub("0_0 7_1 -3_2 2_3 2_4")).unwrap());
        assert!(!is_pre_power(&sub("0_0 7_1 -3_2 2_3 0_4")).unwrap());
        assert!(!is_pre_power(&sub("0_1 7_2 -3_3 2_4 2_5")).unwrap());
        assert!(is_pre_power(&sub("0_0 1_1")).is_err());
    }

    #[test]
    fn scan_finds_single_witness() {
        let w = sub("0_0 1_1 1_2 1_3 2_4");
        assert_eq!(
            scan_pre_powers(&w, None),
            vec![PrePowerWitness { start: 0, block: 1, kind: PrePowerKind::SubscriptsDifferBy4 }]
        );
        assert!(scan_pre_powers(&w, Some(0)).is_empty());
    }
}
