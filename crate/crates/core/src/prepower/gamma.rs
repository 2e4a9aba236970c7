//! The letters whose images can start short 5/4-powers.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::morphic::table::{ImageValue, K, PHI, TYPES};
use crate::word::SubLetter;

/// The forbidden letters, as `(value, subscript)`.
pub const GAMMA: [(i32, u8); 16] = [
    (-3, 0), (-3, 2), (-2, 0), (-2, 1), (-2, 2), (-2, 3), (-2, 5), (-2, 7),
    (-1, 1), (-1, 3), (-1, 4), (-1, 5), (-1, 6), (-1, 7), (0, 4), (0, 6),
];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GammaSet {
    pub letters: BTreeSet<SubLetter>,
}

impl GammaSet {
    pub fn expected() -> Self {
        Self { letters: GAMMA.iter().map(|&(v, j)| SubLetter::new(v, j)).collect() }
    }

    pub fn contains(&self, a: SubLetter) -> bool {
        self.letters.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for GammaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Rows `j` whose last image letter is `(n + d)_i`.
fn rows_ending_with(d: i32, i: u8) -> Vec<u8> {
    (0..TYPES as u8)
        .filter(|&j| {
            let last = PHI.image(j)[K - 1];
            last.subscript == i && last.value == ImageValue::Offset(d)
        })
        .collect()
}

/// Slides windows of length `5l`, `l in {2, 4}`, circularly through
/// `phi(n_0) phi(n_1) ... phi(n_7)` with a fresh symbol `n` per image, and
/// collects every letter `n_j` whose value makes a window's first and last
/// `l` letters agree at a symbolic position.
///
/// Fails if some window is a 5/4-power with no symbol involved, since no
/// choice of forbidden letters could then prevent it.
pub fn derive_gamma() -> Result<GammaSet> {
    let circ: Vec<_> = (0..TYPES as u8).flat_map(|j| *PHI.image(j)).collect();
    let at = |p: usize| circ[p % circ.len()];
    let mut letters = BTreeSet::new();
    for l in [2, 4] {
        'window: for start in 0..circ.len() {
            let mut solutions = Vec::new();
            for t in 0..l {
                let (x, y) = (at(start + t), at(start + 4 * l + t));
                if x.subscript != y.subscript {
                    continue 'window;
                }
                match (x.value, y.value) {
                    (ImageValue::Const(a), ImageValue::Const(b)) if a != b => continue 'window,
                    (ImageValue::Const(_), ImageValue::Const(_)) => {}
                    (ImageValue::Offset(d), ImageValue::Const(c)) | (ImageValue::Const(c), ImageValue::Offset(d)) => {
                        for j in rows_ending_with(d, x.subscript) {
                            solutions.push(SubLetter::new(c - d, j));
                        }
                    }
                    (ImageValue::Offset(_), ImageValue::Offset(_)) => {
                        return Err(Error::Unsupported(format!(
                            "two symbolic letters compared in window at {start} with l = {l}"
                        )));
                    }
                }
            }
            if solutions.is_empty() {
                return Err(Error::Invariant(format!("constant 5/4-power in window at {start} with l = {l}")));
            }
            letters.extend(solutions);
        }
    }
    Ok(GammaSet { letters })
}
