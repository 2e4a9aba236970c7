//! Greedy construction of the lexicographically least `a/b`-power-free word.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::word::{first_power, FracExponent, Letter, NatWord};

/// Incremental generator for prefixes of `w_{a/b}`.
///
/// For every block length `P = b m` the generator keeps the length of the
/// current run of positions `t` with `w[t] == w[t - P]`. A power of block
/// length `P` ending at the next position `i` needs `a m - P - 1` such
/// positions ending at `i - 1` plus one more at `i`, so the letters ruled out
/// at `i` are exactly the `w[i - P]` whose run is long enough.
#[derive(Debug, Clone)]
pub struct GreedyGenerator {
    e: FracExponent,
    word: NatWord,
    // runs[m - 1] belongs to block length b * m
    runs: Vec<u32>,
    forbidden: Vec<bool>,
}

impl GreedyGenerator {
    pub fn new(e: FracExponent) -> Self {
        Self { e, word: Vec::new(), runs: Vec::new(), forbidden: Vec::new() }
    }

    pub fn exponent(&self) -> FracExponent {
        self.e
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn into_word(self) -> NatWord {
        self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Appends the next letter and returns it.
    pub fn push_next(&mut self) -> Letter {
        let i = self.word.len();
        let (a, b) = (self.e.a() as usize, self.e.b() as usize);
        let w = &self.word;

        // Block lengths with a full power fitting in 0..=i.
        let m_max = (i + 1) / a;
        for m in 1..=m_max {
            let period = b * m;
            let need = (a - b) * m - 1;
            let run = self.runs.get(m - 1).copied().unwrap_or(0);
            if run as usize >= need {
                let c = w[i - period] as usize;
                if c >= self.forbidden.len() {
                    self.forbidden.resize(c + 1, false);
                }
                self.forbidden[c] = true;
            }
        }
        let c = self.forbidden.iter().position(|&f| !f).unwrap_or(self.forbidden.len());
        self.forbidden.iter_mut().for_each(|f| *f = false);
        let c = c as Letter;

        // Block lengths P <= i gain a comparison at position i.
        let p_max = i / b;
        if self.runs.len() < p_max {
            self.runs.resize(p_max, 0);
        }
        for (m, run) in self.runs[..p_max].iter_mut().enumerate() {
            let period = b * (m + 1);
            if w[i - period] == c {
                *run += 1;
            } else {
                *run = 0;
            }
        }
        self.word.push(c);
        c
    }

    /// Extends the word to length `n` (no-op if already that long).
    pub fn extend_to(&mut self, n: usize) {
        self.word.reserve(n.saturating_sub(self.word.len()));
        while self.word.len() < n {
            self.push_next();
        }
    }
}

/// The length-`n` prefix of `w_{a/b}`.
pub fn generate(e: FracExponent, n: usize) -> NatWord {
    let mut g = GreedyGenerator::new(e);
    g.extend_to(n);
    g.into_word()
}

/// True if `w[..i]` followed by `c` ends with an `e`-power.
///
/// Compares from the end of each candidate factor and stops at the first
/// mismatch.
pub fn creates_power(w: &[Letter], i: usize, c: Letter, e: FracExponent) -> bool {
    let mut m = 1;
    loop {
        let (period, len) = e.shape(m);
        if len > i + 1 {
            return false;
        }
        if w[i - period] == c {
            let start = i + 1 - len;
            if (start..i - period).rev().all(|t| w[t] == w[t + period]) {
                return true;
            }
        }
        m += 1;
    }
}

/// Checks that no letter of `w` can be lowered without creating an
/// `e`-power ending at that position.
///
/// Returns the first `(position, letter)` that could be used instead, if
/// any. Fails if `w` itself contains an `e`-power.
pub fn verify_lex_least(w: &[Letter], e: FracExponent) -> Result<Option<(usize, Letter)>> {
    if let Some(witness) = first_power(w, e) {
        return Err(Error::NotPowerFree(witness.to_string()));
    }
    Ok((0..w.len())
        .into_par_iter()
        .filter_map(|i| (0..w[i]).find(|&c| !creates_power(w, i, c, e)).map(|c| (i, c)))
        .min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{is_power_free, power_ending_at};

    fn e(a: u32, b: u32) -> FracExponent {
        FracExponent::new(a, b).unwrap()
    }

    fn text(w: &[Letter]) -> String {
        w.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn known_prefixes() {
        assert_eq!(text(&generate(e(5, 4), 32)), "00001111020210100101121200001311");
        assert_eq!(text(&generate(e(2, 1), 32)), "01020103010201040102010301020105");
        assert_eq!(
            text(&generate(e(3, 2), 43)),
            "0011021001120011031001130011021001140011031"
        );
    }

    // Naive greedy: smallest letter whose addition creates no power ending there.
    fn naive(e: FracExponent, n: usize) -> NatWord {
        let mut w: NatWord = Vec::new();
        for i in 0..n {
            let mut c = 0;
            loop {
                w.push(c);
                if power_ending_at(&w, i, e).unwrap().is_empty() {
                    break;
                }
                w.pop();
                c += 1;
            }
        }
        w
    }

    #[test]
    fn matches_naive_greedy() {
        for (a, b) in [(2, 1), (3, 2), (5, 4), (7, 6), (7, 5), (10, 7)] {
            let ex = e(a, b);
            assert_eq!(generate(ex, 600), naive(ex, 600), "exponent {ex}");
        }
    }

    #[test]
    fn incremental_extension_is_prefix_stable() {
        let mut g = GreedyGenerator::new(e(5, 4));
        g.extend_to(100);
        let short = g.word().to_vec();
        g.extend_to(500);
        assert_eq!(&g.word()[..100], &short[..]);
        assert!(is_power_free(g.word(), e(5, 4)));
    }

    #[test]
    fn lex_least_small_cases() {
        assert_eq!(verify_lex_least(&[0, 1], e(2, 1)).unwrap(), None);
        assert_eq!(verify_lex_least(&[0, 2], e(2, 1)).unwrap(), Some((1, 1)));
        assert!(verify_lex_least(&[0, 0], e(2, 1)).is_err());
    }
}
