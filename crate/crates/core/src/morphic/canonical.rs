//! The words `p`, `z` and `s` describing `w_{5/4}`, built from the greedy
//! prefix and checked against their known properties.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::greedy::generate;
use crate::morphic::table::{K, PHI};
use crate::word::{FracExponent, Letter, NatWord, SubLetter, SubWord};

pub const P_LEN: usize = 6764;
pub const Z_LEN: usize = 20226;
/// Length of the greedy prefix kept in memory.
pub const PREFIX_LEN: usize = 331040;
/// Subscript of the first letter of `z`.
pub const Z_START: u8 = 2;
/// `|p| + 6|z|`, where `tau(phi^2(s))` begins.
pub const PHI_Z_END: usize = P_LEN + K * Z_LEN;
/// Length of the common suffix of `p` and `tau(z)`.
pub const COMMON_SUFFIX: usize = 844;

const Z_HEAD: [(i32, u8); 12] = [
    (0, 2), (0, 3), (3, 4), (0, 5), (1, 6), (1, 7), (-1, 0), (2, 1), (0, 2), (2, 3), (2, 4), (0, 5),
];
const Z_TAIL: [(i32, u8); 12] = [
    (0, 0), (1, 1), (0, 2), (0, 3), (1, 4), (2, 5), (1, 6), (2, 7), (0, 0), (0, 1), (0, 2), (3, 3),
];

/// The alphabet of `z`.
pub const Z_ALPHABET: [(i32, u8); 32] = [
    (-1, 0), (-1, 2), (0, 0), (0, 1), (0, 2), (0, 3), (0, 5), (0, 7),
    (1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7),
    (2, 1), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7),
    (3, 1), (3, 3), (3, 4), (3, 5), (3, 6), (3, 7),
    (4, 1), (4, 3), (4, 5), (4, 7),
];

/// Position of the last letter of `z` with value `-1`.
pub const Z_LAST_MINUS_ONE: usize = 80;

fn letters(pairs: &[(i32, u8)]) -> SubWord {
    pairs.iter().map(|&(v, j)| SubLetter::new(v, j)).collect()
}

#[derive(Debug, Clone)]
pub struct CanonicalWords {
    pub p: NatWord,
    pub z: SubWord,
    pub greedy_prefix: NatWord,
}

impl CanonicalWords {
    /// Builds the words from a freshly generated greedy prefix.
    pub fn build() -> Result<Self> {
        let e = FracExponent::new(5, 4).expect("5/4 is a valid exponent");
        Self::from_prefix(generate(e, PREFIX_LEN))
    }

    /// Builds the words from a supplied greedy prefix of length at least
    /// `|p| + 6|z|`.
    pub fn from_prefix(greedy_prefix: NatWord) -> Result<Self> {
        if greedy_prefix.len() < PHI_Z_END {
            return Err(Error::Invariant(format!(
                "prefix of length {} is shorter than {PHI_Z_END}",
                greedy_prefix.len()
            )));
        }
        let p = greedy_prefix[..P_LEN].to_vec();
        let z = PHI.desubstitute(&greedy_prefix[P_LEN..PHI_Z_END], Z_START)?;
        let words = Self { p, z, greedy_prefix };
        words.validate()?;
        Ok(words)
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        let z = &self.z;
        if z.len() != Z_LEN || self.p.len() != P_LEN {
            return fail(format!("lengths |p| = {}, |z| = {}", self.p.len(), z.len()));
        }
        if z[..Z_HEAD.len()] != letters(&Z_HEAD)[..] {
            return fail("z has the wrong first letters".into());
        }
        if z[Z_LEN - Z_TAIL.len()..] != letters(&Z_TAIL)[..] {
            return fail("z has the wrong last letters".into());
        }
        let image: Vec<i64> = self.z.iter().flat_map(|&a| PHI.apply_letter(a)).map(|a| a.value as i64).collect();
        let target = self.greedy_prefix[P_LEN..PHI_Z_END].iter().map(|&c| c as i64);
        if !image.iter().copied().eq(target) {
            return fail("tau(phi(z)) differs from the greedy prefix".into());
        }
        let p_tail = self.p[P_LEN - COMMON_SUFFIX..].iter().map(|&c| c as i64);
        let z_tail = z[Z_LEN - COMMON_SUFFIX..].iter().map(|a| a.value as i64);
        if !p_tail.eq(z_tail) {
            return fail(format!("length-{COMMON_SUFFIX} suffixes of p and tau(z) differ"));
        }
        let alphabet: BTreeSet<SubLetter> = z.iter().copied().collect();
        let expected: BTreeSet<SubLetter> = letters(&Z_ALPHABET).into_iter().collect();
        if alphabet != expected {
            return fail(format!("z has a {}-letter alphabet different from the expected one", alphabet.len()));
        }
        let last = z.iter().rposition(|a| a.value == -1);
        if last != Some(Z_LAST_MINUS_ONE) {
            return fail(format!("last -1 letter of z at {last:?}"));
        }
        Ok(())
    }

    /// The shared instance, built on first use.
    ///
    /// Panics if the construction fails its checks.
    pub fn shared() -> &'static CanonicalWords {
        static WORDS: OnceLock<CanonicalWords> = OnceLock::new();
        WORDS.get_or_init(|| Self::build().expect("canonical words failed validation"))
    }

    /// The length-`n` prefix of `s = z phi(z) phi^2(z) ...`.
    pub fn s_stream(&self, n: usize) -> SubWord {
        let mut s = Vec::with_capacity(n);
        s.extend_from_slice(&self.z[..n.min(Z_LEN)]);
        let mut src = 0;
        while s.len() < n {
            let img = PHI.apply_letter(s[src]);
            let take = (n - s.len()).min(K);
            s.extend_from_slice(&img[..take]);
            src += 1;
        }
        s
    }

    /// The length-`n` prefix of `p tau(phi(s))`.
    pub fn full_word(&self, n: usize) -> NatWord {
        let mut w: NatWord = self.p[..n.min(P_LEN)].to_vec();
        if n > P_LEN {
            let s = self.s_stream((n - P_LEN).div_ceil(K));
            for &a in &s {
                for c in 0..K {
                    if w.len() == n {
                        break;
                    }
                    w.push(PHI.tau_letter(a, c) as Letter);
                }
            }
        }
        w
    }

    /// `s[m]`, found by walking back through the images that produce it.
    pub fn s_letter(&self, m: u64) -> SubLetter {
        // The chain of (column) choices from m back into z.
        let mut columns = Vec::new();
        let mut m = m;
        while m >= Z_LEN as u64 {
            let t = m - Z_LEN as u64;
            columns.push((t % K as u64) as usize);
            m = t / K as u64;
        }
        let mut a = self.z[m as usize];
        for &c in columns.iter().rev() {
            a = PHI.apply_letter(a)[c];
        }
        a
    }

    /// `w_{5/4}(i)` read off the morphic description (no greedy prefix).
    pub fn morphic_letter(&self, i: u64) -> Letter {
        if i < P_LEN as u64 {
            return self.p[i as usize];
        }
        let t = i - P_LEN as u64;
        PHI.tau_letter(self.s_letter(t / K as u64), (t % K as u64) as usize) as Letter
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_subscripted;

    #[test]
    fn rejects_short_prefix() {
        assert!(matches!(CanonicalWords::from_prefix(vec![0; 100]), Err(Error::Invariant(_))));
    }

    #[test]
    fn rejects_corrupted_prefix() {
        let e = FracExponent::new(5, 4).unwrap();
        let mut w = generate(e, PHI_Z_END);
        assert!(CanonicalWords::from_prefix(w.clone()).is_ok());
        w[P_LEN + 7] += 1;
        assert!(matches!(
            CanonicalWords::from_prefix(w),
            Err(Error::ColumnMismatch { block: 1, column: 1, .. })
        ));
    }

    #[test]
    fn alternative_preimage_start() {
        let e = FracExponent::new(5, 4).unwrap();
        let w = generate(e, P_LEN + 30);
        let u = PHI.desubstitute(&w[P_LEN..P_LEN + 30], 6).unwrap();
        assert_eq!(u, parse_subscripted("2_6 0_7 1_0 0_1 -1_2").unwrap());
    }
}
