//! Class refinement over growing factor lengths.

use std::collections::BTreeMap;

use crate::distinguish::template::{Template, PERIOD};
use crate::distinguish::{ParamDomain, SymbolicLetter};
use crate::morphic::canonical::{CanonicalWords, PHI_Z_END, P_LEN};
use crate::morphic::table::K;
use crate::word::{Letter, PowerWitness};

/// Factor length beyond which factors starting in `p` are unique.
pub const DISTINGUISH_LEN: usize = 952;

/// Classes of starting positions whose length-`length` factors are possibly
/// equal. Classes may overlap, since a symbolic letter joins every subclass
/// it can match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionClasses {
    pub length: usize,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefineOutcome {
    /// True if every class became a singleton.
    pub terminated: bool,
    pub classes: PositionClasses,
}

pub struct Refiner<'t> {
    template: &'t Template,
    domain: ParamDomain,
    length: usize,
    classes: Vec<Vec<usize>>,
}

impl<'t> Refiner<'t> {
    pub fn new(template: &'t Template, positions: &[usize], domain: ParamDomain) -> Self {
        let mut start: Vec<usize> = positions.to_vec();
        start.sort_unstable();
        start.dedup();
        let classes = if start.len() >= 2 { vec![start] } else { Vec::new() };
        Self { template, domain, length: 0, classes }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_done(&self) -> bool {
        self.classes.is_empty()
    }

    /// Extends every factor by one letter and splits the classes.
    pub fn step(&mut self) {
        let offset = self.length;
        self.length += 1;
        let mut next = Vec::new();
        for class in &self.classes {
            let mut split: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for &i in class {
                match self.template.letter(i, offset) {
                    SymbolicLetter::Concrete(c) => split.entry(c).or_default().push(i),
                    SymbolicLetter::Offset(d) => {
                        for n in self.domain.values() {
                            split.entry(n + d as i64).or_default().push(i);
                        }
                    }
                }
            }
            next.extend(split.into_values().filter(|c| c.len() >= 2));
        }
        next.sort_unstable();
        next.dedup();
        self.classes = next;
    }

    pub fn snapshot(&self) -> PositionClasses {
        PositionClasses { length: self.length, classes: self.classes.clone() }
    }
}

/// Refines until all classes are singletons, or until length `stop_at`
/// (default: the template's maximum length).
pub fn refine_classes(
    template: &Template,
    positions: &[usize],
    domain: &ParamDomain,
    stop_at: Option<usize>,
) -> RefineOutcome {
    let limit = stop_at.unwrap_or(template.max_len()).min(template.max_len());
    let mut r = Refiner::new(template, positions, domain.clone());
    while !r.is_done() && r.length() < limit {
        r.step();
    }
    RefineOutcome { terminated: r.is_done(), classes: r.snapshot() }
}

/// How a pair of possibly equal factors was told apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResolution {
    pub pair: (usize, usize),
    /// Offset of a letter pair `c`, `n + d` that forces `n = c - d`.
    pub forced_offset: Option<usize>,
    /// Actual positions whose factor could match, given the forced value.
    pub candidates: Vec<usize>,
    pub distinct: bool,
}

/// Positions of `s` holding a letter with value `-1`.
///
/// Letters of `s` past `z` are images under the morphism of letters with
/// value at least `-1`, so their values are nonnegative.
pub fn minus_one_positions(words: &CanonicalWords) -> Vec<usize> {
    words.z.iter().enumerate().filter(|(_, a)| a.value == -1).map(|(m, _)| m).collect()
}

/// Shows that the factors in each residual class are distinct.
///
/// For a pair `(i, j)` with `i` in `p` and `j` a periodic representative,
/// some offset must pair a concrete `c` with `n + d` where `c - d` is `-1`
/// (or less, which no letter of `s` has). Such a symbol comes from a `-1`
/// letter of `s`, so only finitely many actual positions congruent to `j`
/// remain, and each is compared concretely.
pub fn resolve_residual_pairs(
    template: &Template,
    words: &CanonicalWords,
    classes: &PositionClasses,
) -> Vec<PairResolution> {
    let len = classes.length;
    let minus_one = minus_one_positions(words);
    let max_candidate = P_LEN + K * minus_one.iter().max().copied().unwrap_or(0) + K;
    let full = words.full_word(max_candidate + len + 1);
    let factor = |i: usize| &full[i..i + len];

    let mut out = Vec::new();
    for class in &classes.classes {
        for (a, &i) in class.iter().enumerate() {
            for &j in &class[a + 1..] {
                out.push(resolve_pair(template, &minus_one, &factor, len, i, j));
            }
        }
    }
    out
}

fn resolve_pair<'w>(
    template: &Template,
    minus_one: &[usize],
    factor: &dyn Fn(usize) -> &'w [Letter],
    len: usize,
    i: usize,
    j: usize,
) -> PairResolution {
    let unresolved = PairResolution { pair: (i, j), forced_offset: None, candidates: Vec::new(), distinct: false };
    if j < P_LEN {
        return PairResolution { distinct: factor(i) != factor(j), ..unresolved };
    }
    if i >= P_LEN {
        return unresolved;
    }
    let forced = (0..len).find_map(|o| match (template.letter(i, o), template.letter(j, o)) {
        (SymbolicLetter::Concrete(c), SymbolicLetter::Offset(d)) if c - (d as i64) <= -1 => {
            Some((o, c - d as i64))
        }
        _ => None,
    });
    let Some((o, n)) = forced else {
        return unresolved;
    };
    if n < -1 {
        return PairResolution { forced_offset: Some(o), distinct: true, ..unresolved };
    }
    // The symbol at offset o sits at P + o = |p| + 6m + 5 for a -1 letter s[m].
    let candidates: Vec<usize> = minus_one
        .iter()
        .filter_map(|&m| (P_LEN + K * m + K - 1).checked_sub(o))
        .filter(|&p| p >= P_LEN && (p - P_LEN) % PERIOD == (j - P_LEN) % PERIOD)
        .collect();
    let distinct = candidates.iter().all(|&p| factor(p) != factor(i));
    PairResolution { pair: (i, j), forced_offset: Some(o), candidates, distinct }
}

/// The first 5/4-power `x y x` in `w` with `|x| < max_block` that starts
/// before `start_limit`, ordered by end position and then period.
pub fn short_start_powers(w: &[Letter], start_limit: usize, max_block: usize) -> Option<PowerWitness> {
    let mut best: Option<PowerWitness> = None;
    for l in 1..max_block {
        let period = 4 * l;
        // Matches w[t] == w[t + 4l] for t in start..start + l.
        let t_end = (start_limit + l - 1).min(w.len().saturating_sub(period));
        let mut run = 0;
        for t in 0..t_end {
            if w[t] == w[t + period] {
                run += 1;
                if run >= l {
                    let found = PowerWitness { end: t + period, period };
                    best = Some(best.map_or(found, |b| b.min(found)));
                    break;
                }
            } else {
                run = 0;
            }
        }
    }
    best
}

/// Checks that no 5/4-power with `|x| < 952` starts in `p` inside
/// `p tau(phi(z))`.
pub fn verify_short_start_powers(words: &CanonicalWords) -> Option<PowerWitness> {
    short_start_powers(&words.full_word(PHI_Z_END), P_LEN, DISTINGUISH_LEN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_start_scan_small() {
        // 0 1 1 1 0 holds a 5/4-power starting at 0.
        let w = [0, 1, 1, 1, 0, 2];
        assert_eq!(short_start_powers(&w, 1, 2), Some(PowerWitness { end: 4, period: 4 }));
        assert_eq!(short_start_powers(&w, 1, 1), None);
        let w = [2, 0, 1, 1, 1, 0];
        assert_eq!(short_start_powers(&w, 1, 2), None);
        assert!(short_start_powers(&w, 2, 2).is_some());
    }
}
