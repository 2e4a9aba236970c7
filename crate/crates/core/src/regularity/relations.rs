//! Linear relations among kernel sequences of `w_{5/4}`.

use std::fmt;

use rayon::prelude::*;

use crate::regularity::generators::Generator;
use crate::regularity::kernel::IndexedSequence;
use crate::regularity::KernelIndex;

/// `sum coeff * g(i) = 0` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Generator)>,
}

impl Relation {
    pub fn value<S: IndexedSequence + ?Sized>(&self, w: &S, k: u64, i: u64) -> i64 {
        self.terms.iter().map(|(c, g)| c * g.term(w, k, i)).sum()
    }

    /// First `i < len` where the relation fails.
    pub fn first_failure<S: IndexedSequence + ?Sized>(&self, w: &S, k: u64, len: u64) -> Option<u64> {
        (0..len).into_par_iter().filter(|&i| self.value(w, k, i) != 0).min()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, (c, g)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if t > 0 { "+" } else { "" };
            let sep = if t > 0 { " " } else { "" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sep}{sign}{sep}{g}")?;
            } else {
                write!(f, "{sep}{sign}{sep}{mag} {g}")?;
            }
        }
        write!(f, " = 0")
    }
}

fn kern(e: u32, j: u64) -> Generator {
    Generator::Kernel(KernelIndex { e, j })
}

fn g4(m: u64) -> Generator {
    Generator::Periodic { period: 4, residue: m }
}

/// The five relations placing `G_4` and `v_0` inside the span of the
/// `j != j_e` kernel sequences (with `k = 6`).
pub fn five_fourths_relations() -> Vec<Relation> {
    let r = |terms: Vec<(i64, Generator)>| Relation { terms };
    vec![
        r(vec![(-1, kern(1, 0)), (1, kern(2, 0)), (1, kern(1, 2)), (-2, kern(1, 4)), (2, g4(0))]),
        r(vec![(-1, kern(1, 0)), (-1, kern(2, 0)), (1, kern(1, 2)), (2, g4(1))]),
        r(vec![(-1, kern(1, 0)), (1, kern(2, 0)), (-1, kern(1, 2)), (2, g4(2))]),
        r(vec![(1, kern(1, 0)), (-1, kern(2, 0)), (-1, kern(1, 2)), (2, g4(3))]),
        r(vec![
            (-1, kern(3, 23)),
            (-1, kern(3, 29)),
            (1, kern(3, 35)),
            (1, kern(3, 41)),
            (1, Generator::OneHot(0)),
        ]),
    ]
}

/// Checks every relation for `i < len`; returns `(relation index, i)` of the
/// first failure.
pub fn verify_relations<S: IndexedSequence + ?Sized>(w: &S, len: u64) -> Option<(usize, u64)> {
    five_fourths_relations()
        .iter()
        .enumerate()
        .find_map(|(t, rel)| rel.first_failure(w, 6, len).map(|i| (t, i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let rels = five_fourths_relations();
        assert_eq!(
            rels[1].to_string(),
            "-w(k^1 i + 0) - w(k^2 i + 0) + w(k^1 i + 2) + 2 g[4]_1 = 0"
        );
    }

    #[test]
    fn detects_failure() {
        // On the all-zero word only the indicator terms survive.
        let zeros = vec![0i64; 2000];
        assert_eq!(five_fourths_relations()[0].first_failure(&zeros, 6, 8), Some(0));
        assert_eq!(five_fourths_relations()[1].first_failure(&zeros, 6, 8), Some(1));
    }
}
