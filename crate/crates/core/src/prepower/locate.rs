//! Locating lengths of a morphism table.

use std::collections::BTreeSet;

use crate::morphic::table::{ImageValue, MorphismTable, K, TYPES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Pattern {
    Const(i32, u8),
    // The symbolic letter of one image; symbols of different images are
    // independent, and each image has at most one.
    Symbol(u8),
}

fn pattern_of(table: &MorphismTable, row: u8, column: usize) -> Pattern {
    let letter = table.image(row)[column];
    match letter.value {
        ImageValue::Const(v) => Pattern::Const(v, letter.subscript),
        ImageValue::Offset(_) => Pattern::Symbol(letter.subscript),
    }
}

fn unifiable(x: &[Pattern], y: &[Pattern]) -> bool {
    x.iter().zip(y).all(|(a, b)| match (a, b) {
        (Pattern::Const(u, i), Pattern::Const(v, j)) => u == v && i == j,
        (Pattern::Const(_, i) | Pattern::Symbol(i), Pattern::Const(_, j) | Pattern::Symbol(j)) => i == j,
    })
}

/// Distinct length-`l` windows of images of arbitrary words, by the column
/// in which they start.
fn windows(table: &MorphismTable, l: usize) -> Vec<BTreeSet<Vec<Pattern>>> {
    let mut by_column = vec![BTreeSet::new(); K];
    for (column, found) in by_column.iter_mut().enumerate() {
        let blocks = (column + l).div_ceil(K);
        let mut rows = vec![0u8; blocks];
        loop {
            let window: Vec<Pattern> = (0..l)
                .map(|t| {
                    let p = column + t;
                    pattern_of(table, rows[p / K], p % K)
                })
                .collect();
            found.insert(window);
            // Next row sequence, odometer style.
            let mut b = 0;
            while b < blocks && rows[b] as usize == TYPES - 1 {
                rows[b] = 0;
                b += 1;
            }
            if b == blocks {
                break;
            }
            rows[b] += 1;
        }
    }
    by_column
}

/// True iff every length-`l` factor of an image of any word (not
/// necessarily subscript-increasing) can begin in only one column.
///
/// Two windows starting in different columns collide when they agree on
/// subscripts everywhere and on values wherever both letters are constant.
pub fn locates_length(table: &MorphismTable, l: usize) -> bool {
    if l == 0 {
        return false;
    }
    let by_column = windows(table, l);
    for c1 in 0..K {
        for c2 in c1 + 1..K {
            for x in &by_column[c1] {
                if by_column[c2].iter().any(|y| unifiable(x, y)) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphic::table::PHI;

    #[test]
    fn phi_locating_lengths() {
        assert!(!locates_length(&PHI, 1));
        assert!(locates_length(&PHI, 6));
        let verdicts: Vec<bool> = (1..=12).map(|l| locates_length(&PHI, l)).collect();
        assert!(verdicts.windows(2).all(|p| !p[0] || p[1]));
    }
}
