//! Random access to `w_{5/4}` through its column structure.
//!
//! Five of the six residue classes mod 6 are eventually periodic; the class
//! `6i + 1` satisfies `w(6i + 123061) = w(i + 5920) + d(i mod 8)`.

use crate::error::{Error, Result};
use crate::morphic::canonical::CanonicalWords;
use crate::morphic::table::PHI;
use crate::word::Letter;

/// First row from which the five background columns are periodic.
pub const BACKGROUND_START: u64 = 1127;
/// Offset of the left-hand side of the sixth-column recurrence.
pub const RECURRENCE_R: u64 = 123061;
/// Offset of the right-hand side of the sixth-column recurrence.
pub const RECURRENCE_S: u64 = 5920;

/// A column of the 6-column layout of `w_{5/4}` at a given row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Value(Letter),
    Recursive,
}

/// `w(6q + m)` for `q >= 1127` when `m != 1`.
pub fn background(q: u64, m: u8) -> Result<Column> {
    if q < BACKGROUND_START {
        return Err(Error::BelowBackground(q));
    }
    let r = q % 4;
    let v = match m {
        0 => u32::from(matches!(r, 1 | 2)),
        1 => return Ok(Column::Recursive),
        2 => u32::from(matches!(r, 2 | 3)),
        3 => 1,
        4 => u32::from(matches!(r, 0 | 3)),
        5 => 0,
        _ => return Err(Error::Unsupported(format!("column {m} outside 0..6"))),
    };
    Ok(Column::Value(v))
}

/// O(log i) letter lookup backed by the stored greedy prefix.
#[derive(Debug, Clone, Copy)]
pub struct LetterOracle<'a> {
    prefix: &'a [Letter],
    d: [i32; 8],
}

impl<'a> LetterOracle<'a> {
    /// Panics if the prefix is too short to cover the base cases.
    pub fn new(prefix: &'a [Letter]) -> Self {
        assert!(prefix.len() as u64 >= RECURRENCE_R + 6, "prefix too short for letter lookup");
        Self { prefix, d: PHI.increments() }
    }

    pub fn shared() -> LetterOracle<'static> {
        LetterOracle::new(&CanonicalWords::shared().greedy_prefix)
    }

    pub fn letter_at(&self, i: u64) -> Letter {
        let mut i = i;
        let mut add: u32 = 0;
        loop {
            if i < self.prefix.len() as u64 {
                return self.prefix[i as usize] + add;
            }
            let (q, m) = (i / 6, (i % 6) as u8);
            if m != 1 {
                match background(q, m) {
                    Ok(Column::Value(v)) => return v + add,
                    _ => unreachable!("rows beyond the prefix are in the background range"),
                }
            }
            let t = (i - RECURRENCE_R) / 6;
            add += self.d[(t % 8) as usize] as u32;
            i = t + RECURRENCE_S;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn background_values() {
        assert_eq!(background(2000, 5).unwrap(), Column::Value(0));
        assert_eq!(background(2001, 3).unwrap(), Column::Value(1));
        assert_eq!(background(2001, 1).unwrap(), Column::Recursive);
        assert_eq!(background(1126, 0), Err(Error::BelowBackground(1126)));
        assert!(background(2000, 6).is_err());
    }
}
