//! The 6-uniform morphism on the eight-type alphabet and its coding.

use crate::error::{Error, Result};
use crate::word::{SubLetter, SubWord};

/// Image length of the morphism.
pub const K: usize = 6;

/// Number of letter types (subscripts).
pub const TYPES: usize = 8;

/// One letter of a morphism image: a constant, or the preimage value plus `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImageValue {
    Const(i32),
    Offset(i32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ImageLetter {
    pub value: ImageValue,
    pub subscript: u8,
}

impl ImageLetter {
    /// The letter produced from a preimage with value `n`.
    pub fn instantiate(self, n: i32) -> SubLetter {
        let v = match self.value {
            ImageValue::Const(c) => c,
            ImageValue::Offset(d) => n + d,
        };
        SubLetter::new(v, self.subscript)
    }
}

/// An 8-row, 6-column morphism table whose last column carries the offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismTable {
    images: [[ImageLetter; K]; TYPES],
}

const fn sub(j: usize, c: usize) -> u8 {
    ((K * j + c) % TYPES) as u8
}

const fn row(consts: [i32; 5], d: i32, j: usize) -> [ImageLetter; K] {
    [
        ImageLetter { value: ImageValue::Const(consts[0]), subscript: sub(j, 0) },
        ImageLetter { value: ImageValue::Const(consts[1]), subscript: sub(j, 1) },
        ImageLetter { value: ImageValue::Const(consts[2]), subscript: sub(j, 2) },
        ImageLetter { value: ImageValue::Const(consts[3]), subscript: sub(j, 3) },
        ImageLetter { value: ImageValue::Const(consts[4]), subscript: sub(j, 4) },
        ImageLetter { value: ImageValue::Offset(d), subscript: sub(j, 5) },
    ]
}

/// The morphism of the 5/4 construction.
pub const PHI: MorphismTable = MorphismTable {
    images: [
        row([0, 1, 0, 0, 1], 3, 0),
        row([1, 1, 0, 0, 0], 2, 1),
        row([1, 1, 1, 0, 0], 3, 2),
        row([0, 1, 1, 0, 1], 2, 3),
        row([0, 1, 0, 0, 1], 1, 4),
        row([1, 1, 0, 0, 0], 2, 5),
        row([1, 1, 1, 0, 0], 1, 6),
        row([0, 1, 1, 0, 1], 2, 7),
    ],
};

impl MorphismTable {
    pub fn image(&self, j: u8) -> &[ImageLetter; K] {
        &self.images[j as usize]
    }

    /// Per-row offset of the sixth column.
    pub fn increments(&self) -> [i32; TYPES] {
        std::array::from_fn(|j| match self.images[j][K - 1].value {
            ImageValue::Offset(d) => d,
            ImageValue::Const(_) => 0,
        })
    }

    pub fn apply_letter(&self, a: SubLetter) -> [SubLetter; K] {
        let img = self.image(a.subscript());
        std::array::from_fn(|c| img[c].instantiate(a.value))
    }

    /// `tau(phi(a))` without building subscripted letters.
    #[inline]
    pub fn tau_letter(&self, a: SubLetter, c: usize) -> i32 {
        match self.images[a.subscript() as usize][c].value {
            ImageValue::Const(v) => v,
            ImageValue::Offset(d) => a.value + d,
        }
    }

    pub fn apply(&self, w: &[SubLetter]) -> SubWord {
        w.iter().flat_map(|&a| self.apply_letter(a)).collect()
    }

    /// Inverts `tau . phi` on a subscript-increasing preimage whose first
    /// letter has subscript `start`.
    pub fn desubstitute<T: Copy + Into<i64>>(&self, w: &[T], start: u8) -> Result<SubWord> {
        if start as usize >= TYPES {
            return Err(Error::InvalidSubscript(start as i64));
        }
        if !w.len().is_multiple_of(K) {
            return Err(Error::LengthNotDivisible { len: w.len(), divisor: K });
        }
        w.chunks(K)
            .enumerate()
            .map(|(block, chunk)| {
                let j = ((start as usize + block) % TYPES) as u8;
                let mut value = 0;
                for (column, (img, &x)) in self.image(j).iter().zip(chunk).enumerate() {
                    let x: i64 = x.into();
                    match img.value {
                        ImageValue::Const(c) if c as i64 != x => {
                            return Err(Error::ColumnMismatch { block, column, expected: c as i64, found: x });
                        }
                        ImageValue::Const(_) => {}
                        ImageValue::Offset(d) => value = x - d as i64,
                    }
                }
                Ok(SubLetter::new(value as i32, j))
            })
            .collect()
    }
}

pub fn apply_phi(w: &[SubLetter]) -> SubWord {
    PHI.apply(w)
}

/// The coding that drops subscripts.
pub fn apply_tau(w: &[SubLetter]) -> Vec<i32> {
    w.iter().map(|a| a.value).collect()
}

pub fn desubstitute<T: Copy + Into<i64>>(w: &[T], start: u8) -> Result<SubWord> {
    PHI.desubstitute(w, start)
}
