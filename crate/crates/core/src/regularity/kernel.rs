//! Kernel sequences `i -> w(k^e i + j)`.

use rayon::prelude::*;

use crate::morphic::LetterOracle;
use crate::regularity::KernelIndex;

/// Random access to an integer sequence.
pub trait IndexedSequence: Sync {
    fn at(&self, i: u64) -> i64;

    /// Number of available terms; `None` for infinite sequences.
    fn available(&self) -> Option<u64> {
        None
    }
}

impl IndexedSequence for LetterOracle<'_> {
    fn at(&self, i: u64) -> i64 {
        self.letter_at(i) as i64
    }
}

macro_rules! finite_sequence {
    ($($t:ty),*) => {$(
        impl IndexedSequence for [$t] {
            /// Panics past the end of the slice.
            fn at(&self, i: u64) -> i64 {
                self[i as usize] as i64
            }

            fn available(&self) -> Option<u64> {
                Some(self.len() as u64)
            }
        }

        impl IndexedSequence for Vec<$t> {
            fn at(&self, i: u64) -> i64 {
                self.as_slice().at(i)
            }

            fn available(&self) -> Option<u64> {
                self.as_slice().available()
            }
        }
    )*};
}

finite_sequence!(i64, u32);

/// The first `len` terms of `w(k^e i + j)`.
pub fn kernel_sequence<S: IndexedSequence + ?Sized>(w: &S, k: u64, index: KernelIndex, len: usize) -> Vec<i64> {
    let step = k.pow(index.e);
    (0..len as u64).map(|i| w.at(step * i + index.j)).collect()
}

/// Materializes many kernel sequences, in parallel over sequences.
pub fn kernel_sequences<S: IndexedSequence + ?Sized>(
    w: &S,
    k: u64,
    indices: &[KernelIndex],
    len: usize,
) -> Vec<Vec<i64>> {
    indices.par_iter().map(|&ix| kernel_sequence(w, k, ix, len)).collect()
}

/// All `(e, j)` with `e` in the range and `0 <= j < k^e`.
pub fn all_indices(k: u64, e_range: std::ops::RangeInclusive<u32>) -> Vec<KernelIndex> {
    e_range.flat_map(|e| (0..k.pow(e)).map(move |j| KernelIndex { e, j })).collect()
}
