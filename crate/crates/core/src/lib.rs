//! Lexicographically least fractional-power-free words.

pub mod error;
pub mod checks;
pub mod distinguish;
pub mod format;
pub mod greedy;
pub mod morphic;
pub mod prepower;
pub mod regularity;
pub mod word;

pub use error::{Error, Result};
pub use word::{FracExponent, Letter, NatWord, SubLetter, SubWord};
