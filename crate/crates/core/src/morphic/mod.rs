//! The morphic description of `w_{5/4}`.

pub mod access;
pub mod canonical;
pub mod table;

pub use access::{background, Column, LetterOracle};
pub use canonical::CanonicalWords;
pub use table::{apply_phi, apply_tau, desubstitute, ImageLetter, ImageValue, MorphismTable, PHI};
