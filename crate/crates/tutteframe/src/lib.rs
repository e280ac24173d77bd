//! Tutte polynomials of matroids through the gamma-bar frame and flat tensors.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals.

pub mod arith;
pub mod bitseq;
pub mod error;
pub mod flatexpand;
pub mod frame;
pub mod ginvariant;
pub mod matroid;
pub mod polynomial;

pub use bitseq::{BitSequence, Composition, ShiftVector, SliceConstraint};
pub use error::{Error, Result};
pub use flatexpand::{FTableau, FlatTensor};
pub use ginvariant::{CatenaryData, SymbolCombination};
pub use matroid::Matroid;
pub use polynomial::BivariatePolynomial;

/// Size guards for the exponential routes.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Longest bit sequence whose filter may be enumerated.
    pub enumeration_n: usize,
    /// Largest ground set for the 2^n corank-nullity sum.
    pub direct_n: usize,
    /// Largest ground set for the n! permutation sum.
    pub permutation_n: usize,
    /// Most flats the lattice enumeration may produce.
    pub flat_count: usize,
    /// Most memo entries deletion-contraction may hold.
    pub memo_entries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_n: 20,
            direct_n: 24,
            permutation_n: 8,
            flat_count: 200_000,
            memo_entries: 2_000_000,
        }
    }
}
