//! Words, k-decompositions, finite monoid oracles and word-problem deciders
//! for the chain varieties of aperiodic monoids.

pub mod catalog;
pub mod deciders;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod monoid;
pub mod render;
pub mod rewrite;
pub mod word;

pub use catalog::{chain_of, Permutation, Tag, VarietyDescriptor};
pub use deciders::{decide, Claim, DecideOptions, Verdict};
pub use decomposition::{Depth, Divider, KDecomposition, WordProfile};
pub use error::{Error, ParseError, Result};
pub use monoid::{FiniteMonoid, SemiVerdict};
pub use word::{Identity, Letter, Word};
