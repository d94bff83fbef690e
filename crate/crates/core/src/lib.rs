//! Multiplicity-free q-ary codes correcting multiple deletions.
//!
//! A word with pairwise distinct symbols is split into its symbol set and
//! the permutation that orders it. Protecting the set with a VT-syndrome
//! constant-weight code and the permutation with a deletion-correcting
//! permutation code yields a code that survives `t` deletions of the word.
//!
//! - [`model`]: words, sets, permutations and the deletion models
//! - [`channel`]: seeded random deletion patterns
//! - [`modular`]: prime-field arithmetic and power-sum inversion
//! - [`vt`]: the VT-syndrome set code and its asymmetric-error decoder
//! - [`perm_code`]: greedy permutation codes and their decoders
//! - [`multfree`]: the composed code, enumeration and decoding
//! - [`analysis`]: size and redundancy bounds
//! - [`simulate`]: Monte-Carlo channel harness

pub mod analysis;
pub mod channel;
pub mod error;
pub mod guard;
pub mod model;
pub mod modular;
pub mod multfree;
pub mod perm_code;
pub mod simulate;
pub mod vt;

pub use error::{Error, Result};
pub use model::{apply_stable_deletions, apply_unstable_deletions, delete_positions, DeletionPattern, Permutation, SymbolSet, Word};
pub use multfree::{induced_permutation, induced_set, psi, ranks_within, Mode, MultFreeCode, MultFreeCodeSpec, SetCode};
pub use perm_code::{greedy_sd_code, sd_decode, verify_sd_property, PermCodeBook};
pub use vt::{BitWord, SyndromeVector, VtParams};
