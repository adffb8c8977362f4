//! Permutation groups: permutations with a left action and a deterministic
//! Schreier–Sims stabilizer chain.

mod perm;
mod schreier_sims;

pub use perm::Perm;
pub use schreier_sims::{StabilizerChain, DEFAULT_TRANSVERSAL_CAP};
