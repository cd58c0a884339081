//! Isomorphism tests between algebras, faithfulness witnesses for the action
//! of `F[D]` on `A`, and the classification of elements by the behavior of
//! their adjoint action.

mod behavior;
mod faithful;
mod iso;

pub use behavior::{classify_ad_behavior, growth_probe, strictly_grows, wild_probe, AdBehavior, AdTag, GrowthRow};
pub use faithful::{faithfulness_witness, FaithfulnessWitness};
pub use iso::{
    invariant_mismatch, iso_map, iso_search_bounded, iso_verify, signature_invariants, IsoCandidate, IsoSearchResult,
    SignatureInvariants, SEARCH_BUDGET,
};
