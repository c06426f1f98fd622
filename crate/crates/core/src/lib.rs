//! Recursive-cycle point sets in `ℓ₁`, embedding certificates and the
//! entropy-based dimension lower bound they imply.
//!
//! * [`pointset`] builds `G_{k,n}` and its binary labels.
//! * [`l1metric`] measures distortion of embeddings into `ℓ₁^d`.
//! * [`infotheory`] computes entropies and mutual informations exactly.
//! * [`certifier`] checks the separation constraint and evaluates the bound.
//! * [`oracle`] holds brute-force references and the embedding search.

pub mod certifier;
pub mod cli;
pub mod infotheory;
pub mod l1metric;
pub mod oracle;
pub mod pointset;
pub mod selftest;
