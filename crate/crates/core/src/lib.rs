//! Finite loops built as semidirect products `N ⋊_φ H` of a loop `N` and a
//! group `H` acting through identity-fixing permutations.
//!
//! The crate covers construction of the product loops, their nuclei,
//! commutant and center (by definition and by closed-form characterization),
//! isomorphism testing and classification of whole families of products.

pub mod cli;
pub mod isoclass;
pub mod perms;
pub mod semidirect;
pub mod structure;
pub mod tables;
