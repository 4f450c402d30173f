//! Finite posets, order complexes and exact homology, with generators for
//! non-crossing partition lattices and injective word posets and checkers
//! for (double) Cohen-Macaulayness, poset fiber theorems and strong
//! constructibility.

pub mod cache;
pub mod cli;
pub mod cm;
pub mod constructible;
pub mod coxeter;
pub mod fiber;
pub mod homology;
pub mod oracle;
pub mod poset;
pub mod suite;
pub mod words;
