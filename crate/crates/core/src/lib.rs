//! Computational algebra for partial automorphism monoids of finite graphs
//! and edge-colored digraphs.
//!
//! The crate builds up from partial permutations on a small ground set
//! ([`pperm`]), through graphs and their isomorphism machinery ([`graphs`]),
//! to the partial automorphism monoid itself ([`paut`]), its Green's
//! relations ([`green`]), abstract inverse monoids given by multiplication
//! tables ([`monoid`]), the characterization theorems as executable checks
//! and constructions ([`characterize`]), and deck/reconstruction search
//! harnesses ([`recon`]).

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod characterize;
pub mod graphs;
pub mod green;
pub mod monoid;
pub mod paut;
pub mod pperm;
pub mod recon;

pub use graphs::{ColoredDigraph, Graph};
pub use paut::{enumerate_paut, is_partial_automorphism, InverseSubmonoid};
pub use pperm::{GroundSet, PartialPerm};
