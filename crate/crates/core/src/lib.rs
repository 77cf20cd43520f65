//! Combinatorial isomorphism of convex polytopes given by vertex-facet
//! incidences.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`incidence`]: the validated [`IncidenceMatrix`] and its transpose (the
//!   dual polytope).
//! - [`lattice`]: the face lattice (Hasse diagram), f-vector and flags.
//! - [`graph`]: the graph of a polytope and simplicity tests.
//! - [`simple_iso`]: the fast isomorphism test for simple (and, by duality,
//!   simplicial) polytopes, driven by the 2-face edge bijections.
//! - [`flag_iso`]: the general test through edge-labeled flag graphs, plus
//!   duality-aware isomorphism and self-duality.
//! - [`reduction`]: the graph-to-polytope construction `Λ(G)` with exact
//!   rational coordinates.
//! - [`geometry`]: affine isomorphism and congruence of rational point sets.
//! - [`oracle`]: brute-force references used to cross-check everything else.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod bitset;
pub mod certificate;
pub mod error;
pub mod families;
pub mod flag_iso;
pub mod geometry;
pub mod graph;
pub mod incidence;
pub mod lattice;
pub mod oracle;
pub mod rational;
pub mod reduction;
pub mod simple_iso;

pub use certificate::IsoCertificate;
pub use error::{Error, IncidenceError, LatticeError};
pub use flag_iso::{iso_up_to_duality, isomorphic, self_dual, DualityIso, FlagGraph};
pub use graph::PolytopeGraph;
pub use incidence::IncidenceMatrix;
pub use lattice::FaceLattice;
pub use reduction::{InputGraph, LambdaConfig};
pub use simple_iso::{simple_isomorphism, simplicial_isomorphism};

pub type Result<T, E = Error> = core::result::Result<T, E>;
