use alloc::vec::Vec;

use thiserror::Error;

/// Structural defects of an incidence matrix, detected at construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("a polytope needs at least 2 vertices and 2 facets (got {n_vertices} and {n_facets})")]
    TooSmall { n_vertices: usize, n_facets: usize },
    #[error("facet {facet}: vertex index {index} out of range (n = {n_vertices})")]
    IndexOutOfRange {
        facet: usize,
        index: usize,
        n_vertices: usize,
    },
    #[error("facet {facet}: vertex {index} listed twice")]
    RepeatedIndex { facet: usize, index: usize },
    #[error("facet {facet} is empty")]
    EmptyFacet { facet: usize },
    #[error("facet {facet} equals the whole vertex set")]
    FacetEqualsVertexSet { facet: usize },
    #[error("facets {first} and {second} are equal")]
    DuplicateFacet { first: usize, second: usize },
    #[error("facet {inner} is contained in facet {outer}")]
    FacetContainment { inner: usize, outer: usize },
    #[error("vertex {vertex} lies in no facet")]
    UncoveredVertex { vertex: usize },
}

/// A necessary condition for polytopality that failed, with a witness.
///
/// Faces are reported by their vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a graded lattice: {lower:?} is covered by {upper:?} but their ranks differ by {gap}")]
    NotGraded {
        lower: Vec<usize>,
        upper: Vec<usize>,
        gap: i64,
    },
    #[error("diamond violation: interval [{lower:?}, {upper:?}] has {middle} intermediate faces")]
    Diamond {
        lower: Vec<usize>,
        upper: Vec<usize>,
        middle: usize,
    },
    #[error("not atomic: vertex {vertex} is not a face by itself")]
    NotAtomic { vertex: usize },
    #[error("not coatomic: facet {facet} is not a maximal proper face")]
    NotCoatomic { facet: usize },
    #[error("degenerate lattice of dimension {dimension}")]
    Degenerate { dimension: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("not polytopal: {0}")]
    NotPolytopal(#[from] LatticeError),
    #[error("not polytopal: the graph is disconnected")]
    DisconnectedGraph,
    #[error("input is not a simple polytope; use the general algorithm")]
    NotSimple,
    #[error("input is not a simplicial polytope; use the general algorithm")]
    NotSimplicial,
    #[error("2-face through {v}, {w}, {u} is not a cycle")]
    TwoFaceNotCycle { v: usize, w: usize, u: usize },
    #[error("flag graph not uniquely labeled: flag {flag}, label {label}")]
    FlagGraphNotUniquelyLabeled { flag: usize, label: usize },
    #[error("flag graph is disconnected")]
    FlagGraphDisconnected,
    #[error("flag map does not induce a vertex map")]
    ProjectionNotWellDefined,
    #[error("candidate isomorphism failed verification against the incidences")]
    CertificateRejected,
    #[error("graph needs at least 3 nodes (got {0})")]
    GraphTooSmall(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(&'static str),
    #[error("invalid construction parameters: {0}")]
    InvalidConfig(&'static str),
    #[error("coordinate cross-check failed: {0}")]
    CoordinateCheck(&'static str),
    #[error("point sets must share an ambient dimension ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("point set contains duplicate point {0}")]
    DuplicatePoint(usize),
    #[error("projective isomorphism is unsupported")]
    Unsupported,
    #[error("oracle cap exceeded: instance size {size} > cap {cap}")]
    OracleCap { size: usize, cap: usize },
}
