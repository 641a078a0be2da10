//! Tools for cyclically presented groups arising as spines of closed 3-manifolds.
//!
//! The modules mirror the pipeline: build a presentation, look at its Whitehead
//! graph, compute abelian invariants, construct and certify a face-pairing
//! polyhedron, and enumerate cosets for small finite groups.

pub mod enumeration;
pub mod homology;
pub mod polyhedra;
pub mod presentations;
pub mod whitehead;
