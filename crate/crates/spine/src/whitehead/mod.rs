//! Whitehead graphs, planarity with rotation systems, face census and pattern recognition.

mod graph;
mod patterns;
pub mod planarity;
mod rotation;

pub use graph::{corner_edges, whitehead_graph, CornerEdge, Vertex, WhiteheadGraph};
pub use patterns::{dihedral_match, family_pattern, g_target, h_target, match_family_pattern, PatternType};
pub use rotation::{expand_rotation, RotationSystem};

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WhiteheadError {
    #[error("invalid rotation system: {0}")]
    BadRotation(String),
    #[error("rotation system is not a connected sphere")]
    NotSpherical,
    #[error("the planarity criterion is stated for n >= 4, got n = {0}")]
    SmallRank(usize),
}

/// Simple-graph edge list on dense vertex ids, loops dropped.
fn simple_edges(g: &WhiteheadGraph) -> Vec<(usize, usize)> {
    let n = g.rank();
    g.edges().keys().filter(|(a, b)| a != b).map(|&(a, b)| (a.id(n), b.id(n))).collect()
}

/// Planar embedding of the reduced, loop-free graph with multiplicities re-inserted
/// as adjacent parallel copies; `None` when non-planar.
pub fn planar_embedding(g: &WhiteheadGraph) -> Option<RotationSystem> {
    let n = g.rank();
    let simple = planarity::embed_simple(g.vertex_count(), &simple_edges(g))?;
    let rs = expand_rotation(&simple, |a, b| g.multiplicity(Vertex::from_id(a, n), Vertex::from_id(b, n)));
    debug_assert!(rs.is_spherical());
    Some(rs)
}

pub fn is_planar(g: &WhiteheadGraph) -> bool {
    planarity::embed_simple(g.vertex_count(), &simple_edges(g)).is_some()
}

/// `n` even and `fk ≡ 0` or `2 (mod n)`.
pub fn planarity_criterion_g(k: usize, _l: usize, n: usize, f: usize) -> Result<bool, WhiteheadError> {
    if n < 4 {
        return Err(WhiteheadError::SmallRank(n));
    }
    let r = (f * k) % n;
    Ok(n % 2 == 0 && (r == 0 || r == 2))
}

/// Face-degree histogram of a spherical embedding.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FaceCensus(pub BTreeMap<usize, usize>);

impl FaceCensus {
    pub fn face_count(&self) -> usize {
        self.0.values().sum()
    }

    pub fn degree_sum(&self) -> usize {
        self.0.iter().map(|(d, c)| d * c).sum()
    }

    pub fn count(&self, degree: usize) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }
}

pub fn face_census(rs: &RotationSystem) -> Result<FaceCensus, WhiteheadError> {
    if !rs.is_connected() || !rs.is_spherical() {
        return Err(WhiteheadError::NotSpherical);
    }
    let mut census = BTreeMap::new();
    for f in rs.faces() {
        *census.entry(f.len()).or_insert(0) += 1;
    }
    Ok(FaceCensus(census))
}
