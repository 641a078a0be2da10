//! Face-pairing polyhedra, their quotients, and the related Heegaard diagrams.

mod build;
mod heegaard;
mod quotient;
mod scheme;
mod theorem;

pub use build::{build_scheme, scheme_from_embedding, supported};
pub use heegaard::{heegaard_h, lens_space_diagram, rho_quotient, HeegaardDiagram, Strand};
pub use quotient::{edge_orbits, pillow, quotient, seifert_threlfall, EdgeOrbit, OrbitStep, QuotientComplex};
pub use scheme::{validate_scheme, Arc, Check, Face, FacePair, FacePairingScheme, FaceSign, ReadSide, Side, ValidationReport};
pub use theorem::{odd_f_obstruction, spine_decision, Obstruction};

use thiserror::Error;

use crate::presentations::PresentationError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyhedraError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("unsupported family: {0}")]
    Unsupported(String),
    #[error("outside the theorem's hypotheses: {0}")]
    Hypothesis(String),
    #[error("Whitehead graph is not planar")]
    NonPlanar,
    #[error("no face pairing is compatible with the embedding")]
    NoScheme,
    #[error("inconsistent pairing between {plus} and {minus}")]
    InconsistentPairing { plus: String, minus: String },
    #[error("orbit tracing failed: {0}")]
    Orbit(String),
    #[error("diagram is not invariant: {0}")]
    Symmetry(String),
}

/// Disjoint sets whose representative is always the smallest member.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
