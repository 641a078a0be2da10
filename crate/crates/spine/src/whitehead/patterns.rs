use std::fmt;

use serde::{Deserialize, Serialize};

use super::{is_planar, whitehead_graph, Vertex, WhiteheadGraph};
use crate::presentations::{build_family, FamilySpec};

/// The graph types recognised here (Howie–Williams numbering).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PatternType {
    TypeI5,
    TypeII7,
    TypeII11,
    None,
}

impl fmt::Display for PatternType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternType::TypeI5 => "I.5",
            PatternType::TypeII7 => "II.7",
            PatternType::TypeII11 => "II.11",
            PatternType::None => "none",
        };
        write!(f, "{s}")
    }
}

/// `Pos(i)–Neg(i+1)` with multiplicity `r-1` and `Pos(i)–Neg(i-r+1)` once.
pub fn h_target(r: usize, n: usize) -> WhiteheadGraph {
    let mut g = WhiteheadGraph::empty(n);
    let (ri, ni) = (r as i64, n as i64);
    for i in 0..n {
        let ii = i as i64;
        g.add_edge(Vertex::Pos(i), Vertex::Neg(((ii + 1).rem_euclid(ni)) as usize), r - 1);
        g.add_edge(Vertex::Pos(i), Vertex::Neg(((ii - ri + 1).rem_euclid(ni)) as usize), 1);
    }
    g
}

/// Per `i`: `Pos(i)–Pos(i+1)`, `Neg(i)–Neg(i+2)`, `Pos(i)–Neg(i+f)` ×λ, `Pos(i)–Neg(i+f+1)`,
/// with `λ = 2l + k - 3`.
pub fn g_target(k: usize, l: usize, n: usize, f: usize) -> WhiteheadGraph {
    let lambda = 2 * l + k - 3;
    let mut g = WhiteheadGraph::empty(n);
    for i in 0..n {
        g.add_edge(Vertex::Pos(i), Vertex::Pos(i + 1), 1);
        g.add_edge(Vertex::Neg(i), Vertex::Neg(i + 2), 1);
        g.add_edge(Vertex::Pos(i), Vertex::Neg(i + f), lambda);
        g.add_edge(Vertex::Pos(i), Vertex::Neg(i + f + 1), 1);
    }
    g
}

/// Whether `g` equals `target` after some dihedral index map `i -> ±i + c`. Loops are ignored.
pub fn dihedral_match(g: &WhiteheadGraph, target: &WhiteheadGraph) -> bool {
    if g.rank() != target.rank() {
        return false;
    }
    let n = g.rank() as i64;
    let g = g.without_loops();
    let target = target.without_loops();
    for c in 0..n {
        for s in [1i64, -1] {
            if g.map_indices(|i| (s * i as i64 + c).rem_euclid(n) as usize) == target {
                return true;
            }
        }
    }
    false
}

/// Classifies `g` against the parametric graph of `spec`.
///
/// `I.5` needs the connected case `r > 1`, `gcd(r, n) = 1`. `II.7` and `II.11` need the
/// target to be planar; they are told apart by `λ ≥ 1` versus `λ = 0`.
pub fn match_family_pattern(g: &WhiteheadGraph, spec: FamilySpec) -> PatternType {
    match spec.normalized() {
        FamilySpec::H { r, n } => {
            if r > 1 && num_integer::gcd(r, n) == 1 && dihedral_match(g, &h_target(r, n)) {
                PatternType::TypeI5
            } else {
                PatternType::None
            }
        }
        FamilySpec::G { k, l, n, f } => {
            let target = g_target(k, l, n, f);
            if !is_planar(&target) || !dihedral_match(g, &target) {
                return PatternType::None;
            }
            if 2 * l + k > 3 {
                PatternType::TypeII7
            } else {
                PatternType::TypeII11
            }
        }
        FamilySpec::F { .. } => unreachable!(),
    }
}

/// Pattern of the family's own Whitehead graph.
pub fn family_pattern(spec: FamilySpec) -> PatternType {
    match build_family(spec) {
        Ok(p) => match_family_pattern(&whitehead_graph(&p), spec),
        Err(_) => PatternType::None,
    }
}
