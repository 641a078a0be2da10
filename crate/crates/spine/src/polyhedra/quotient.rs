use std::fmt;

use serde::Serialize;

use super::scheme::{Arc, Face, FacePair, FacePairingScheme, FaceSign, Side};
use super::{PolyhedraError, UnionFind};

/// One identification step: `arc` is carried onto the next arc of the cycle through face pair `pair`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStep {
    pub arc: usize,
    pub pair: usize,
}

/// Arcs identified by the face pairing, in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrbit {
    pub steps: Vec<OrbitStep>,
}

impl EdgeOrbit {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn arcs(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.arc).collect()
    }

    /// `[tail,head] -F_i-> [tail,head] ...` with vertex names.
    pub fn render(&self, s: &FacePairingScheme) -> String {
        let mut out = String::new();
        for st in &self.steps {
            let a = &s.arcs[st.arc];
            let rel = s.faces[s.pairing[st.pair].plus].relator;
            out.push_str(&format!("[{},{}] -F_{}-> ", s.vertices[a.tail], s.vertices[a.head], rel));
        }
        if let Some(first) = self.steps.first() {
            let a = &s.arcs[first.arc];
            out.push_str(&format!("[{},{}]", s.vertices[a.tail], s.vertices[a.head]));
        }
        out
    }
}

/// Both pairing slots of every arc: `(pair index, letter index, is plus side)`.
fn arc_slots(s: &FacePairingScheme) -> Vec<Vec<(usize, usize, bool)>> {
    let mut slots = vec![Vec::new(); s.arcs.len()];
    for (k, fp) in s.pairing.iter().enumerate() {
        for (j, &(a, b)) in fp.arcs.iter().enumerate() {
            if a < slots.len() {
                slots[a].push((k, j, true));
            }
            if b < slots.len() {
                slots[b].push((k, j, false));
            }
        }
    }
    slots
}

/// Partitions arcs into identification cycles.
///
/// From an arc, leave through one of its two pairing slots, cross to the partner
/// slot, and continue through the other slot of the arc reached there.
pub fn edge_orbits(s: &FacePairingScheme) -> Result<Vec<EdgeOrbit>, PolyhedraError> {
    let slots = arc_slots(s);
    let mismatch = |k: usize| {
        let fp = &s.pairing[k];
        let name = |f: usize| s.faces.get(f).map_or("?".to_string(), |x| x.name.clone());
        PolyhedraError::InconsistentPairing { plus: name(fp.plus), minus: name(fp.minus) }
    };
    for (k, fp) in s.pairing.iter().enumerate() {
        for &(a, b) in &fp.arcs {
            match (s.arcs.get(a), s.arcs.get(b)) {
                (Some(x), Some(y)) if x.label == y.label => {}
                _ => return Err(mismatch(k)),
            }
        }
    }
    for (a, sl) in slots.iter().enumerate() {
        if sl.len() != 2 {
            return Err(PolyhedraError::Orbit(format!("arc {a} occurs in {} pairing slots", sl.len())));
        }
    }
    let mut done = vec![false; s.arcs.len()];
    let mut out = Vec::new();
    for start in 0..s.arcs.len() {
        if done[start] {
            continue;
        }
        // Leave first through a minus slot when there is one.
        let mut exit = if slots[start][0].2 && !slots[start][1].2 { slots[start][1] } else { slots[start][0] };
        let mut arc = start;
        let mut steps = Vec::new();
        loop {
            done[arc] = true;
            let (k, j, plus) = exit;
            steps.push(OrbitStep { arc, pair: k });
            let next = if plus { s.pairing[k].arcs[j].1 } else { s.pairing[k].arcs[j].0 };
            let entry = (k, j, !plus);
            let other = if slots[next][0] == entry { slots[next][1] } else { slots[next][0] };
            if next == start {
                break;
            }
            if done[next] {
                return Err(PolyhedraError::Orbit(format!("orbit through arc {start} does not close")));
            }
            arc = next;
            exit = other;
        }
        out.push(EdgeOrbit { steps });
    }
    Ok(out)
}

/// Cell counts of the identification space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientComplex {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cells: usize,
    pub euler_characteristic: i64,
    /// Smallest representative vertex per scheme vertex.
    pub vertex_orbit: Vec<usize>,
    /// Smallest representative arc per scheme arc.
    pub arc_orbit: Vec<usize>,
}

impl fmt::Display for QuotientComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(V,E,F,C) = ({},{},{},{}), chi = {}",
            self.vertices, self.edges, self.faces, self.cells, self.euler_characteristic
        )
    }
}

pub fn quotient(s: &FacePairingScheme) -> Result<QuotientComplex, PolyhedraError> {
    edge_orbits(s)?;
    let mut verts = UnionFind::new(s.vertices.len());
    let mut arcs = UnionFind::new(s.arcs.len());
    for fp in &s.pairing {
        for &(a, b) in &fp.arcs {
            arcs.union(a, b);
            verts.union(s.arcs[a].tail, s.arcs[b].tail);
            verts.union(s.arcs[a].head, s.arcs[b].head);
        }
    }
    let vertex_orbit: Vec<usize> = (0..s.vertices.len()).map(|v| verts.find(v)).collect();
    let arc_orbit: Vec<usize> = (0..s.arcs.len()).map(|a| arcs.find(a)).collect();
    let v = vertex_orbit.iter().enumerate().filter(|&(i, &r)| i == r).count();
    let e = arc_orbit.iter().enumerate().filter(|&(i, &r)| i == r).count();
    let f = s.pairing.len();
    Ok(QuotientComplex {
        vertices: v,
        edges: e,
        faces: f,
        cells: 1,
        euler_characteristic: v as i64 - e as i64 + f as i64 - 1,
        vertex_orbit,
        arc_orbit,
    })
}

/// Euler characteristic zero: the quotient is a closed orientable 3-manifold.
pub fn seifert_threlfall(s: &FacePairingScheme) -> Result<bool, PolyhedraError> {
    Ok(quotient(s)?.euler_characteristic == 0)
}

/// A 2-gon pillow spelling `x0 x1` on both hemispheres, glued by the identity.
pub fn pillow() -> FacePairingScheme {
    let side = |arc, forward| Side { arc, forward };
    FacePairingScheme {
        vertices: vec!["A".into(), "B".into()],
        arcs: vec![Arc { id: 0, tail: 0, head: 1, label: 0 }, Arc { id: 1, tail: 1, head: 0, label: 1 }],
        faces: vec![
            Face { name: "F^+".into(), relator: 0, sign: FaceSign::Plus, boundary: vec![side(0, true), side(1, true)] },
            Face { name: "F^-".into(), relator: 0, sign: FaceSign::Minus, boundary: vec![side(0, false), side(1, false)] },
        ],
        pairing: vec![FacePair { plus: 0, minus: 1, arcs: vec![(0, 0), (1, 1)] }],
        basepoints: vec![0, 0],
    }
}
