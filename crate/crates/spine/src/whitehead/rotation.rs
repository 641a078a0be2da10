use std::collections::BTreeMap;

use super::planarity::SimpleRotation;
use super::WhiteheadError;

/// Rotation system of a multigraph given as darts.
///
/// Edge `e = (a, b)` owns darts `2e` (a -> b) and `2e + 1` (b -> a). `rotation[v]`
/// lists the darts leaving `v` in cyclic order, and faces follow
/// `next(d) = succ_{head(d)}(reverse(d))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl RotationSystem {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self, WhiteheadError> {
        if rotation.len() != vertex_count {
            return Err(WhiteheadError::BadRotation("one rotation per vertex required".into()));
        }
        let mut position = vec![usize::MAX; 2 * edges.len()];
        for (v, order) in rotation.iter().enumerate() {
            for (i, &d) in order.iter().enumerate() {
                let tail = if d % 2 == 0 { edges.get(d / 2).map(|e| e.0) } else { edges.get(d / 2).map(|e| e.1) };
                if tail != Some(v) || position[d] != usize::MAX {
                    return Err(WhiteheadError::BadRotation(format!("dart {d} misplaced at vertex {v}")));
                }
                position[d] = i;
            }
        }
        if position.iter().any(|&p| p == usize::MAX) {
            return Err(WhiteheadError::BadRotation("some dart is missing from the rotation".into()));
        }
        Ok(RotationSystem { vertex_count, edges, rotation, position })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn tail(&self, d: usize) -> usize {
        let e = self.edges[d / 2];
        if d % 2 == 0 {
            e.0
        } else {
            e.1
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(d ^ 1)
    }

    /// Index of dart `d` within the rotation at its tail.
    pub fn position(&self, d: usize) -> usize {
        self.position[d]
    }

    pub fn succ(&self, d: usize) -> usize {
        let r = &self.rotation[self.tail(d)];
        r[(self.position[d] + 1) % r.len()]
    }

    pub fn next_in_face(&self, d: usize) -> usize {
        self.succ(d ^ 1)
    }

    /// The mirror image: every rotation reversed.
    pub fn mirrored(&self) -> RotationSystem {
        let rotation = self.rotation.iter().map(|r| r.iter().rev().copied().collect()).collect();
        RotationSystem::new(self.vertex_count, self.edges.clone(), rotation).expect("same darts")
    }

    /// Faces as dart cycles, each starting at its smallest dart, sorted by that dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; 2 * self.edges.len()];
        let mut out = Vec::new();
        for s in 0..seen.len() {
            if seen[s] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.next_in_face(d);
            }
            out.push(face);
        }
        out
    }

    /// `face_of[d]` indexes into [`Self::faces`].
    pub fn face_of_darts(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let faces = self.faces();
        let mut face_of = vec![0; 2 * self.edges.len()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f {
                face_of[d] = i;
            }
        }
        (faces, face_of)
    }

    /// Component id per vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut c = 0;
        for s in 0..self.vertex_count {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = c;
            while let Some(v) = stack.pop() {
                for &d in &self.rotation[v] {
                    let w = self.head(d);
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            c += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// `V - E + F = 2` on every connected component (an isolated vertex counts as a sphere).
    pub fn is_spherical(&self) -> bool {
        let comp = self.components();
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut chi = vec![0i64; ncomp];
        for &c in &comp {
            chi[c] += 1;
        }
        for &(a, _) in &self.edges {
            chi[comp[a]] -= 1;
        }
        for f in self.faces() {
            chi[comp[self.tail(f[0])]] += 1;
        }
        for (v, order) in self.rotation.iter().enumerate() {
            if order.is_empty() {
                chi[comp[v]] += 1;
            }
        }
        chi.iter().all(|&x| x == 2)
    }
}

/// Expands a simple rotation into a multigraph one. Parallel copies are inserted
/// adjacently (in reverse order at the far end), so consecutive copies bound 2-gons.
pub fn expand_rotation(simple: &SimpleRotation, multiplicity: impl Fn(usize, usize) -> usize) -> RotationSystem {
    let n = simple.len();
    let mut bundle: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut edges = Vec::new();
    for a in 0..n {
        for &b in &simple[a] {
            if a < b {
                let m = multiplicity(a, b);
                let ids: Vec<usize> = (0..m).map(|i| edges.len() + i).collect();
                edges.extend(std::iter::repeat((a, b)).take(m));
                bundle.insert((a, b), ids);
            }
        }
    }
    let mut rotation = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &simple[v] {
            if v < w {
                rotation[v].extend(bundle[&(v, w)].iter().map(|e| 2 * e));
            } else {
                rotation[v].extend(bundle[&(w, v)].iter().rev().map(|e| 2 * e + 1));
            }
        }
    }
    RotationSystem::new(n, edges, rotation).expect("expansion keeps every dart once")
}
