use std::collections::BTreeMap;
use std::fmt;

use crate::presentations::{CyclicPresentation, Letter};

/// A vertex of the Whitehead graph: `Pos(i)` is `v_{x_i}`, `Neg(i)` is `v'_{x_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Pos(usize),
    Neg(usize),
}

impl Vertex {
    /// Dense id: `Pos(i) -> i`, `Neg(i) -> n + i`.
    pub fn id(self, n: usize) -> usize {
        match self {
            Vertex::Pos(i) => i,
            Vertex::Neg(i) => n + i,
        }
    }

    pub fn from_id(id: usize, n: usize) -> Vertex {
        if id < n {
            Vertex::Pos(id)
        } else {
            Vertex::Neg(id - n)
        }
    }

    pub fn index(self) -> usize {
        match self {
            Vertex::Pos(i) | Vertex::Neg(i) => i,
        }
    }

    pub fn is_pos(self) -> bool {
        matches!(self, Vertex::Pos(_))
    }

    /// Where the relator path leaves the handle after reading `l`.
    pub fn exit(l: Letter) -> Vertex {
        if l.sign > 0 {
            Vertex::Pos(l.generator)
        } else {
            Vertex::Neg(l.generator)
        }
    }

    /// Where the relator path enters the handle before reading `l`.
    pub fn entry(l: Letter) -> Vertex {
        if l.sign > 0 {
            Vertex::Neg(l.generator)
        } else {
            Vertex::Pos(l.generator)
        }
    }

    fn map_index(self, f: impl Fn(usize) -> usize) -> Vertex {
        match self {
            Vertex::Pos(i) => Vertex::Pos(f(i)),
            Vertex::Neg(i) => Vertex::Neg(f(i)),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Pos(i) => write!(f, "p{i}"),
            Vertex::Neg(i) => write!(f, "m{i}"),
        }
    }
}

/// The edge of the Whitehead graph contributed by one cyclic length-2 subword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerEdge {
    pub relator: usize,
    /// Corner `j` sits between letters `j` and `j+1` (cyclically).
    pub corner: usize,
    pub from: Vertex,
    pub to: Vertex,
}

/// Every corner of every relator, in relator-major order.
pub fn corner_edges(p: &CyclicPresentation) -> Vec<CornerEdge> {
    let mut out = Vec::new();
    for (i, w) in p.relators().iter().enumerate() {
        let ls = w.letters();
        let len = ls.len();
        for j in 0..len {
            let (a, b) = (ls[j], ls[(j + 1) % len]);
            out.push(CornerEdge { relator: i, corner: j, from: Vertex::exit(a), to: Vertex::entry(b) });
        }
    }
    out
}

/// Labelled multigraph on `{Pos(i), Neg(i)}`; unordered edges with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteheadGraph {
    rank: usize,
    edges: BTreeMap<(Vertex, Vertex), usize>,
}

fn key(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl WhiteheadGraph {
    pub fn empty(rank: usize) -> Self {
        WhiteheadGraph { rank, edges: BTreeMap::new() }
    }

    pub fn from_edges(rank: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, usize)>) -> Self {
        let mut g = WhiteheadGraph::empty(rank);
        for (a, b, m) in edges {
            g.add_edge(a, b, m);
        }
        g
    }

    /// Adds `m` copies; indices are reduced mod the rank.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex, m: usize) {
        if m == 0 {
            return;
        }
        let n = self.rank;
        let a = a.map_index(|i| i % n);
        let b = b.map_index(|i| i % n);
        *self.edges.entry(key(a, b)).or_insert(0) += m;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.rank
    }

    pub fn edges(&self) -> &BTreeMap<(Vertex, Vertex), usize> {
        &self.edges
    }

    pub fn multiplicity(&self, a: Vertex, b: Vertex) -> usize {
        self.edges.get(&key(a, b)).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn loops(&self) -> Vec<Vertex> {
        self.edges.keys().filter(|(a, b)| a == b).map(|&(a, _)| a).collect()
    }

    pub fn without_loops(&self) -> WhiteheadGraph {
        WhiteheadGraph {
            rank: self.rank,
            edges: self.edges.iter().filter(|((a, b), _)| a != b).map(|(k, v)| (*k, *v)).collect(),
        }
    }

    /// Every multiplicity clamped to 1.
    pub fn reduced(&self) -> WhiteheadGraph {
        WhiteheadGraph { rank: self.rank, edges: self.edges.keys().map(|k| (*k, 1)).collect() }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut comps = n;
        for &(a, b) in self.edges.keys() {
            let (ra, rb) = (find(&mut parent, a.id(self.rank)), find(&mut parent, b.id(self.rank)));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps <= 1
    }

    /// Applies an index map to both `Pos` and `Neg` vertices.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> WhiteheadGraph {
        let mut g = WhiteheadGraph::empty(self.rank);
        for (&(a, b), &m) in &self.edges {
            g.add_edge(a.map_index(&f), b.map_index(&f), m);
        }
        g
    }

    /// The action of the shift θ: `i -> i + s` on both sides.
    pub fn shifted(&self, s: i64) -> WhiteheadGraph {
        let n = self.rank as i64;
        self.map_indices(|i| (i as i64 + s).rem_euclid(n) as usize)
    }

    /// Replaces every `Pos(i)–Neg(j)` edge by `Pos(i)–Neg(j+d)`.
    pub fn shift_mixed_edges(&self, d: i64) -> WhiteheadGraph {
        let n = self.rank as i64;
        let mut g = WhiteheadGraph::empty(self.rank);
        for (&(a, b), &m) in &self.edges {
            let (a, b) = match (a, b) {
                (Vertex::Pos(i), Vertex::Neg(j)) => {
                    (Vertex::Pos(i), Vertex::Neg((j as i64 + d).rem_euclid(n) as usize))
                }
                other => other,
            };
            g.add_edge(a, b, m);
        }
        g
    }

    /// Graphviz rendering; vertices `p0…`, `m0…`, edges labelled with multiplicity.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph whitehead {\n");
        for i in 0..self.rank {
            s.push_str(&format!("  p{i};\n"));
        }
        for i in 0..self.rank {
            s.push_str(&format!("  m{i};\n"));
        }
        for (&(a, b), &m) in &self.edges {
            s.push_str(&format!("  {a} -- {b} [label={m}];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Whitehead graph of a cyclic presentation, one edge per cyclic length-2 subword.
pub fn whitehead_graph(p: &CyclicPresentation) -> WhiteheadGraph {
    let mut g = WhiteheadGraph::empty(p.rank());
    for c in corner_edges(p) {
        g.add_edge(c.from, c.to, 1);
    }
    g
}
