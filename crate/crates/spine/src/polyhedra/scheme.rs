use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::UnionFind;
use crate::presentations::{CyclicPresentation, Letter};

/// An oriented edge of the polyhedron boundary carrying a generator label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub label: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for FaceSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaceSign::Plus => "+",
            FaceSign::Minus => "-",
        })
    }
}

/// One side of a face: the arc and whether the face orientation runs along it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub arc: usize,
    pub forward: bool,
}

/// A boundary face; `boundary` is listed in the face's own orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub name: String,
    pub relator: usize,
    pub sign: FaceSign,
    pub boundary: Vec<Side>,
}

/// `arcs[j]` pairs the arc read at letter `j` of the plus face with the one of the minus face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacePair {
    pub plus: usize,
    pub minus: usize,
    pub arcs: Vec<(usize, usize)>,
}

/// Boundary sphere of a face-pairing polyhedron.
///
/// `basepoints[f]` is the index into `faces[f].boundary` of the side carrying the
/// first letter. Plus faces are read along their orientation, minus faces against it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacePairingScheme {
    pub vertices: Vec<String>,
    pub arcs: Vec<Arc>,
    pub faces: Vec<Face>,
    pub pairing: Vec<FacePair>,
    pub basepoints: Vec<usize>,
}

/// A side as met while reading a face's relator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReadSide {
    pub arc: usize,
    /// True when the reading direction agrees with the arc direction.
    pub along: bool,
    pub from: usize,
    pub to: usize,
}

impl FacePairingScheme {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn face_index(&self, name: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.name == name)
    }

    /// Sides of face `f` in reading order, or `None` if indices are out of range.
    pub fn reading(&self, f: usize) -> Option<Vec<ReadSide>> {
        let face = self.faces.get(f)?;
        let len = face.boundary.len();
        let base = *self.basepoints.get(f)?;
        if len == 0 || base >= len {
            return None;
        }
        let mut out = Vec::with_capacity(len);
        for j in 0..len {
            let (idx, flip) = match face.sign {
                FaceSign::Plus => ((base + j) % len, false),
                FaceSign::Minus => ((base + len - j) % len, true),
            };
            let side = face.boundary[idx];
            let arc = self.arcs.get(side.arc)?;
            let along = side.forward != flip;
            let (from, to) = if along { (arc.tail, arc.head) } else { (arc.head, arc.tail) };
            out.push(ReadSide { arc: side.arc, along, from, to });
        }
        Some(out)
    }

    /// The word a face spells when read from its basepoint.
    pub fn face_word(&self, f: usize) -> Option<Vec<Letter>> {
        let sides = self.reading(f)?;
        Some(
            sides
                .iter()
                .map(|s| Letter::new(self.arcs[s.arc].label, if s.along { 1 } else { -1 }))
                .collect(),
        )
    }

    /// DOT rendering of the boundary 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph scheme {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{v}\"];\n"));
        }
        for a in &self.arcs {
            s.push_str(&format!("  v{} -> v{} [label=\"x{}\"];\n", a.tail, a.head, a.label));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Per-check outcome of [`validate_scheme`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &'static str, problems: Vec<String>) {
        let passed = problems.is_empty();
        let detail = if passed { "ok".to_string() } else { problems.join("; ") };
        self.checks.push(Check { name, passed, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<18} {} {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

/// Checks the structural invariants of `s` and that it realises the relators of `p`.
pub fn validate_scheme(s: &FacePairingScheme, p: &CyclicPresentation) -> ValidationReport {
    let mut rep = ValidationReport { checks: Vec::new() };
    let n = p.rank();
    let len = p.defining_word().len();
    let nv = s.vertices.len();

    let mut refs = Vec::new();
    for (i, a) in s.arcs.iter().enumerate() {
        if a.id != i {
            refs.push(format!("arc {i} carries id {}", a.id));
        }
        if a.tail >= nv || a.head >= nv {
            refs.push(format!("arc {i} has an endpoint outside the vertex set"));
        }
        if a.label >= n {
            refs.push(format!("arc {i} has label x{} outside rank {n}", a.label));
        }
    }
    for face in &s.faces {
        if face.boundary.is_empty() {
            refs.push(format!("face {} has empty boundary", face.name));
        }
        for side in &face.boundary {
            if side.arc >= s.arcs.len() {
                refs.push(format!("face {} uses missing arc {}", face.name, side.arc));
            }
        }
    }
    if s.basepoints.len() != s.faces.len() {
        refs.push(format!("{} basepoints for {} faces", s.basepoints.len(), s.faces.len()));
    } else {
        for (f, &b) in s.basepoints.iter().enumerate() {
            if b >= s.faces[f].boundary.len() {
                refs.push(format!("basepoint of {} out of range", s.faces[f].name));
            }
        }
    }
    let refs_ok = refs.is_empty();
    rep.push("references", refs);
    if !refs_ok {
        return rep;
    }

    // Closed boundary walks.
    let mut walk = Vec::new();
    for face in &s.faces {
        let b = &face.boundary;
        for t in 0..b.len() {
            let end = |sd: Side| {
                let a = &s.arcs[sd.arc];
                if sd.forward {
                    (a.tail, a.head)
                } else {
                    (a.head, a.tail)
                }
            };
            if end(b[t]).1 != end(b[(t + 1) % b.len()]).0 {
                walk.push(format!("face {} breaks between sides {t} and {}", face.name, (t + 1) % b.len()));
            }
        }
    }
    rep.push("closed-boundaries", walk);

    // Each arc on exactly two sides, traversed in opposite directions.
    let mut uses: Vec<Vec<bool>> = vec![Vec::new(); s.arcs.len()];
    for face in &s.faces {
        for side in &face.boundary {
            uses[side.arc].push(side.forward);
        }
    }
    let mut two = Vec::new();
    for (i, u) in uses.iter().enumerate() {
        if u.len() != 2 {
            two.push(format!("arc {i} lies on {} sides", u.len()));
        } else if u[0] == u[1] {
            two.push(format!("arc {i} is traversed twice in the same direction"));
        }
    }
    rep.push("arc-incidence", two);

    // Sphere: connected and chi = 2.
    let mut uf = UnionFind::new(nv);
    for a in &s.arcs {
        uf.union(a.tail, a.head);
    }
    let comps = (0..nv).filter(|&v| uf.find(v) == v).count();
    let chi = nv as i64 - s.arcs.len() as i64 + s.faces.len() as i64;
    let mut sphere = Vec::new();
    if comps != 1 {
        sphere.push(format!("{comps} components"));
    }
    if chi != 2 {
        sphere.push(format!("chi = {chi}"));
    }
    rep.push("sphere", sphere);

    let mut counts = Vec::new();
    if s.faces.len() != 2 * n {
        counts.push(format!("{} faces, expected {}", s.faces.len(), 2 * n));
    }
    if s.arcs.len() != n * len {
        counts.push(format!("{} arcs, expected {}", s.arcs.len(), n * len));
    }
    let expect_v = (n * len + 2).saturating_sub(2 * n);
    if nv != expect_v {
        counts.push(format!("{nv} vertices, expected {expect_v}"));
    }
    rep.push("cell-counts", counts);

    // Faces spell relators.
    let mut seen: BTreeMap<(usize, FaceSign), usize> = BTreeMap::new();
    let mut spell = Vec::new();
    for (f, face) in s.faces.iter().enumerate() {
        if face.relator >= n {
            spell.push(format!("face {} names relator {} outside rank", face.name, face.relator));
            continue;
        }
        *seen.entry((face.relator, face.sign)).or_default() += 1;
        let word = s.face_word(f).expect("references checked");
        if word != p.relator(face.relator).letters() {
            spell.push(format!("relator mismatch at {}", face.name));
        }
    }
    for i in 0..n {
        for sign in [FaceSign::Plus, FaceSign::Minus] {
            let c = seen.get(&(i, sign)).copied().unwrap_or(0);
            if c != 1 {
                spell.push(format!("{c} faces F_{i}^{sign}"));
            }
        }
    }
    rep.push("face-words", spell);

    // Pairing: an involution F_i^+ <-> F_i^- whose arc map follows the readings.
    let mut pair = Vec::new();
    let mut covered = vec![0usize; s.faces.len()];
    for (k, fp) in s.pairing.iter().enumerate() {
        let (Some(pf), Some(mf)) = (s.faces.get(fp.plus), s.faces.get(fp.minus)) else {
            pair.push(format!("pair {k} refers to a missing face"));
            continue;
        };
        covered[fp.plus] += 1;
        covered[fp.minus] += 1;
        if pf.sign != FaceSign::Plus || mf.sign != FaceSign::Minus || pf.relator != mf.relator {
            pair.push(format!("pair {k} matches {} with {}", pf.name, mf.name));
            continue;
        }
        let (rp, rm) = (s.reading(fp.plus).expect("checked"), s.reading(fp.minus).expect("checked"));
        if fp.arcs.len() != rp.len() || rp.len() != rm.len() {
            pair.push(format!("pair {}/{} has {} arc matches", pf.name, mf.name, fp.arcs.len()));
            continue;
        }
        for (j, &(a, b)) in fp.arcs.iter().enumerate() {
            if a != rp[j].arc || b != rm[j].arc {
                pair.push(format!("pair {}/{} letter {j} matches arc {a} with {b}", pf.name, mf.name));
            } else if s.arcs[a].label != s.arcs[b].label || rp[j].along != rm[j].along {
                pair.push(format!("pair {}/{} letter {j} matches incompatible arcs", pf.name, mf.name));
            }
        }
    }
    for (f, &c) in covered.iter().enumerate() {
        if c != 1 {
            pair.push(format!("face {} appears in {c} pairs", s.faces[f].name));
        }
    }
    rep.push("pairing", pair);
    rep
}
