use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;

use super::scheme::{Arc, Face, FacePair, FacePairingScheme, FaceSign, Side};
use super::PolyhedraError;
use crate::presentations::{build_family, CyclicPresentation, FamilySpec};
use crate::whitehead::planarity::embed_simple;
use crate::whitehead::{RotationSystem, Vertex};

/// Parallel corner edges between one pair of Whitehead vertices (`a < b`).
struct Bundle {
    a: usize,
    b: usize,
    edges: Vec<usize>,
    base_a: usize,
    base_b: usize,
}

/// `P_pos + P_neg ≡ c[gen]` for one letter occurrence.
struct Constraint {
    gen: usize,
    pos: (usize, usize),
    neg: (usize, usize),
}

struct Layout {
    len: usize,
    ends: Vec<(usize, usize)>,
    simple: Vec<Vec<usize>>,
    bundles: Vec<Bundle>,
    bundle_of: Vec<usize>,
    degree: Vec<usize>,
    constraints: Vec<Constraint>,
}

impl Layout {
    fn new(p: &CyclicPresentation, simple: Vec<Vec<usize>>) -> Result<Layout, PolyhedraError> {
        let n = p.rank();
        let rels = p.relators();
        let len = p.defining_word().len();
        let mut ends = Vec::with_capacity(n * len);
        for w in &rels {
            let ls = w.letters();
            for j in 0..len {
                let from = Vertex::exit(ls[j]).id(n);
                let to = Vertex::entry(ls[(j + 1) % len]).id(n);
                if from == to {
                    return Err(PolyhedraError::Unsupported("relator is not cyclically reduced".into()));
                }
                ends.push((from, to));
            }
        }
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (e, &(u, v)) in ends.iter().enumerate() {
            by_pair.entry((u.min(v), u.max(v))).or_default().push(e);
        }
        let mut bundles = Vec::new();
        let mut index = HashMap::new();
        let mut bundle_of = vec![0; ends.len()];
        for ((a, b), edges) in by_pair {
            for &e in &edges {
                bundle_of[e] = bundles.len();
            }
            index.insert((a, b), bundles.len());
            bundles.push(Bundle { a, b, edges, base_a: 0, base_b: 0 });
        }
        let mut degree = vec![0; 2 * n];
        for (v, nbrs) in simple.iter().enumerate() {
            for &w in nbrs {
                let k = index[&(v.min(w), v.max(w))];
                let m = bundles[k].edges.len();
                if v == bundles[k].a {
                    bundles[k].base_a = degree[v];
                } else {
                    bundles[k].base_b = degree[v];
                }
                degree[v] += m;
            }
        }
        let mut constraints = Vec::new();
        for (i, w) in rels.iter().enumerate() {
            for (j, l) in w.letters().iter().enumerate() {
                let e_out = i * len + j;
                let e_in = i * len + (j + len - 1) % len;
                let (pv, nv) = (Vertex::Pos(l.generator).id(n), Vertex::Neg(l.generator).id(n));
                let (pos, neg) = if l.sign > 0 { ((e_out, pv), (e_in, nv)) } else { ((e_in, pv), (e_out, nv)) };
                constraints.push(Constraint { gen: l.generator, pos, neg });
            }
        }
        Ok(Layout { len, ends, simple, bundles, bundle_of, degree, constraints })
    }

    /// Position of corner edge `e` in the rotation at `v` when it takes slot `t` of its bundle.
    fn position(&self, e: usize, v: usize, t: usize) -> usize {
        let b = &self.bundles[self.bundle_of[e]];
        if v == b.a {
            b.base_a + t
        } else {
            b.base_b + b.edges.len() - 1 - t
        }
    }

    /// Slot giving position `pos` at `v`, if that position belongs to `e`'s bundle.
    fn slot_for(&self, e: usize, v: usize, pos: usize) -> Option<usize> {
        let b = &self.bundles[self.bundle_of[e]];
        let m = b.edges.len();
        let base = if v == b.a { b.base_a } else { b.base_b };
        let t = pos.checked_sub(base).filter(|&t| t < m)?;
        Some(if v == b.a { t } else { m - 1 - t })
    }

    fn rotation(&self, slots: &[usize]) -> RotationSystem {
        let mut rotation = vec![Vec::new(); self.simple.len()];
        for (v, nbrs) in self.simple.iter().enumerate() {
            for &w in nbrs {
                let k = self.bundle_of_pair(v, w);
                let b = &self.bundles[k];
                let mut order = b.edges.clone();
                order.sort_by_key(|&e| slots[e]);
                if v != b.a {
                    order.reverse();
                }
                for e in order {
                    rotation[v].push(if self.ends[e].0 == v { 2 * e } else { 2 * e + 1 });
                }
            }
        }
        RotationSystem::new(self.simple.len(), self.ends.clone(), rotation).expect("layout darts are complete")
    }

    fn bundle_of_pair(&self, v: usize, w: usize) -> usize {
        let (a, b) = (v.min(w), v.max(w));
        self.bundles.iter().position(|x| x.a == a && x.b == b).expect("edge of the simple graph")
    }
}

#[derive(Clone)]
struct State {
    slot: Vec<Option<usize>>,
    taken: Vec<Vec<bool>>,
    c: Vec<Option<usize>>,
}

impl State {
    fn set(&mut self, lay: &Layout, e: usize, t: usize) -> bool {
        match self.slot[e] {
            Some(s) => s == t,
            None => {
                let b = lay.bundle_of[e];
                if self.taken[b][t] {
                    return false;
                }
                self.taken[b][t] = true;
                self.slot[e] = Some(t);
                true
            }
        }
    }
}

fn propagate(lay: &Layout, st: &mut State) -> bool {
    loop {
        let mut changed = false;
        for k in &lay.constraints {
            let modulus = lay.degree[k.pos.1];
            let known = |end: (usize, usize), st: &State| st.slot[end.0].map(|t| lay.position(end.0, end.1, t));
            match (known(k.pos, st), known(k.neg, st), st.c[k.gen]) {
                (Some(a), Some(b), None) => {
                    st.c[k.gen] = Some((a + b) % modulus);
                    changed = true;
                }
                (Some(a), Some(b), Some(c)) => {
                    if (a + b) % modulus != c {
                        return false;
                    }
                }
                (Some(a), None, Some(c)) | (None, Some(a), Some(c)) => {
                    let other = if st.slot[k.pos.0].is_some() { k.neg } else { k.pos };
                    let want = (c + modulus - a) % modulus;
                    match lay.slot_for(other.0, other.1, want) {
                        Some(t) if st.set(lay, other.0, t) => changed = true,
                        _ => return false,
                    }
                }
                _ => {}
            }
        }
        for (bi, b) in lay.bundles.iter().enumerate() {
            let free: Vec<usize> = b.edges.iter().copied().filter(|&e| st.slot[e].is_none()).collect();
            if free.len() == 1 {
                let t = (0..b.edges.len()).find(|&t| !st.taken[bi][t]).expect("one slot left");
                st.set(lay, free[0], t);
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Depth-first search over bundle orders; `visit` returns true to stop.
fn search(lay: &Layout, mut st: State, budget: &mut usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if *budget == 0 {
        return true;
    }
    *budget -= 1;
    if !propagate(lay, &mut st) {
        return false;
    }
    let pick = (0..st.slot.len())
        .filter(|&e| st.slot[e].is_none())
        .min_by_key(|&e| lay.bundles[lay.bundle_of[e]].edges.iter().filter(|&&x| st.slot[x].is_none()).count());
    let Some(e) = pick else {
        let slots: Vec<usize> = st.slot.iter().map(|s| s.expect("complete")).collect();
        return visit(&slots);
    };
    let b = lay.bundle_of[e];
    for t in 0..lay.bundles[b].edges.len() {
        if st.taken[b][t] {
            continue;
        }
        let mut next = st.clone();
        next.set(lay, e, t);
        if search(lay, next, budget, visit) {
            return true;
        }
    }
    false
}

/// Scheme with vertex ids given by the Whitehead faces of one embedding.
fn assemble(p: &CyclicPresentation, lay: &Layout, rs: &RotationSystem) -> Option<(FacePairingScheme, Vec<Vec<usize>>)> {
    let n = p.rank();
    let len = lay.len;
    let (_, face_of) = rs.face_of_darts();
    let mut arc_key: HashMap<(usize, usize), usize> = HashMap::new();
    let mut arcs: Vec<Arc> = Vec::new();
    let mut faces = Vec::new();
    let mut pairing = Vec::new();
    // corners[face][j] = vertex at corner j (after letter j).
    let mut corners = Vec::new();
    for (i, w) in p.relators().iter().enumerate() {
        let mut readings = Vec::new();
        for sign in [FaceSign::Plus, FaceSign::Minus] {
            let off = usize::from(sign == FaceSign::Minus);
            let corner: Vec<usize> = (0..len).map(|j| face_of[2 * (i * len + j) + off]).collect();
            let mut read = Vec::with_capacity(len);
            for (j, l) in w.letters().iter().enumerate() {
                let e_out = i * len + j;
                let e_in = i * len + (j + len - 1) % len;
                let pv = Vertex::Pos(l.generator).id(n);
                let deg = rs.rotation(pv).len();
                let (dart, out_end) = if l.sign > 0 { (2 * e_out, true) } else { (2 * e_in + 1, false) };
                let at = rs.position(dart);
                let before = out_end == (sign == FaceSign::Plus);
                let angle = if before { (at + deg - 1) % deg } else { at };
                let (prev, cur) = (corner[(j + len - 1) % len], corner[j]);
                let (tail, head) = if l.sign > 0 { (prev, cur) } else { (cur, prev) };
                let id = *arc_key.entry((l.generator, angle)).or_insert_with(|| {
                    arcs.push(Arc { id: arcs.len(), tail, head, label: l.generator });
                    arcs.len() - 1
                });
                if arcs[id].tail != tail || arcs[id].head != head {
                    return None;
                }
                read.push((id, l.sign > 0));
            }
            let boundary: Vec<Side> = match sign {
                FaceSign::Plus => read.iter().map(|&(arc, along)| Side { arc, forward: along }).collect(),
                FaceSign::Minus => (0..len)
                    .map(|t| read[(len - t) % len])
                    .map(|(arc, along)| Side { arc, forward: !along })
                    .collect(),
            };
            faces.push(Face { name: format!("F_{i}^{sign}"), relator: i, sign, boundary });
            corners.push(corner);
            readings.push(read);
        }
        pairing.push(FacePair {
            plus: 2 * i,
            minus: 2 * i + 1,
            arcs: readings[0].iter().zip(&readings[1]).map(|(a, b)| (a.0, b.0)).collect(),
        });
    }
    let nv = face_of.iter().copied().max().map_or(0, |m| m + 1);
    let scheme = FacePairingScheme {
        vertices: (0..nv).map(|v| format!("q{v}")).collect(),
        arcs,
        faces: faces.clone(),
        pairing,
        basepoints: vec![0; faces.len()],
    };
    Some((scheme, corners))
}

/// Vertex name pattern on `F_0^±`; subscripts shift with the face index.
#[derive(Clone, Copy, Debug)]
enum Tpl {
    North,
    South,
    Fam(char, i64, Option<usize>),
}

struct Templates {
    plus: Option<Vec<Tpl>>,
    minus: Option<Vec<Tpl>>,
    /// Odd-indexed faces follow the opposite sign's pattern with the poles exchanged.
    alternate: bool,
}

fn u(c: char, s: i64) -> Tpl {
    Tpl::Fam(c, s, None)
}

fn us(c: char, s: i64, sup: usize) -> Tpl {
    Tpl::Fam(c, s, Some(sup))
}

fn templates(spec: FamilySpec) -> Option<Templates> {
    use Tpl::{North as N, South as S};
    match spec.normalized() {
        FamilySpec::H { r, .. } => {
            let mut plus = vec![N; r];
            plus[r - 1] = S;
            for (j, t) in plus.iter_mut().enumerate().take(r - 1).skip(1) {
                *t = us('w', 0, r - j);
            }
            Some(Templates { plus: Some(plus), minus: None, alternate: false })
        }
        FamilySpec::G { k, l, f, .. } => {
            let f = f as i64;
            let (plus, minus) = match (k, l) {
                (1, 1) => (None, Some(vec![u('u', 0), u('u', 2), N])),
                (k, 1) => {
                    let len = k + 2;
                    let mut minus = vec![N; len];
                    minus[0] = u('u', 0);
                    minus[1] = u('v', f);
                    for (c, t) in minus.iter_mut().enumerate().take(k).skip(2) {
                        *t = us('w', f, c - 1);
                    }
                    minus[k] = u('u', 2);
                    let mut plus = vec![N; len];
                    plus[len - 1] = u('u', 1 - f);
                    plus[0] = u('v', 0);
                    for (c, t) in plus.iter_mut().enumerate().take(k - 1).skip(1) {
                        *t = us('w', 0, c);
                    }
                    plus[k - 1] = u('u', 2 - f);
                    plus[k] = u('v', 1);
                    (Some(plus), Some(minus))
                }
                (1, l) => {
                    let len = 2 * l + 1;
                    let mut minus = vec![N; len];
                    for (j, t) in minus.iter_mut().enumerate().take(l - 1) {
                        *t = us('u', 0, j + 1);
                    }
                    minus[l - 1] = u('w', -1);
                    minus[l] = u('w', 1);
                    for c in 1..l {
                        minus[l + c] = us('u', 2, l - c);
                    }
                    let mut plus = vec![N; len];
                    plus[2 * l] = u('w', 0);
                    for (j, t) in plus.iter_mut().enumerate().take(l - 2) {
                        *t = us('t', 0, j + 1);
                    }
                    plus[l - 2] = u('v', -1);
                    plus[l - 1] = u('v', 0);
                    plus[l] = u('v', 1);
                    for c in 1..l - 1 {
                        plus[l + c] = us('t', 2, l - 1 - c);
                    }
                    plus[2 * l - 1] = u('w', 2);
                    (Some(plus), Some(minus))
                }
                (5, 2) => (
                    Some(vec![
                        u('t', 0),
                        u('v', 0),
                        us('w', 0, 1),
                        us('w', 0, 2),
                        u('u', 2 - 2 * f),
                        u('t', 1),
                        u('v', 1),
                        u('r', 1 - 2 * f),
                        u('u', 1 - 2 * f),
                    ]),
                    Some(vec![
                        u('s', 0),
                        u('u', 0),
                        u('r', 0),
                        u('v', 2 * f),
                        us('w', 2 * f, 1),
                        us('w', 2 * f, 2),
                        u('u', 2),
                        u('s', 2),
                        N,
                    ]),
                ),
                (2, 5) => (
                    Some(vec![
                        us('t', 0, 1),
                        us('t', 0, 2),
                        u('v', -1),
                        u('s', -1),
                        u('v', 0),
                        u('s', 0),
                        u('v', 1),
                        us('t', 2, 2),
                        us('t', 2, 1),
                        u('w', 2),
                        u('r', 0),
                        u('w', 0),
                    ]),
                    Some(vec![
                        us('u', 0, 1),
                        us('u', 0, 2),
                        us('u', 0, 3),
                        us('u', 0, 4),
                        u('w', f - 1),
                        u('r', f - 1),
                        u('w', f + 1),
                        us('u', 2, 4),
                        us('u', 2, 3),
                        us('u', 2, 2),
                        us('u', 2, 1),
                        N,
                    ]),
                ),
                _ => return None,
            };
            Some(Templates { plus, minus, alternate: true })
        }
        FamilySpec::F { .. } => unreachable!("normalized"),
    }
}

fn render(t: Tpl, shift: usize, n: usize, flip: bool) -> String {
    match t {
        Tpl::North => if flip { "S" } else { "N" }.to_string(),
        Tpl::South => if flip { "N" } else { "S" }.to_string(),
        Tpl::Fam(c, s, sup) => {
            let idx = (s + shift as i64).mod_floor(&(n as i64));
            match sup {
                Some(k) => format!("{c}_{idx}^{k}"),
                None => format!("{c}_{idx}"),
            }
        }
    }
}

/// Names every vertex from the templates, or `None` if they disagree with the scheme.
fn apply_names(s: &FacePairingScheme, corners: &[Vec<usize>], t: &Templates, n: usize) -> Option<Vec<String>> {
    let mut names: Vec<Option<String>> = vec![None; s.vertices.len()];
    let mut owner: HashMap<String, usize> = HashMap::new();
    for (fi, face) in s.faces.iter().enumerate() {
        let odd = t.alternate && face.relator % 2 == 1;
        let tpl = match (face.sign, odd) {
            (FaceSign::Plus, false) | (FaceSign::Minus, true) => &t.plus,
            _ => &t.minus,
        };
        let Some(tpl) = tpl else { continue };
        for (j, &v) in corners[fi].iter().enumerate() {
            let name = render(tpl[j], face.relator, n, odd);
            if let Some(prev) = &names[v] {
                if *prev != name {
                    return None;
                }
            }
            if let Some(&w) = owner.get(&name) {
                if w != v {
                    return None;
                }
            }
            owner.insert(name.clone(), v);
            names[v] = Some(name);
        }
    }
    names.into_iter().collect()
}

/// Renumbers vertices by first appearance along the face readings.
fn canonical_order(mut s: FacePairingScheme) -> FacePairingScheme {
    let mut map = vec![usize::MAX; s.vertices.len()];
    let mut next = 0;
    for f in 0..s.faces.len() {
        for side in s.reading(f).expect("assembled scheme is well formed") {
            for v in [side.from, side.to] {
                if map[v] == usize::MAX {
                    map[v] = next;
                    next += 1;
                }
            }
        }
    }
    let mut names = vec![String::new(); s.vertices.len()];
    for (v, name) in s.vertices.iter().enumerate() {
        names[map[v]] = name.clone();
    }
    s.vertices = names;
    for a in &mut s.arcs {
        a.tail = map[a.tail];
        a.head = map[a.head];
    }
    s
}

const SEARCH_BUDGET: usize = 200_000;

/// Face-pairing polyhedron realising `p`, read off a planar embedding of its Whitehead graph.
///
/// Parallel corner edges are ordered so that around each generator the occurrences at
/// `v_x` and `v'_x` run in opposite cyclic orders; each solution is offered to `accept`
/// together with the corner vertices of every face.
fn search_schemes(
    p: &CyclicPresentation,
    accept: &mut dyn FnMut(&FacePairingScheme, &[Vec<usize>]) -> Option<Vec<String>>,
) -> Result<FacePairingScheme, PolyhedraError> {
    let n = p.rank();
    let g = crate::whitehead::whitehead_graph(p);
    let simple_edges: Vec<(usize, usize)> =
        g.edges().keys().filter(|(a, b)| a != b).map(|&(a, b)| (a.id(n), b.id(n))).collect();
    let simple = embed_simple(2 * n, &simple_edges).ok_or(PolyhedraError::NonPlanar)?;
    for mirror in [false, true] {
        let rot: Vec<Vec<usize>> =
            if mirror { simple.iter().map(|r| r.iter().rev().copied().collect()).collect() } else { simple.clone() };
        let lay = Layout::new(p, rot)?;
        let mut st = State {
            slot: vec![None; lay.ends.len()],
            taken: lay.bundles.iter().map(|b| vec![false; b.edges.len()]).collect(),
            c: vec![None; n],
        };
        for (bi, b) in lay.bundles.iter().enumerate() {
            if b.edges.len() == 1 {
                st.slot[b.edges[0]] = Some(0);
                st.taken[bi][0] = true;
            }
        }
        let mut found = None;
        let mut budget = SEARCH_BUDGET;
        search(&lay, st, &mut budget, &mut |slots| {
            let rs = lay.rotation(slots);
            let Some((scheme, corners)) = assemble(p, &lay, &rs) else { return false };
            match accept(&scheme, &corners) {
                Some(names) => {
                    found = Some(FacePairingScheme { vertices: names, ..scheme });
                    true
                }
                None => false,
            }
        });
        if let Some(s) = found {
            return Ok(canonical_order(s));
        }
    }
    Err(PolyhedraError::NoScheme)
}

/// Face-pairing polyhedron for any presentation whose Whitehead graph embeds suitably,
/// with generic vertex names `q0, q1, ...`.
pub fn scheme_from_embedding(p: &CyclicPresentation) -> Result<FacePairingScheme, PolyhedraError> {
    search_schemes(p, &mut |s, _| Some(s.vertices.clone()))
}

/// Whether `spec` lies in the range where the family polyhedra are known.
pub fn supported(spec: FamilySpec) -> Result<(), PolyhedraError> {
    spec.validate()?;
    match spec.normalized() {
        FamilySpec::H { r, n } => {
            if r < 2 || n.gcd(&r) != 1 {
                return Err(PolyhedraError::Hypothesis(format!("H({r},{n}) needs r > 1 and gcd(r,n) = 1")));
            }
        }
        FamilySpec::G { k, l, n, f } => {
            if !(l == 1 || k == 1 || (k, l) == (5, 2) || (k, l) == (2, 5)) {
                return Err(PolyhedraError::Unsupported(format!("shape (k,l) = ({k},{l})")));
            }
            if n < 4 || n % 2 == 1 || f % 2 == 1 || (f * k) % n != 0 {
                return Err(PolyhedraError::Hypothesis(format!(
                    "G({k},{l},{n},{f}) needs n >= 4 even, f even and fk = 0 mod n"
                )));
            }
        }
        FamilySpec::F { .. } => unreachable!("normalized"),
    }
    Ok(())
}

/// The family polyhedron, with vertices named as in the figures (poles `N`, `S` and
/// subscripted chains `u_i`, `v_i`, `w_i^j`, ...).
pub fn build_scheme(spec: FamilySpec) -> Result<FacePairingScheme, PolyhedraError> {
    supported(spec)?;
    let p = build_family(spec)?;
    let t = templates(spec).ok_or_else(|| PolyhedraError::Unsupported(spec.to_string()))?;
    let n = p.rank();
    search_schemes(&p, &mut |s, corners| apply_names(s, corners, &t, n))
}
