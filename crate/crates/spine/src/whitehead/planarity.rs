//! Path-addition planarity testing (Demoucron–Malgrange–Pertuiset) with rotation output.

use std::collections::{BTreeSet, VecDeque};

/// Rotation system of a simple graph: `rot[v]` lists the neighbours of `v` in cyclic order.
///
/// Faces are traced by `next(u -> v) = v -> succ_v(u)`.
pub type SimpleRotation = Vec<Vec<usize>>;

/// Planar rotation system for a simple graph on `n` vertices, or `None` when non-planar.
/// Loops and repeated edges in the input are ignored.
pub fn embed_simple(n: usize, edges: &[(usize, usize)]) -> Option<SimpleRotation> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
    let mut rot: SimpleRotation = vec![Vec::new(); n];
    for block in biconnected_blocks(&adj) {
        let block_rot = embed_block(&block)?;
        for (v, order) in block_rot {
            rot[v].extend(order);
        }
    }
    Some(rot)
}

/// Edge sets of the biconnected components (bridges form their own block).
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour index)
        let mut dfs: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (v, parent, ref mut idx)) = dfs.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                dfs.pop();
                if let Some(&(u, _, _)) = dfs.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Embeds one biconnected block; returns the rotation at each of its vertices.
fn embed_block(block: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    if block.len() == 1 {
        let (a, b) = block[0];
        return Some(vec![(a, vec![b]), (b, vec![a])]);
    }
    let mut verts: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let m = verts.len();
    let mut adj = vec![Vec::new(); m];
    for &(a, b) in block {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }
    let edge_total = block.len();

    let cycle = find_cycle(&adj)?;
    let mut in_h = vec![false; m];
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        used.insert((a.min(b), a.max(b)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while used.len() < edge_total {
        let fragments = fragments(&adj, &in_h, &used);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("an unembedded edge leaves a fragment");
        let path = fragment_path(&adj, &in_h, &used, &fragments[fi]);
        for w in path.windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }

    // succ_v(u) = w for each face walk u -> v -> w
    let mut succ = vec![std::collections::BTreeMap::new(); m];
    for face in &faces {
        let len = face.len();
        for i in 0..len {
            let (u, v, w) = (face[i], face[(i + 1) % len], face[(i + 2) % len]);
            succ[v].insert(u, w);
        }
    }
    let mut out = Vec::with_capacity(m);
    for v in 0..m {
        let start = adj[v][0];
        let mut order = vec![verts[start]];
        let mut cur = start;
        loop {
            cur = *succ[v].get(&cur)?;
            if cur == start {
                break;
            }
            order.push(verts[cur]);
            if order.len() > adj[v].len() {
                return None;
            }
        }
        if order.len() != adj[v].len() {
            return None;
        }
        out.push((verts[v], order));
    }
    Some(out)
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let m = adj.len();
    let mut parent = vec![usize::MAX; m];
    let mut depth = vec![usize::MAX; m];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let w = adj[v][*idx];
            *idx += 1;
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cyc = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cyc.push(x);
                }
                return Some(cyc);
            }
        } else {
            stack.pop();
        }
    }
    None
}

struct Fragment {
    /// Interior vertices (empty for a chord).
    interior: Vec<usize>,
    attachments: BTreeSet<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], used: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let m = adj.len();
    let mut out = Vec::new();
    for a in 0..m {
        if !in_h[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b && in_h[b] && !used.contains(&(a, b)) {
                out.push(Fragment { interior: Vec::new(), attachments: [a, b].into(), chord: Some((a, b)) });
            }
        }
    }
    let mut seen = vec![false; m];
    for s in 0..m {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut interior = Vec::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            interior.push(v);
            for &w in &adj[v] {
                if in_h[w] {
                    attachments.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { interior, attachments, chord: None });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], _used: &BTreeSet<(usize, usize)>, frag: &Fragment) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let inside: BTreeSet<usize> = frag.interior.iter().copied().collect();
    let a = *frag.attachments.iter().next().unwrap();
    let x = *adj[a].iter().find(|w| inside.contains(w)).unwrap();
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([x]);
    prev[x] = x;
    while let Some(v) = queue.pop_front() {
        if let Some(&b) = adj[v].iter().find(|&&w| in_h[w] && w != a) {
            let mut path = vec![b, v];
            let mut cur = v;
            while cur != x {
                cur = prev[cur];
                path.push(cur);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[v] {
            if inside.contains(&w) && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected block have two attachments")
}

/// Splits an oriented face along `path` (whose ends lie on the face).
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let len = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let ia = face.iter().position(|&v| v == a).unwrap();
    let ib = face.iter().position(|&v| v == b).unwrap();
    let arc = |from: usize, to: usize| {
        let mut v = vec![face[from]];
        let mut i = from;
        while i != to {
            i = (i + 1) % len;
            v.push(face[i]);
        }
        v
    };
    let inner = &path[1..path.len() - 1];
    let mut f1 = arc(ia, ib);
    f1.extend(inner.iter().rev());
    let mut f2 = arc(ib, ia);
    f2.extend(inner.iter());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::embed_simple;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(embed_simple(4, &complete(4)).is_some());
        assert!(embed_simple(5, &complete(5)).is_none());
        let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        assert!(embed_simple(6, &k33).is_none());
        let mut k33_minus = k33.clone();
        k33_minus.pop();
        assert!(embed_simple(6, &k33_minus).is_some());
    }

    #[test]
    fn rotation_lists_every_neighbour_once() {
        let edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (0, 1)];
        let rot = embed_simple(5, &edges).unwrap();
        assert_eq!(rot[4], Vec::<usize>::new());
        assert_eq!(rot[3], [2]);
        let mut around_two = rot[2].clone();
        around_two.sort();
        assert_eq!(around_two, [0, 1, 3]);
    }
}
