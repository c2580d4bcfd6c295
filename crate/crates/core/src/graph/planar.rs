//! Planarity testing that produces a rotation system.
//!
//! Each biconnected block is embedded with the Demoucron–Malgrange–Pertuiset
//! path-addition algorithm; block rotations are then concatenated at cut
//! vertices. Rotations use the convention of [`trace_faces`]: the dart after
//! `u -> v` is `v -> w` where `w` follows `u` in the cyclic order at `v`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::embedding::{OuterChoice, PlanarEmbedding};
use super::{Graph, GraphError, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

impl fmt::Display for KuratowskiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KuratowskiKind::K5 => write!(f, "K5"),
            KuratowskiKind::K33 => write!(f, "K3,3"),
        }
    }
}

/// Edge set of a subdivision of K5 or K3,3 contained in a non-planar graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub edges: Vec<(VertexId, VertexId)>,
}

/// Computes a planar embedding of a connected graph.
///
/// `outer_hint` names the outer face by its vertex set; without it the
/// longest face wins, ties going to the least canonical vertex sequence.
pub fn planar_embed(g: &Graph, outer_hint: Option<&[VertexId]>) -> Result<PlanarEmbedding, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let rotation = match rotation_system(g) {
        Some(r) => r,
        None => return Err(GraphError::NotPlanar(kuratowski_witness(g))),
    };
    let outer = match outer_hint {
        Some(vs) => OuterChoice::Vertices(vs.to_vec()),
        None => OuterChoice::Longest,
    };
    PlanarEmbedding::from_rotation(g.clone(), rotation, outer)
}

/// True iff every connected component is planar.
pub fn is_planar(g: &Graph) -> bool {
    rotation_system(g).is_some()
}

/// A planar rotation system for every component of `g`, or `None`.
pub fn rotation_system(g: &Graph) -> Option<Vec<Vec<VertexId>>> {
    let n = g.vertex_count();
    let mut rot = vec![Vec::new(); n];
    for block in biconnected_blocks(g) {
        let block_rot = if block.len() == 1 {
            let (u, v) = block[0];
            let mut r = vec![Vec::new(); n];
            r[u].push(v);
            r[v].push(u);
            r
        } else {
            embed_block(n, &block)?
        };
        for (v, r) in block_rot.into_iter().enumerate() {
            rot[v].extend(r);
        }
    }
    Some(rot)
}

/// Faces of a rotation system as closed dart walks.
pub fn trace_faces(rot: &[Vec<VertexId>]) -> Vec<Vec<(VertexId, VertexId)>> {
    let mut seen: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut faces = Vec::new();
    for u in 0..rot.len() {
        for &v in &rot[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let mut dart = (u, v);
            while seen.insert(dart) {
                walk.push(dart);
                dart = next_dart(rot, dart);
            }
            faces.push(walk);
        }
    }
    faces
}

pub(crate) fn next_dart(rot: &[Vec<VertexId>], (u, v): (VertexId, VertexId)) -> (VertexId, VertexId) {
    let r = &rot[v];
    let i = r.iter().position(|&x| x == u).expect("rotation lists every neighbour");
    (v, r[(i + 1) % r.len()])
}

/// Edge sets of the biconnected blocks (bridges are one-edge blocks).
pub fn biconnected_blocks(g: &Graph) -> Vec<Vec<(VertexId, VertexId)>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(VertexId, VertexId)>,
        blocks: Vec<Vec<(VertexId, VertexId)>>,
    }
    fn dfs(st: &mut State, u: VertexId, parent: Option<VertexId>) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for &v in st.g.neighbors(u) {
            if Some(v) == parent {
                continue;
            }
            if st.disc[v] == 0 {
                st.stack.push((u, v));
                dfs(st, v, Some(u));
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (u, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    st.blocks.push(block);
                }
            } else if st.disc[v] < st.disc[u] {
                st.stack.push((u, v));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }
    let n = g.vertex_count();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for s in 0..n {
        if st.disc[s] == 0 {
            dfs(&mut st, s, None);
        }
    }
    st.blocks
}

enum Fragment {
    Chord(VertexId, VertexId),
    Component {
        attachments: BTreeSet<VertexId>,
        vertices: BTreeSet<VertexId>,
    },
}

impl Fragment {
    fn attachments(&self) -> BTreeSet<VertexId> {
        match self {
            Fragment::Chord(u, v) => BTreeSet::from([*u, *v]),
            Fragment::Component { attachments, .. } => attachments.clone(),
        }
    }
}

/// Path-addition embedding of one 2-connected block with at least 3 vertices.
fn embed_block(n: usize, block: &[(VertexId, VertexId)]) -> Option<Vec<Vec<VertexId>>> {
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(u, v) in block {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let key = |u: VertexId, v: VertexId| (u.min(v), u.max(v));
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut rot: Vec<Vec<VertexId>> = vec![Vec::new(); n];

    // initial cycle through the first edge
    let (a, b) = block[0];
    let path = bfs_path(&adj, a, b, |x, y| key(x, y) != key(a, b))?;
    let k = path.len();
    for i in 0..k {
        let v = path[i];
        in_h[v] = true;
        rot[v] = vec![path[(i + k - 1) % k], path[(i + 1) % k]];
        h_edges.insert(key(v, path[(i + 1) % k]));
    }

    while h_edges.len() < block.len() {
        let faces = trace_faces(&rot)
            .into_iter()
            .map(|walk| walk.into_iter().map(|(u, _)| u).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        let fragments = fragments(&adj, &in_h, &h_edges);
        let mut best: Option<(usize, usize, usize)> = None; // (count, fragment, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let att = frag.attachments();
            let admissible = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| att.iter().all(|x| f.contains(x)))
                .map(|(i, _)| i)
                .collect::<Vec<_>>();
            if admissible.is_empty() {
                return None;
            }
            if best.is_none_or(|(c, _, _)| admissible.len() < c) {
                best = Some((admissible.len(), fi, admissible[0]));
            }
        }
        let (_, fi, face) = best?;
        let path = match &fragments[fi] {
            Fragment::Chord(u, v) => vec![*u, *v],
            Fragment::Component { attachments, vertices } => {
                let a = *attachments.iter().next().unwrap();
                fragment_path(&adj, a, attachments, vertices)?
            }
        };
        let f = &faces[face];
        let incoming = |x: VertexId| {
            let i = f.iter().position(|&y| y == x).unwrap();
            f[(i + f.len() - 1) % f.len()]
        };
        let m = path.len() - 1;
        let (p0, pm) = (path[0], path[m]);
        let (x0, xm) = (incoming(p0), incoming(pm));
        let i0 = rot[p0].iter().position(|&y| y == x0).unwrap();
        rot[p0].insert(i0 + 1, path[1]);
        let im = rot[pm].iter().position(|&y| y == xm).unwrap();
        rot[pm].insert(im + 1, path[m - 1]);
        for i in 1..m {
            rot[path[i]] = vec![path[i - 1], path[i + 1]];
        }
        for i in 0..m {
            in_h[path[i]] = true;
            h_edges.insert(key(path[i], path[i + 1]));
        }
        in_h[pm] = true;
    }
    Some(rot)
}

fn fragments(adj: &[Vec<VertexId>], in_h: &[bool], h_edges: &HashSet<(VertexId, VertexId)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        for &v in &adj[u] {
            if u < v && in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
                out.push(Fragment::Chord(u, v));
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] || adj[s].is_empty() {
            continue;
        }
        let mut vertices = BTreeSet::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            vertices.insert(u);
            for &v in &adj[u] {
                if in_h[v] {
                    attachments.insert(v);
                } else if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        out.push(Fragment::Component { attachments, vertices });
    }
    out
}

/// Shortest path from `s` to `t` using only edges accepted by `edge_ok`.
fn bfs_path(
    adj: &[Vec<VertexId>],
    s: VertexId,
    t: VertexId,
    edge_ok: impl Fn(VertexId, VertexId) -> bool,
) -> Option<Vec<VertexId>> {
    bfs_until(adj, s, edge_ok, |v| v == t)
}

/// Path from attachment `a` through the fragment's interior to another attachment.
fn fragment_path(
    adj: &[Vec<VertexId>],
    a: VertexId,
    attachments: &BTreeSet<VertexId>,
    vertices: &BTreeSet<VertexId>,
) -> Option<Vec<VertexId>> {
    bfs_until(
        adj,
        a,
        |u, v| (u == a || vertices.contains(&u)) && (vertices.contains(&v) || (u != a && attachments.contains(&v))),
        |v| v != a && attachments.contains(&v),
    )
}

fn bfs_until(
    adj: &[Vec<VertexId>],
    s: VertexId,
    edge_ok: impl Fn(VertexId, VertexId) -> bool,
    is_goal: impl Fn(VertexId) -> bool,
) -> Option<Vec<VertexId>> {
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    prev[s] = s;
    let mut queue = VecDeque::from([s]);
    let mut found = None;
    'search: while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if prev[v] != usize::MAX || !edge_ok(u, v) {
                continue;
            }
            prev[v] = u;
            if is_goal(v) {
                found = Some(v);
                break 'search;
            }
            queue.push_back(v);
        }
    }
    let mut v = found?;
    let mut path = vec![v];
    while v != s {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    Some(path)
}

/// Every planar embedding of a connected graph: each rotation system of
/// genus zero, once with every face as the outer face. Exponential in the
/// number of vertices; meant for small graphs.
pub fn all_embeddings(g: &Graph) -> Vec<PlanarEmbedding> {
    let orders = (0..g.vertex_count())
        .map(|v| cyclic_orders(g.neighbors(v)))
        .collect::<Vec<_>>();
    let faces_needed = (g.edge_count() + 2).checked_sub(g.vertex_count());
    let mut out = Vec::new();
    let mut pick = vec![0usize; orders.len()];
    loop {
        let rot = pick.iter().zip(&orders).map(|(&k, o)| o[k].clone()).collect::<Vec<_>>();
        let faces = trace_faces(&rot);
        if Some(faces.len()) == faces_needed {
            for f in &faces {
                let (u, v) = f[0];
                if let Ok(e) = PlanarEmbedding::from_rotation(g.clone(), rot.clone(), OuterChoice::Dart(u, v)) {
                    out.push(e);
                }
            }
        }
        // odometer
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < orders[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            return out;
        }
    }
}

/// All cyclic orders of `items`, each starting with the first item.
fn cyclic_orders(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    fn permute(rest: &mut Vec<VertexId>, k: usize, out: &mut Vec<Vec<VertexId>>) {
        if k == rest.len() {
            out.push(rest.clone());
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, out);
            rest.swap(k, i);
        }
    }
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut tails = Vec::new();
    permute(&mut rest.to_vec(), 0, &mut tails);
    tails.sort();
    tails
        .into_iter()
        .map(|t| std::iter::once(first).chain(t).collect())
        .collect()
}

/// Minimal non-planar edge subset, found by greedy edge deletion, and its
/// classification by branch-vertex degrees.
pub fn kuratowski_witness(g: &Graph) -> Option<KuratowskiWitness> {
    if is_planar(g) {
        return None;
    }
    let mut edges = g.edges();
    let mut i = 0;
    while i < edges.len() {
        let mut trial = edges.clone();
        trial.remove(i);
        if !is_planar(&g.with_edges(&trial)) {
            edges = trial;
        } else {
            i += 1;
        }
    }
    let sub = g.with_edges(&edges);
    let branch = (0..sub.vertex_count())
        .filter(|&v| sub.degree(v) >= 3)
        .collect::<Vec<_>>();
    let kind = if branch.len() == 5 && branch.iter().all(|&v| sub.degree(v) == 4) {
        KuratowskiKind::K5
    } else if branch.len() == 6 && branch.iter().all(|&v| sub.degree(v) == 3) {
        KuratowskiKind::K33
    } else {
        return None;
    };
    Some(KuratowskiWitness { kind, edges })
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    fn euler_ok(g: &Graph, rot: &[Vec<VertexId>]) -> bool {
        let f = trace_faces(rot).len();
        g.vertex_count() + f == g.edge_count() + 2
    }

    #[test]
    fn embeds_planar_cubic_graphs() {
        for g in [k4(), prism(), cube(), sliced_prism(), two_edge_connected_cubic()] {
            let rot = rotation_system(&g).expect("planar");
            assert!(euler_ok(&g, &rot));
        }
    }

    #[test]
    fn face_counts() {
        assert_eq!(trace_faces(&rotation_system(&k4()).unwrap()).len(), 4);
        assert_eq!(trace_faces(&rotation_system(&cube()).unwrap()).len(), 6);
        assert_eq!(trace_faces(&rotation_system(&prism()).unwrap()).len(), 5);
    }

    #[test]
    fn petersen_is_not_planar() {
        assert!(rotation_system(&petersen()).is_none());
        match planar_embed(&petersen(), None) {
            Err(GraphError::NotPlanar(Some(w))) => {
                // Petersen contains K3,3 subdivisions but no K5 subdivision
                assert_eq!(w.kind, KuratowskiKind::K33);
                let sub = petersen().with_edges(&w.edges);
                assert!(!is_planar(&sub));
            }
            other => panic!("expected NotPlanar, got {other:?}"),
        }
    }

    #[test]
    fn complete_graphs() {
        let k5_edges = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect::<Vec<_>>();
        let k5 = Graph::from_edge_list(5, &k5_edges).unwrap();
        assert_eq!(kuratowski_witness(&k5).unwrap().kind, KuratowskiKind::K5);
        let k33_edges = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect::<Vec<_>>();
        let k33 = Graph::from_edge_list(6, &k33_edges).unwrap();
        assert_eq!(kuratowski_witness(&k33).unwrap().kind, KuratowskiKind::K33);
    }

    #[test]
    fn handles_cut_vertices_and_bridges() {
        // two triangles sharing vertex 0, plus a pendant path
        let g = Graph::from_edge_list(7, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4), (4, 5), (5, 6)]).unwrap();
        let rot = rotation_system(&g).unwrap();
        assert!(euler_ok(&g, &rot));
        assert_eq!(biconnected_blocks(&g).len(), 4);
    }

    #[test]
    fn wheel_and_grid() {
        // wheel W6: hub 0, rim 1..=6
        let mut e = (1..=6).map(|i| (0, i)).collect::<Vec<_>>();
        e.extend((1..=6).map(|i| (i, i % 6 + 1)));
        let w = Graph::from_edge_list(7, &e).unwrap();
        assert!(euler_ok(&w, &rotation_system(&w).unwrap()));
        // 4x4 grid
        let mut e = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                let v = r * 4 + c;
                if c < 3 {
                    e.push((v, v + 1));
                }
                if r < 3 {
                    e.push((v, v + 4));
                }
            }
        }
        let grid = Graph::from_edge_list(16, &e).unwrap();
        assert!(euler_ok(&grid, &rotation_system(&grid).unwrap()));
    }
}
