//! Isomorphism of small simple graphs: colour refinement to prune, then
//! backtracking with adjacency checks.

use std::collections::{BTreeMap, VecDeque};

use super::{Graph, VertexId};

/// Finds `map` with `map[a_vertex] = b_vertex` preserving adjacency in both
/// directions. The search order is deterministic.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<VertexId>> {
    isomorphism_with_hint(a.adjacency(), b.adjacency(), None)
}

/// Adjacency-list version. `hint[x]`, when set, is tried first as the image
/// of `x`, so a candidate map that is already an isomorphism is returned as is.
pub fn isomorphism_with_hint(
    a: &[Vec<VertexId>],
    b: &[Vec<VertexId>],
    hint: Option<&[Option<VertexId>]>,
) -> Option<Vec<VertexId>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let edges = |g: &[Vec<VertexId>]| g.iter().map(Vec::len).sum::<usize>();
    if edges(a) != edges(b) {
        return None;
    }
    let (ca, cb) = refine_colours(a, b);
    let mut hist_a = BTreeMap::new();
    let mut hist_b = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_insert(0) += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_insert(0) += 1;
    }
    if hist_a != hist_b {
        return None;
    }
    let adj_b = matrix(b);
    let adj_a = matrix(a);
    let order = bfs_order(a);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let ctx = Search {
        a,
        b,
        adj_a: &adj_a,
        adj_b: &adj_b,
        ca: &ca,
        cb: &cb,
        order: &order,
        hint,
    };
    if ctx.extend(0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

struct Search<'a> {
    a: &'a [Vec<VertexId>],
    b: &'a [Vec<VertexId>],
    adj_a: &'a [Vec<bool>],
    adj_b: &'a [Vec<bool>],
    ca: &'a [usize],
    cb: &'a [usize],
    order: &'a [VertexId],
    hint: Option<&'a [Option<VertexId>]>,
}

impl Search<'_> {
    fn extend(&self, depth: usize, map: &mut [VertexId], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let anchor = self.a[x].iter().find(|&&y| map[y] != usize::MAX).map(|&y| map[y]);
        let mut candidates: Vec<VertexId> = match anchor {
            Some(img) => self.b[img].clone(),
            None => (0..self.b.len()).collect(),
        };
        if let Some(h) = self.hint.and_then(|h| h[x]) {
            if let Some(p) = candidates.iter().position(|&c| c == h) {
                candidates.remove(p);
                candidates.insert(0, h);
            }
        }
        for c in candidates {
            if used[c] || self.ca[x] != self.cb[c] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&y| self.adj_a[x][y] == self.adj_b[c][map[y]]);
            if !consistent {
                continue;
            }
            map[x] = c;
            used[c] = true;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[c] = false;
        }
        false
    }
}

fn matrix(g: &[Vec<VertexId>]) -> Vec<Vec<bool>> {
    let n = g.len();
    let mut m = vec![vec![false; n]; n];
    for (u, nbrs) in g.iter().enumerate() {
        for &v in nbrs {
            m[u][v] = true;
        }
    }
    m
}

fn bfs_order(g: &[Vec<VertexId>]) -> Vec<VertexId> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &g[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

/// 1-dimensional Weisfeiler–Leman colours computed jointly so that colour
/// ids are comparable across the two graphs.
fn refine_colours(a: &[Vec<VertexId>], b: &[Vec<VertexId>]) -> (Vec<usize>, Vec<usize>) {
    let n = a.len();
    let union = a
        .iter()
        .cloned()
        .chain(b.iter().map(|nb| nb.iter().map(|&v| v + n).collect()))
        .collect::<Vec<_>>();
    let mut colour = union.iter().map(Vec::len).collect::<Vec<_>>();
    loop {
        let sigs = union
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                let mut s = nbrs.iter().map(|&u| colour[u]).collect::<Vec<_>>();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect::<Vec<_>>();
        let mut ids = BTreeMap::new();
        for s in &sigs {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        let new = sigs.iter().map(|s| ids[s]).collect::<Vec<_>>();
        let classes_before = colour.iter().collect::<std::collections::BTreeSet<_>>().len();
        colour = new;
        if ids.len() == classes_before {
            break;
        }
    }
    let (ca, cb) = colour.split_at(n);
    (ca.to_vec(), cb.to_vec())
}
