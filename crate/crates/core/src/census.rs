//! Small census of cubic graphs.
//!
//! Graphs are enumerated in breadth-first labelled form: vertex 0 is the
//! root, and when vertex `v` is processed its still-missing neighbours are
//! either later vertices already discovered or fresh vertices taking the
//! next free labels. Every connected cubic graph has such a labelling, so
//! deduplicating the results up to isomorphism gives the full census. Tests
//! check the counts against the known sequence 1, 2, 5, 19, 85.

use std::collections::HashMap;

use crate::graph::{find_isomorphism, validate, Graph, VertexId};

/// Every connected simple cubic graph on exactly `n` vertices, one per
/// isomorphism class. `n` must be even and at least 4.
pub fn connected_cubic_graphs(n: usize) -> Vec<Graph> {
    assert!(
        n >= 4 && n.is_multiple_of(2),
        "cubic graphs need an even order of at least 4"
    );
    let mut state = Bfs {
        n,
        adj: vec![Vec::new(); n],
        next: 1,
        classes: HashMap::new(),
        found: Vec::new(),
    };
    state.process(0);
    state.found
}

/// Connected cubic graphs on `n` vertices that are planar and three-connected.
pub fn three_connected_planar_cubic(n: usize) -> Vec<Graph> {
    connected_cubic_graphs(n)
        .into_iter()
        .filter(|g| validate(g).passes())
        .collect()
}

struct Bfs {
    n: usize,
    adj: Vec<Vec<VertexId>>,
    next: usize,
    classes: HashMap<Vec<u64>, Vec<Graph>>,
    found: Vec<Graph>,
}

impl Bfs {
    fn process(&mut self, v: usize) {
        if v == self.n {
            self.record();
            return;
        }
        if v >= self.next {
            return;
        }
        let need = 3 - self.adj[v].len();
        let old = (v + 1..self.next)
            .filter(|&u| self.adj[u].len() < 3 && !self.adj[v].contains(&u))
            .collect::<Vec<_>>();
        self.choose(v, need, &old, 0);
    }

    /// Picks an increasing subset of `old` as neighbours of `v`, then fills
    /// the remaining slots with fresh labels.
    fn choose(&mut self, v: usize, need: usize, old: &[usize], from: usize) {
        let fresh = 3 - self.adj[v].len();
        if fresh <= need && self.next + fresh <= self.n {
            let start = self.next;
            for u in start..start + fresh {
                self.link(v, u);
            }
            self.next += fresh;
            self.process(v + 1);
            self.next -= fresh;
            for u in (start..start + fresh).rev() {
                self.unlink(v, u);
            }
        }
        if self.adj[v].len() == 3 {
            return;
        }
        for i in from..old.len() {
            let u = old[i];
            if self.adj[u].len() == 3 {
                continue;
            }
            self.link(v, u);
            self.choose(v, need, old, i + 1);
            self.unlink(v, u);
        }
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    fn unlink(&mut self, u: usize, v: usize) {
        self.adj[u].pop();
        self.adj[v].pop();
    }

    fn record(&mut self) {
        if self.next != self.n || self.adj.iter().any(|a| a.len() != 3) {
            return;
        }
        let edges = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect::<Vec<_>>();
        let g = Graph::from_edge_list(self.n, &edges).expect("construction is simple");
        let bucket = self.classes.entry(invariant(&g)).or_default();
        if bucket.iter().all(|k| find_isomorphism(k, &g).is_none()) {
            bucket.push(g.clone());
            self.found.push(g);
        }
    }
}

/// Sorted multiset of per-vertex counts of closed walks of length 2..=6.
fn invariant(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut walks = vec![vec![0u64; n]; n];
    for (v, row) in walks.iter_mut().enumerate() {
        row[v] = 1;
    }
    let mut per_vertex = vec![Vec::new(); n];
    for _ in 0..6 {
        let mut next = vec![vec![0u64; n]; n];
        for s in 0..n {
            for v in 0..n {
                if walks[s][v] != 0 {
                    for &w in g.neighbors(v) {
                        next[s][w] += walks[s][v];
                    }
                }
            }
        }
        walks = next;
        for (s, pv) in per_vertex.iter_mut().enumerate() {
            pv.push(walks[s][s]);
        }
    }
    per_vertex.sort_unstable();
    per_vertex.concat()
}
