//! Simple undirected graphs with string labels, and the structural checks
//! needed before a graph curve can be built from them.
//!
//! Vertices are stored by index. The index order is the order in which labels
//! were first introduced, and every deterministic tie-break in the crate
//! ("lexicographically least vertex sequence") compares index sequences.

mod connectivity;
pub mod embedding;
pub mod format;
pub mod iso;
pub mod planar;

use std::collections::VecDeque;

use thiserror::Error;

pub use connectivity::{edge_connectivity, edge_connectivity_brute_force};
pub use embedding::{Face, FaceId, OuterChoice, PlanarEmbedding, VertexClasses, VertexSide};
pub use format::{parse_graph, GraphFile};
pub use iso::{find_isomorphism, isomorphism_with_hint};
pub use planar::{all_embeddings, is_planar, planar_embed, KuratowskiKind, KuratowskiWitness};

pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not planar{}", .0.as_ref().map(|w| format!(" ({} subdivision on {} edges)", w.kind, w.edges.len())).unwrap_or_default())]
    NotPlanar(Option<KuratowskiWitness>),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("no face matches the requested outer face")]
    UnknownOuterFace,
    #[error("embedding hypothesis violated: {0}")]
    Hypothesis(String),
}

/// A simple undirected graph. Adjacency lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from labels and index pairs, rejecting loops and repeated pairs.
    pub fn from_edges<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for l in labels {
            g.add_vertex(l)?;
        }
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Convenience constructor with labels `"0"`, `"1"`, ...
    pub fn from_edge_list(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::from_edges((0..n).map(|i| i.to_string()), edges)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<VertexId, GraphError> {
        let label = label.into();
        if self.labels.contains(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        self.labels.push(label);
        self.adj.push(Vec::new());
        Ok(self.labels.len() - 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Loop(self.labels[u].clone()));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(
                self.labels[u].clone(),
                self.labels[v].clone(),
            ));
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Copy of the graph keeping every vertex but only the listed edges.
    pub fn with_edges(&self, edges: &[(VertexId, VertexId)]) -> Graph {
        let mut g = Graph {
            labels: self.labels.clone(),
            adj: vec![Vec::new(); self.labels.len()],
        };
        for &(u, v) in edges {
            g.add_edge(u, v).expect("subset of a simple graph is simple");
        }
        g
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|a| a.len() == 3)
    }

    /// Cycle rank `|E| - |V| + 1`.
    pub fn genus(&self) -> Result<usize, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.edge_count() + 1 - self.vertex_count())
    }

    /// Returns a copy whose vertex `i` is this graph's vertex `order[i]`.
    pub fn permuted(&self, order: &[VertexId]) -> Graph {
        let mut inv = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            inv[v] = i;
        }
        let labels = order.iter().map(|&v| self.labels[v].clone()).collect::<Vec<_>>();
        let edges = self
            .edges()
            .into_iter()
            .map(|(u, v)| (inv[u], inv[v]))
            .collect::<Vec<_>>();
        Graph::from_edges(labels, &edges).expect("permutation preserves simplicity")
    }
}

/// Outcome of checking the hypotheses a graph must satisfy before the schön
/// construction applies: simple, connected, cubic, three-connected, planar.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub simple: bool,
    pub connected: bool,
    pub cubic: bool,
    pub bridgeless: bool,
    pub edge_connectivity: usize,
    pub planar: bool,
    /// For cubic graphs vertex and edge three-connectivity coincide, so this
    /// is `edge_connectivity >= 3`.
    pub three_connected: bool,
    /// `None` when no planar embedding was available to test.
    pub exterior_faces_ok: Option<bool>,
    pub violations: Vec<String>,
}

impl ValidationReport {
    /// All hypotheses hold.
    pub fn passes(&self) -> bool {
        self.simple
            && self.connected
            && self.cubic
            && self.bridgeless
            && self.planar
            && self.three_connected
            && self.exterior_faces_ok != Some(false)
    }
}

/// Validates a bare graph, computing a default planar embedding when one exists.
pub fn validate(g: &Graph) -> ValidationReport {
    let embedding = if g.is_connected() {
        planar_embed(g, None).ok()
    } else {
        None
    };
    report(g, embedding.as_ref(), embedding.is_some())
}

/// Validates the graph of an embedding, using that embedding for the face condition.
pub fn validate_embedding(e: &PlanarEmbedding) -> ValidationReport {
    report(e.graph(), Some(e), true)
}

fn report(g: &Graph, embedding: Option<&PlanarEmbedding>, planar: bool) -> ValidationReport {
    let mut violations = Vec::new();
    let simple = g
        .adj
        .iter()
        .enumerate()
        .all(|(v, a)| a.windows(2).all(|w| w[0] < w[1]) && !a.contains(&v));
    if !simple {
        violations.push("graph has a loop or a repeated edge".to_string());
    }
    let connected = g.is_connected();
    if !connected {
        violations.push("graph is disconnected".to_string());
    }
    let bad_degree = (0..g.vertex_count()).filter(|&v| g.degree(v) != 3).collect::<Vec<_>>();
    let cubic = bad_degree.is_empty() && g.vertex_count() > 0;
    if !cubic {
        let names = bad_degree.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(", ");
        violations.push(format!("not 3-regular (vertices of other degree: {names})"));
    }
    let lambda = if connected {
        edge_connectivity(g).unwrap_or(0)
    } else {
        0
    };
    let bridgeless = connected && lambda >= 2;
    if connected && !bridgeless {
        violations.push("graph has a bridge".to_string());
    }
    let three_connected = lambda >= 3;
    if connected && !three_connected {
        violations.push(format!("edge connectivity is {lambda}, need 3"));
    }
    if !planar {
        violations.push("graph is not planar".to_string());
    }
    let exterior_faces_ok = embedding.map(|e| e.exterior_faces_ok());
    if exterior_faces_ok == Some(false) {
        violations.push("two non-adjacent exterior vertices share an interior face".to_string());
    }
    ValidationReport {
        simple,
        connected,
        cubic,
        bridgeless,
        edge_connectivity: lambda,
        planar,
        three_connected,
        exterior_faces_ok,
        violations,
    }
}

/// Small named graphs used throughout tests, docs and the CLI data files.
pub mod named {
    use super::Graph;

    pub fn k4() -> Graph {
        Graph::from_edges(
            ["v1", "v2", "v3", "v4"],
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    /// Triangular prism: triangles `a1 a2 a3`, `b1 b2 b3` and rungs `ai bi`.
    pub fn prism() -> Graph {
        Graph::from_edges(
            ["a1", "a2", "a3", "b1", "b2", "b3"],
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    /// The cube labelled so that `v1 v2 v3 v4` is one square, `v5 v6 v7 v8`
    /// the opposite one, with rungs `v1-v6`, `v2-v7`, `v3-v8`, `v4-v5`.
    pub fn cube() -> Graph {
        Graph::from_edges(
            ["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"],
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 4),
            ],
        )
        .unwrap()
    }

    /// Triangular prism with one vertex truncated (8 vertices, 12 edges).
    pub fn sliced_prism() -> Graph {
        // prism a1 a2 a3 / b1 b2 b3 with b3 replaced by the triangle c1 c2 c3
        Graph::from_edges(
            ["a1", "a2", "a3", "b1", "b2", "c1", "c2", "c3"],
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (0, 3),
                (1, 4),
                (2, 5),
                (3, 6),
                (4, 7),
                (5, 6),
                (6, 7),
                (5, 7),
            ],
        )
        .unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edge_list(10, &edges).unwrap()
    }

    /// Two copies of K4 minus an edge, with the degree-two vertices paired up
    /// by two new edges: cubic, bridgeless, but only two-edge-connected.
    pub fn two_edge_connected_cubic() -> Graph {
        // copy i: a_i b_i c_i d_i, missing edge a_i b_i
        Graph::from_edges(
            ["a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"],
            &[
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
                (0, 4),
                (1, 5),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn genus_of_small_graphs() {
        assert_eq!(k4().genus().unwrap(), 3);
        assert_eq!(cube().genus().unwrap(), 5);
        assert_eq!(petersen().genus().unwrap(), 6);
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.genus(), Err(GraphError::Disconnected));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert!(matches!(g.add_edge(1, 1), Err(GraphError::Loop(_))));
        assert!(matches!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(..))));
        assert!(matches!(g.add_vertex("0"), Err(GraphError::DuplicateLabel(_))));
    }

    #[test]
    fn cubic_counts() {
        for g in [
            k4(),
            prism(),
            cube(),
            sliced_prism(),
            petersen(),
            two_edge_connected_cubic(),
        ] {
            let genus = g.genus().unwrap();
            assert!(g.is_cubic());
            assert_eq!(g.vertex_count(), 2 * genus - 2);
            assert_eq!(g.edge_count(), 3 * genus - 3);
        }
    }

    #[test]
    fn validate_k4() {
        let r = validate(&k4());
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.edge_connectivity, 3);
    }

    #[test]
    fn validate_two_edge_connected() {
        let r = validate(&two_edge_connected_cubic());
        assert!(r.cubic && r.connected && r.bridgeless && r.planar);
        assert_eq!(r.edge_connectivity, 2);
        assert!(!r.three_connected);
        assert!(!r.passes());
    }

    #[test]
    fn validate_petersen() {
        let r = validate(&petersen());
        assert!(r.cubic && r.three_connected);
        assert!(!r.planar);
        assert_eq!(r.exterior_faces_ok, None);
    }

    #[test]
    fn permuted_preserves_structure() {
        let g = cube();
        let p = g.permuted(&[7, 6, 5, 4, 3, 2, 1, 0]);
        assert_eq!(p.label(0), "v8");
        assert_eq!(p.edge_count(), 12);
        assert!(p.has_edge(p.index_of("v1").unwrap(), p.index_of("v6").unwrap()));
    }
}
