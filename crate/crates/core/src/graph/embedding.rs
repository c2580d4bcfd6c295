//! Combinatorial planar embeddings (rotation systems with a designated outer face).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::planar::trace_faces;
use super::{Graph, GraphError, VertexId};

/// Interior faces are numbered `0..genus`; the outer face has id `genus`.
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Closed walk of darts `(u, v)`, starting at the canonical rotation.
    pub boundary: Vec<(VertexId, VertexId)>,
    pub is_outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Vertex sequence of the boundary walk.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.boundary.iter().map(|&(u, _)| u).collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.boundary.iter().any(|&(u, _)| u == v)
    }

    /// Undirected edges `(min, max)` on the boundary, in walk order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.boundary.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
    }
}

/// How to pick the outer face when building an embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OuterChoice {
    /// Longest face; ties go to the least canonical vertex sequence.
    Longest,
    /// The face whose vertex set equals the given one.
    Vertices(Vec<VertexId>),
    /// The face containing this dart.
    Dart(VertexId, VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexSide {
    Exterior,
    Interior,
}

/// Partition of the vertices by incidence with the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClasses {
    pub side: Vec<VertexSide>,
    /// Each exterior vertex mapped to its unique interior neighbour.
    pub interior_neighbor: BTreeMap<VertexId, VertexId>,
}

impl VertexClasses {
    pub fn exterior(&self) -> Vec<VertexId> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == VertexSide::Exterior)
            .collect()
    }

    pub fn interior(&self) -> Vec<VertexId> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == VertexSide::Interior)
            .collect()
    }
}

/// A connected plane graph: rotation system plus designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    graph: Graph,
    rotation: Vec<Vec<VertexId>>,
    faces: Vec<Face>,
    dart_face: HashMap<(VertexId, VertexId), FaceId>,
}

impl PlanarEmbedding {
    /// Builds an embedding from a rotation system, re-verifying Euler's formula.
    pub fn from_rotation(graph: Graph, rotation: Vec<Vec<VertexId>>, outer: OuterChoice) -> Result<Self, GraphError> {
        if rotation.len() != graph.vertex_count() {
            return Err(GraphError::InvalidRotation(
                "one cyclic order per vertex required".into(),
            ));
        }
        for (v, r) in rotation.iter().enumerate() {
            let mut sorted = r.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return Err(GraphError::InvalidRotation(format!(
                    "order at {} does not list its neighbours exactly once",
                    graph.label(v)
                )));
            }
        }
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if graph.edge_count() == 0 {
            return Err(GraphError::InvalidRotation("graph has no edges".into()));
        }
        let walks = trace_faces(&rotation);
        if graph.vertex_count() + walks.len() != graph.edge_count() + 2 {
            return Err(GraphError::InvalidRotation(format!(
                "Euler's formula fails: V={} E={} F={}",
                graph.vertex_count(),
                graph.edge_count(),
                walks.len()
            )));
        }
        let mut walks = walks.into_iter().map(canonical_walk).collect::<Vec<_>>();
        walks.sort_by_key(|w| w.iter().map(|&(u, _)| u).collect::<Vec<_>>());

        let outer_idx = match &outer {
            OuterChoice::Longest => {
                let max = walks.iter().map(Vec::len).max().unwrap();
                walks.iter().position(|w| w.len() == max).unwrap()
            }
            OuterChoice::Vertices(vs) => {
                let want = vs.iter().copied().collect::<BTreeSet<_>>();
                walks
                    .iter()
                    .position(|w| w.len() == vs.len() && w.iter().map(|&(u, _)| u).collect::<BTreeSet<_>>() == want)
                    .ok_or(GraphError::UnknownOuterFace)?
            }
            OuterChoice::Dart(u, v) => walks
                .iter()
                .position(|w| w.contains(&(*u, *v)))
                .ok_or(GraphError::UnknownOuterFace)?,
        };
        let outer_walk = walks.remove(outer_idx);
        walks.push(outer_walk);
        let last = walks.len() - 1;
        let faces = walks
            .into_iter()
            .enumerate()
            .map(|(id, boundary)| Face {
                id,
                boundary,
                is_outer: id == last,
            })
            .collect::<Vec<_>>();
        let mut dart_face = HashMap::new();
        for f in &faces {
            for &d in &f.boundary {
                dart_face.insert(d, f.id);
            }
        }
        Ok(Self {
            graph,
            rotation,
            faces,
            dart_face,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    /// All faces; interior ones first in id order, the outer face last.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn interior_faces(&self) -> &[Face] {
        &self.faces[..self.faces.len() - 1]
    }

    pub fn outer_face(&self) -> &Face {
        self.faces.last().unwrap()
    }

    pub fn outer_id(&self) -> FaceId {
        self.faces.len() - 1
    }

    /// Number of interior faces, equal to the cycle rank of the graph.
    pub fn genus(&self) -> usize {
        self.faces.len() - 1
    }

    /// Display name: `F1..Fg` for interior faces, `outer` for the outer face.
    pub fn face_name(&self, f: FaceId) -> String {
        if f == self.outer_id() {
            "outer".to_string()
        } else {
            format!("F{}", f + 1)
        }
    }

    /// Parses `F<k>` or `outer`.
    pub fn face_by_name(&self, name: &str) -> Option<FaceId> {
        if name == "outer" {
            return Some(self.outer_id());
        }
        let k = name.strip_prefix('F')?.parse::<usize>().ok()?;
        (1..=self.genus()).contains(&k).then(|| k - 1)
    }

    /// Face to the side of the dart `u -> v` (each dart belongs to exactly one face).
    pub fn face_of_dart(&self, u: VertexId, v: VertexId) -> Option<FaceId> {
        self.dart_face.get(&(u, v)).copied()
    }

    /// The two faces bordering an edge.
    pub fn edge_faces(&self, u: VertexId, v: VertexId) -> Option<(FaceId, FaceId)> {
        Some((self.face_of_dart(u, v)?, self.face_of_dart(v, u)?))
    }

    /// Distinct faces around `v`, in rotation order.
    pub fn faces_at(&self, v: VertexId) -> Vec<FaceId> {
        let mut out = Vec::new();
        for &u in &self.rotation[v] {
            let f = self.dart_face[&(u, v)];
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }

    pub fn interior_faces_at(&self, v: VertexId) -> BTreeSet<FaceId> {
        self.faces_at(v).into_iter().filter(|&f| f != self.outer_id()).collect()
    }

    pub fn is_exterior(&self, v: VertexId) -> bool {
        self.outer_face().contains_vertex(v)
    }

    /// Exterior/interior partition; every exterior vertex must have exactly one
    /// interior neighbour, which is checked rather than assumed.
    pub fn classify_vertices(&self) -> Result<VertexClasses, GraphError> {
        let n = self.graph.vertex_count();
        let side = (0..n)
            .map(|v| {
                if self.is_exterior(v) {
                    VertexSide::Exterior
                } else {
                    VertexSide::Interior
                }
            })
            .collect::<Vec<_>>();
        let mut interior_neighbor = BTreeMap::new();
        for v in 0..n {
            if side[v] != VertexSide::Exterior {
                continue;
            }
            let inner = self
                .graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| side[u] == VertexSide::Interior)
                .collect::<Vec<_>>();
            if inner.len() != 1 {
                return Err(GraphError::Hypothesis(format!(
                    "exterior vertex {} has {} interior neighbours",
                    self.graph.label(v),
                    inner.len()
                )));
            }
            interior_neighbor.insert(v, inner[0]);
        }
        Ok(VertexClasses {
            side,
            interior_neighbor,
        })
    }

    /// True iff on every interior face, every two exterior vertices are adjacent.
    pub fn exterior_faces_ok(&self) -> bool {
        self.interior_faces().iter().all(|f| {
            let mut ext = f
                .vertices()
                .into_iter()
                .filter(|&v| self.is_exterior(v))
                .collect::<Vec<_>>();
            ext.sort_unstable();
            ext.dedup();
            ext.iter()
                .enumerate()
                .all(|(i, &u)| ext[i + 1..].iter().all(|&v| self.graph.has_edge(u, v)))
        })
    }

    /// Same embedding with another outer face.
    pub fn with_outer(&self, outer: OuterChoice) -> Result<Self, GraphError> {
        Self::from_rotation(self.graph.clone(), self.rotation.clone(), outer)
    }

    /// The mirror image: every rotation reversed, same outer face.
    pub fn mirrored(&self) -> Self {
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let (u, v) = self.outer_face().boundary[0];
        Self::from_rotation(self.graph.clone(), rotation, OuterChoice::Dart(v, u))
            .expect("mirror of a plane graph is plane")
    }

    /// Face walk vertex sequences rendered with labels, for diagnostics.
    pub fn describe_face(&self, f: FaceId) -> String {
        self.faces[f]
            .vertices()
            .iter()
            .map(|&v| self.graph.label(v))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Rotates a closed walk to start at its lexicographically least vertex sequence.
fn canonical_walk(walk: Vec<(VertexId, VertexId)>) -> Vec<(VertexId, VertexId)> {
    let k = walk.len();
    let seq = walk.iter().map(|&(u, _)| u).collect::<Vec<_>>();
    let best = (0..k)
        .min_by(|&a, &b| {
            let ra = (0..k).map(|i| seq[(a + i) % k]);
            let rb = (0..k).map(|i| seq[(b + i) % k]);
            ra.cmp(rb)
        })
        .unwrap_or(0);
    (0..k).map(|i| walk[(best + i) % k]).collect()
}
