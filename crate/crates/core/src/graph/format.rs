//! Text format for graphs and embeddings.
//!
//! ```text
//! graph cube
//! edge v1 v2
//! edge v2 v3
//! ...
//! rotation v1: v2 v4 v6
//! outer: v5 v6 v7 v8
//! ```
//!
//! The header is optional, bare `u v` lines are read as edges, `#` starts a
//! comment. A `rotation` line lists the neighbours of a vertex in cyclic
//! order; if any vertex has one, all must. `outer:` names the outer face by
//! its vertices.

use super::embedding::{OuterChoice, PlanarEmbedding};
use super::planar::planar_embed;
use super::{Graph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub name: String,
    pub graph: Graph,
    pub rotation: Option<Vec<Vec<VertexId>>>,
    pub outer: Option<Vec<VertexId>>,
}

impl GraphFile {
    /// The embedding described by the file: its rotation system if present,
    /// otherwise a computed one; the `outer:` line, if present, picks the outer face.
    pub fn embedding(&self) -> Result<PlanarEmbedding, GraphError> {
        self.embedding_with_outer(self.outer.as_deref())
    }

    pub fn embedding_with_outer(&self, outer: Option<&[VertexId]>) -> Result<PlanarEmbedding, GraphError> {
        match &self.rotation {
            Some(rot) => {
                let choice = outer.map_or(OuterChoice::Longest, |vs| OuterChoice::Vertices(vs.to_vec()));
                PlanarEmbedding::from_rotation(self.graph.clone(), rot.clone(), choice)
            }
            None => planar_embed(&self.graph, outer),
        }
    }

    /// Resolves a whitespace- or comma-separated list of labels.
    pub fn vertices(&self, spec: &str) -> Result<Vec<VertexId>, GraphError> {
        spec.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                self.graph
                    .index_of(s)
                    .ok_or_else(|| GraphError::UnknownVertex(s.to_string()))
            })
            .collect()
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_graph(text: &str) -> Result<GraphFile, GraphError> {
    let mut name = String::from("unnamed");
    let mut graph = Graph::new();
    let mut rotation_lines: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut outer_line: Option<(usize, Vec<String>)> = None;

    let vertex = |graph: &mut Graph, label: &str, line: usize| -> Result<VertexId, GraphError> {
        if !valid_label(label) {
            return Err(GraphError::Parse {
                line,
                message: format!("invalid label {label:?}"),
            });
        }
        match graph.index_of(label) {
            Some(v) => Ok(v),
            None => graph.add_vertex(label),
        }
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let tokens = content.split_whitespace().collect::<Vec<_>>();
        let malformed = || GraphError::Parse {
            line,
            message: format!("cannot parse {content:?}"),
        };
        match tokens[0] {
            "graph" => {
                if tokens.len() != 2 {
                    return Err(malformed());
                }
                name = tokens[1].to_string();
            }
            "edge" | "vertex" | "rotation" | "outer:" | "outer" => match tokens[0] {
                "edge" => {
                    if tokens.len() != 3 {
                        return Err(malformed());
                    }
                    let u = vertex(&mut graph, tokens[1], line)?;
                    let v = vertex(&mut graph, tokens[2], line)?;
                    graph.add_edge(u, v)?;
                }
                "vertex" => {
                    if tokens.len() != 2 {
                        return Err(malformed());
                    }
                    vertex(&mut graph, tokens[1], line)?;
                }
                "rotation" => {
                    let rest = content["rotation".len()..].trim();
                    let (v, nbrs) = rest.split_once(':').ok_or_else(malformed)?;
                    let v = v.trim();
                    if !valid_label(v) {
                        return Err(malformed());
                    }
                    rotation_lines.push((line, v.to_string(), nbrs.split_whitespace().map(String::from).collect()));
                }
                _ => {
                    let rest = content.trim_start_matches("outer").trim_start().trim_start_matches(':');
                    let labels = rest.split_whitespace().map(String::from).collect::<Vec<_>>();
                    if labels.len() < 3 {
                        return Err(malformed());
                    }
                    outer_line = Some((line, labels));
                }
            },
            _ if tokens.len() == 2 => {
                let u = vertex(&mut graph, tokens[0], line)?;
                let v = vertex(&mut graph, tokens[1], line)?;
                graph.add_edge(u, v)?;
            }
            _ => return Err(malformed()),
        }
    }

    let resolve = |label: &str, line: usize| {
        graph.index_of(label).ok_or_else(|| GraphError::Parse {
            line,
            message: format!("unknown vertex {label}"),
        })
    };

    let rotation = if rotation_lines.is_empty() {
        None
    } else {
        let mut rot: Vec<Option<Vec<VertexId>>> = vec![None; graph.vertex_count()];
        for (line, v, nbrs) in &rotation_lines {
            let v = resolve(v, *line)?;
            if rot[v].is_some() {
                return Err(GraphError::Parse {
                    line: *line,
                    message: "repeated rotation".into(),
                });
            }
            rot[v] = Some(nbrs.iter().map(|n| resolve(n, *line)).collect::<Result<_, _>>()?);
        }
        let missing = rot.iter().position(Option::is_none);
        if let Some(v) = missing {
            return Err(GraphError::InvalidRotation(format!(
                "no rotation given for {}",
                graph.label(v)
            )));
        }
        Some(rot.into_iter().map(Option::unwrap).collect())
    };
    let outer = match outer_line {
        Some((line, labels)) => Some(labels.iter().map(|l| resolve(l, line)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    Ok(GraphFile {
        name,
        graph,
        rotation,
        outer,
    })
}

/// Serializes an embedding in the text format, with rotations and outer face.
pub fn write_embedding(name: &str, e: &PlanarEmbedding) -> String {
    let g = e.graph();
    let mut out = format!("graph {name}\n");
    for (u, v) in g.edges() {
        out.push_str(&format!("edge {} {}\n", g.label(u), g.label(v)));
    }
    for (v, r) in e.rotation().iter().enumerate() {
        let nbrs = r.iter().map(|&u| g.label(u)).collect::<Vec<_>>().join(" ");
        out.push_str(&format!("rotation {}: {}\n", g.label(v), nbrs));
    }
    let outer = e
        .outer_face()
        .vertices()
        .iter()
        .map(|&v| g.label(v))
        .collect::<Vec<_>>()
        .join(" ");
    out.push_str(&format!("outer: {outer}\n"));
    out
}
