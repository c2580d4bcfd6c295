use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use super::point::{Cell, TropicalPoint};
use crate::schoen::{LineIdeal, LineKind};

/// Tropicalization of one line of the schön embedding, with trivial valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TropicalLineGeom {
    /// The closed edge of the simplex between the corners `a` and `b`.
    Edge { line: String, a: usize, b: usize },
    /// A tripod in the 2-face on `vars`: branch point 0 on all three, and a
    /// ray towards the midpoint of each pair.
    Tripod { line: String, vars: [usize; 3] },
}

impl TropicalLineGeom {
    pub fn line(&self) -> &str {
        match self {
            Self::Edge { line, .. } | Self::Tripod { line, .. } => line,
        }
    }

    pub fn branch_point(&self) -> Option<TropicalPoint> {
        match self {
            Self::Edge { .. } => None,
            Self::Tripod { vars, .. } => TropicalPoint::zero_on(*vars),
        }
    }

    /// All cells of the line, points and open segments.
    pub fn cells(&self) -> Vec<Cell> {
        match *self {
            Self::Edge { a, b, .. } => vec![
                Cell::vertex([a]),
                Cell::vertex([b]),
                Cell::vertex([a, b]),
                Cell::new([a, b], [a]),
                Cell::new([a, b], [b]),
            ],
            Self::Tripod { vars: [a, b, c], .. } => {
                let mut out = vec![Cell::vertex([a, b, c])];
                for pair in [[a, b], [a, c], [b, c]] {
                    out.push(Cell::vertex(pair));
                    out.push(Cell::new([a, b, c], pair));
                }
                out
            }
        }
    }
}

pub fn tropicalize_line(l: &LineIdeal, nvars: usize) -> TropicalLineGeom {
    let free = l.free_vars(nvars);
    match l.kind {
        LineKind::TypeI => TropicalLineGeom::Edge {
            line: l.label.clone(),
            a: free[0],
            b: free[1],
        },
        LineKind::TypeII => TropicalLineGeom::Tripod {
            line: l.label.clone(),
            vars: [free[0], free[1], free[2]],
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeTag {
    /// Trivalent point of a tripod.
    Branch,
    /// Vertex of the simplex, end of an edge line.
    Corner,
    /// Ray end lying on an edge line.
    Landing,
    /// Ray end shared by several tripods and no edge line.
    Glue,
    /// Ray end met by nothing else.
    RayEnd,
}

impl NodeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Branch => "branch",
            Self::Corner => "corner",
            Self::Landing => "landing",
            Self::Glue => "glue",
            Self::RayEnd => "ray-end",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: usize,
    pub point: TropicalPoint,
    pub tag: NodeTag,
}

impl Node {
    pub fn support(&self) -> BTreeSet<usize> {
        self.point.support().iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub from: usize,
    pub to: usize,
    /// Label of the graph vertex whose line contains the segment.
    pub line: String,
    /// The cells making up the open segment: one 1-cell, or for an
    /// unsubdivided edge line two 1-cells and the midpoint between them.
    pub cells: Vec<Cell>,
}

/// The tropicalized line arrangement as a 1-complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TropicalComplex {
    pub nvars: usize,
    pub nodes: Vec<Node>,
    pub segments: Vec<Segment>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("lines {0} and {1} share a segment")]
    Overlap(String, String),
}

impl TropicalComplex {
    pub fn node_by_support(&self, support: &BTreeSet<usize>) -> Option<usize> {
        self.nodes.iter().position(|n| &n.support() == support)
    }

    /// Every cell of the complex: nodes and the cells of every segment.
    pub fn cells(&self) -> BTreeSet<Cell> {
        let mut out = self
            .nodes
            .iter()
            .map(|n| Cell::vertex(n.support()))
            .collect::<BTreeSet<_>>();
        for s in &self.segments {
            out.extend(s.cells.iter().cloned());
        }
        out
    }

    pub fn branch_points(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| n.tag == NodeTag::Branch)
            .map(|n| n.id)
            .collect()
    }
}

/// Glues the lines into one complex. Nodes are ordered by support size, then
/// support; segments by line order.
pub fn build_arrangement(lines: &[TropicalLineGeom], nvars: usize) -> Result<TropicalComplex, ArrangementError> {
    let mut owner: BTreeMap<Cell, String> = BTreeMap::new();
    for l in lines {
        for c in l.cells().into_iter().filter(|c| c.dim() == 1) {
            if let Some(prev) = owner.insert(c, l.line().to_string()) {
                return Err(ArrangementError::Overlap(prev, l.line().to_string()));
            }
        }
    }

    let mut edge_pairs = BTreeSet::new();
    let mut ray_ends: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut tags: BTreeMap<BTreeSet<usize>, NodeTag> = BTreeMap::new();
    for l in lines {
        match *l {
            TropicalLineGeom::Edge { a, b, .. } => {
                edge_pairs.insert(BTreeSet::from([a, b]));
                tags.insert(BTreeSet::from([a]), NodeTag::Corner);
                tags.insert(BTreeSet::from([b]), NodeTag::Corner);
            }
            TropicalLineGeom::Tripod { vars: [a, b, c], .. } => {
                tags.insert(BTreeSet::from([a, b, c]), NodeTag::Branch);
                for pair in [[a, b], [a, c], [b, c]] {
                    *ray_ends.entry(BTreeSet::from(pair)).or_default() += 1;
                }
            }
        }
    }
    for (pair, count) in &ray_ends {
        let tag = if edge_pairs.contains(pair) {
            NodeTag::Landing
        } else if *count >= 2 {
            NodeTag::Glue
        } else {
            NodeTag::RayEnd
        };
        tags.insert(pair.clone(), tag);
    }
    let mut supports = tags.keys().cloned().collect::<Vec<_>>();
    supports.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    let nodes = supports
        .iter()
        .enumerate()
        .map(|(id, s)| Node {
            id,
            point: TropicalPoint::zero_on(s.iter().copied()).unwrap(),
            tag: tags[s],
        })
        .collect::<Vec<_>>();
    let index = supports
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect::<BTreeMap<_, _>>();
    let id = |s: &[usize]| index[&s.iter().copied().collect::<BTreeSet<_>>()];

    let mut segments = Vec::new();
    for l in lines {
        let line = l.line().to_string();
        match *l {
            TropicalLineGeom::Edge { a, b, .. } => {
                let (a_cell, b_cell) = (Cell::new([a, b], [a]), Cell::new([a, b], [b]));
                if ray_ends.contains_key(&BTreeSet::from([a, b])) {
                    let mid = id(&[a, b]);
                    segments.push(Segment {
                        from: id(&[a]),
                        to: mid,
                        line: line.clone(),
                        cells: vec![a_cell],
                    });
                    segments.push(Segment {
                        from: mid,
                        to: id(&[b]),
                        line,
                        cells: vec![b_cell],
                    });
                } else {
                    let cells = vec![a_cell, Cell::vertex([a, b]), b_cell];
                    segments.push(Segment {
                        from: id(&[a]),
                        to: id(&[b]),
                        line,
                        cells,
                    });
                }
            }
            TropicalLineGeom::Tripod { vars: [a, b, c], .. } => {
                let branch = id(&[a, b, c]);
                for pair in [[a, b], [a, c], [b, c]] {
                    let cells = vec![Cell::new([a, b, c], pair)];
                    segments.push(Segment {
                        from: branch,
                        to: id(&pair),
                        line: line.clone(),
                        cells,
                    });
                }
            }
        }
    }
    Ok(TropicalComplex { nvars, nodes, segments })
}
