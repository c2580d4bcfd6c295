//! Weak faithfulness of the tropicalized schön embedding: the complex must be
//! the graph with trees glued on, and the homeomorphism should send interior
//! vertices to branch points and exterior vertices to the meeting point of
//! their line with the line of their interior neighbour.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::{isomorphism_with_hint, planar_embed, validate_embedding, Graph, PlanarEmbedding};
use crate::schoen::{build_schoen, LineIdeal, LineKind};
use crate::transform::{replay_inverse, ReductionTrace, TransformError};
use crate::tropical::{build_arrangement, tropicalize_line, Cell, NodeTag, TropicalComplex};

/// The complex as an abstract multigraph on its node ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComplexGraph {
    pub node_count: usize,
    /// `(from, to, segment index)`
    pub edges: Vec<(usize, usize, usize)>,
}

impl ComplexGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b, _)| (a == v) as usize + (b == v) as usize)
            .sum()
    }
}

pub fn extract_graph(c: &TropicalComplex) -> ComplexGraph {
    let edges = c.segments.iter().enumerate().map(|(i, s)| (s.from, s.to, i)).collect();
    ComplexGraph {
        node_count: c.nodes.len(),
        edges,
    }
}

/// A pruned tree and the core node it hangs from (`None` when the whole
/// component was a tree).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrunedTree {
    pub attachment: Option<usize>,
    pub nodes: Vec<usize>,
    pub size: usize,
}

/// The graph left after pruning trees and suppressing degree-2 nodes. Each
/// edge remembers the chain of complex nodes it replaced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Core {
    pub nodes: Vec<usize>,
    pub edges: Vec<CoreEdge>,
    /// Edge count before degree-2 suppression.
    pub unsuppressed_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreEdge {
    pub from: usize,
    pub to: usize,
    pub path: Vec<usize>,
}

impl Core {
    /// The core as a simple graph on positions of `nodes`, or `None` if it
    /// has loops or parallel edges.
    pub fn to_graph(&self) -> Option<Graph> {
        let pos = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, &n)| (n, i))
            .collect::<BTreeMap<_, _>>();
        let mut g = Graph::from_edges(self.nodes.iter().map(|n| format!("n{n}")), &[]).ok()?;
        for e in &self.edges {
            g.add_edge(pos[&e.from], pos[&e.to]).ok()?;
        }
        Some(g)
    }
}

pub fn prune_modification(g: &ComplexGraph) -> (Core, Vec<PrunedTree>) {
    let n = g.node_count;
    let mut alive_edge = vec![true; g.edges.len()];
    let mut degree = (0..n).map(|v| g.degree(v)).collect::<Vec<_>>();
    let mut alive = vec![true; n];
    let mut stack = (0..n).filter(|&v| degree[v] <= 1).collect::<Vec<_>>();
    while let Some(v) = stack.pop() {
        if !alive[v] || degree[v] > 1 {
            continue;
        }
        alive[v] = false;
        for (k, &(a, b, _)) in g.edges.iter().enumerate() {
            if alive_edge[k] && (a == v || b == v) {
                alive_edge[k] = false;
                let other = if a == v { b } else { a };
                degree[v] -= 1;
                degree[other] -= 1;
                if alive[other] && degree[other] <= 1 {
                    stack.push(other);
                }
            }
        }
    }

    // group removed material by connected component of removed edges
    let mut parent = (0..n).collect::<Vec<_>>();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (k, &(a, b, _)) in g.edges.iter().enumerate() {
        if !alive_edge[k] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut groups: BTreeMap<usize, (BTreeSet<usize>, usize)> = BTreeMap::new();
    for (k, &(a, b, _)) in g.edges.iter().enumerate() {
        if !alive_edge[k] {
            let r = find(&mut parent, a);
            let entry = groups.entry(r).or_default();
            entry.0.insert(a);
            entry.0.insert(b);
            entry.1 += 1;
        }
    }
    for v in (0..n).filter(|&v| !alive[v] && g.degree(v) == 0) {
        groups.insert(v, (BTreeSet::from([v]), 0));
    }
    let mut trees = groups
        .into_values()
        .map(|(nodes, size)| {
            let attachment = nodes.iter().copied().find(|&v| alive[v]);
            let nodes = nodes.into_iter().filter(|&v| !alive[v]).collect();
            PrunedTree {
                attachment,
                nodes,
                size,
            }
        })
        .collect::<Vec<_>>();
    trees.sort_by(|a, b| a.nodes.cmp(&b.nodes));

    let kept = g
        .edges
        .iter()
        .enumerate()
        .filter(|&(k, _)| alive_edge[k])
        .map(|(_, &e)| e)
        .collect::<Vec<_>>();
    let core = suppress(&kept, &alive);
    (core, trees)
}

/// Replaces maximal chains through degree-2 nodes by single edges. A cycle
/// with no branching keeps its least node, with a loop.
fn suppress(edges: &[(usize, usize, usize)], alive: &[bool]) -> Core {
    let n = alive.len();
    let mut incident = vec![Vec::new(); n];
    for (k, &(a, b, _)) in edges.iter().enumerate() {
        incident[a].push(k);
        incident[b].push(k);
    }
    let branching = |v: usize| alive[v] && incident[v].len() != 2;
    let mut nodes = (0..n).filter(|&v| branching(v)).collect::<Vec<_>>();
    let mut used = vec![false; edges.len()];
    let mut out = Vec::new();
    let trace_from = |start: usize, first: usize, used: &mut Vec<bool>, out: &mut Vec<CoreEdge>| {
        let mut path = vec![start];
        let (mut cur, mut k) = (start, first);
        loop {
            used[k] = true;
            let (a, b, _) = edges[k];
            cur = if a == cur { b } else { a };
            path.push(cur);
            if branching(cur) || cur == start {
                break;
            }
            k = *incident[cur].iter().find(|&&j| !used[j]).unwrap_or(&k);
            if used[k] {
                break;
            }
        }
        out.push(CoreEdge {
            from: start,
            to: cur,
            path,
        });
    };
    for &v in &nodes.clone() {
        for &k in &incident[v] {
            if !used[k] {
                trace_from(v, k, &mut used, &mut out);
            }
        }
    }
    for v in 0..n {
        if alive[v] && incident[v].len() == 2 && incident[v].iter().all(|&k| !used[k]) {
            nodes.push(v);
            trace_from(v, incident[v][0], &mut used, &mut out);
        }
    }
    nodes.sort_unstable();
    for e in &mut out {
        if e.from > e.to {
            std::mem::swap(&mut e.from, &mut e.to);
            e.path.reverse();
        }
    }
    out.sort_by(|a, b| (a.from, a.to, &a.path).cmp(&(b.from, b.to, &b.path)));
    Core {
        nodes,
        edges: out,
        unsuppressed_edges: edges.len(),
    }
}

/// Vertex bijection from `g` into the core, as `map[g_vertex] = complex node`.
/// `hint[v]`, when set, is tried first as the image of `v`.
pub fn graph_isomorphism(core: &Core, g: &Graph, hint: Option<&[Option<usize>]>) -> Option<Vec<usize>> {
    let cg = core.to_graph()?;
    let pos = core
        .nodes
        .iter()
        .enumerate()
        .map(|(i, &n)| (n, i))
        .collect::<BTreeMap<_, _>>();
    let hint = hint.map(|h| {
        h.iter()
            .map(|x| x.and_then(|n| pos.get(&n).copied()))
            .collect::<Vec<_>>()
    });
    let map = isomorphism_with_hint(g.adjacency(), cg.adjacency(), hint.as_deref())?;
    Some(map.into_iter().map(|i| core.nodes[i]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FaithError {
    #[error("the lines of {0} and {1} do not meet in a single node")]
    NoSingleMeetingPoint(String, String),
    #[error("no branch point for interior vertex {0}")]
    MissingBranch(String),
    #[error("stage {stage} failed: {detail}")]
    Stage { stage: String, detail: String },
    #[error("replay failed: {0}")]
    Replay(#[from] TransformError),
    #[error("certificate for step {index} failed at stage {stage}")]
    StepFailed { index: usize, stage: String },
}

/// Where the well-structured map sends each vertex: the branch point of its
/// line for interior vertices, the meeting point with the interior
/// neighbour's line for exterior ones.
pub fn intended_images(
    lines: &[LineIdeal],
    complex: &TropicalComplex,
    e: &PlanarEmbedding,
) -> Result<Vec<usize>, FaithError> {
    let classes = e.classify_vertices().map_err(|err| FaithError::Stage {
        stage: "classify".into(),
        detail: err.to_string(),
    })?;
    let n = complex.nvars;
    let geoms = lines.iter().map(|l| tropicalize_line(l, n)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for (v, l) in lines.iter().enumerate() {
        let node = match l.kind {
            LineKind::TypeII => {
                let s = l.sum_support.iter().copied().collect::<BTreeSet<_>>();
                complex
                    .node_by_support(&s)
                    .ok_or_else(|| FaithError::MissingBranch(l.label.clone()))?
            }
            LineKind::TypeI => {
                let u = classes.interior_neighbor[&v];
                let mine = geoms[v].cells().into_iter().collect::<BTreeSet<Cell>>();
                let common = geoms[u]
                    .cells()
                    .into_iter()
                    .filter(|c| mine.contains(c))
                    .collect::<Vec<_>>();
                let single = match &common[..] {
                    [c] if c.dim() == 0 => complex.node_by_support(&c.support),
                    _ => None,
                };
                single.ok_or_else(|| FaithError::NoSingleMeetingPoint(l.label.clone(), lines[u].label.clone()))?
            }
        };
        out.push(node);
    }
    Ok(out)
}

/// Whether `iso` (graph vertex to complex node) is the well-structured map.
pub fn well_structured_check(
    iso: &[usize],
    lines: &[LineIdeal],
    complex: &TropicalComplex,
    e: &PlanarEmbedding,
) -> Result<bool, FaithError> {
    Ok(intended_images(lines, complex, e)? == iso)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageEntry {
    pub stage: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreSummary {
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaithfulnessCertificate {
    pub status: Status,
    pub genus: usize,
    pub lines: usize,
    pub branch_points: usize,
    pub core: CoreSummary,
    /// `(graph vertex label, complex node id)`
    pub iso: Vec<(String, usize)>,
    pub trees: Vec<PrunedTree>,
    pub well_structured: bool,
    pub stage_log: Vec<StageEntry>,
}

impl FaithfulnessCertificate {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The first failed stage, if any.
    pub fn failed_stage(&self) -> Option<&str> {
        self.stage_log.iter().find(|s| !s.ok).map(|s| s.stage.as_str())
    }

    fn failed(genus: usize, mut log: Vec<StageEntry>, stage: &str, detail: String) -> Self {
        log.push(StageEntry {
            stage: stage.into(),
            ok: false,
            detail,
        });
        Self {
            status: Status::Fail,
            genus,
            lines: 0,
            branch_points: 0,
            core: CoreSummary { nodes: 0, edges: 0 },
            iso: Vec::new(),
            trees: Vec::new(),
            well_structured: false,
            stage_log: log,
        }
    }
}

fn ok(log: &mut Vec<StageEntry>, stage: &str, detail: String) {
    log.push(StageEntry {
        stage: stage.into(),
        ok: true,
        detail,
    });
}

/// Runs the whole pipeline on an embedding.
pub fn certify(e: &PlanarEmbedding) -> FaithfulnessCertificate {
    let g = e.genus();
    let mut log = Vec::new();
    let report = validate_embedding(e);
    if !report.passes() {
        return FaithfulnessCertificate::failed(g, log, "validate", report.violations.join("; "));
    }
    ok(&mut log, "validate", format!("genus {g}"));

    let lines = match build_schoen(e) {
        Ok(l) => l,
        Err(err) => return FaithfulnessCertificate::failed(g, log, "schoen", err.to_string()),
    };
    let type2 = lines.iter().filter(|l| l.kind == LineKind::TypeII).count();
    ok(
        &mut log,
        "schoen",
        format!("{} lines, {} with a sum form", lines.len(), type2),
    );

    let geoms = lines.iter().map(|l| tropicalize_line(l, g)).collect::<Vec<_>>();
    let complex = match build_arrangement(&geoms, g) {
        Ok(c) => c,
        Err(err) => return FaithfulnessCertificate::failed(g, log, "arrangement", err.to_string()),
    };
    ok(
        &mut log,
        "arrangement",
        format!("{} nodes, {} segments", complex.nodes.len(), complex.segments.len()),
    );

    let cg = extract_graph(&complex);
    let (core, trees) = prune_modification(&cg);
    let branch = complex.branch_points();
    if let Some(b) = branch.iter().find(|b| !core.nodes.contains(b)) {
        return FaithfulnessCertificate::failed(g, log, "prune", format!("branch point node {b} was pruned"));
    }
    ok(
        &mut log,
        "prune",
        format!(
            "core {} nodes, {} edges; {} trees",
            core.nodes.len(),
            core.edges.len(),
            trees.len()
        ),
    );

    let intended = intended_images(&lines, &complex, e);
    let hint = intended
        .as_ref()
        .ok()
        .map(|m| m.iter().map(|&x| Some(x)).collect::<Vec<_>>());
    let Some(iso) = graph_isomorphism(&core, e.graph(), hint.as_deref()) else {
        return FaithfulnessCertificate::failed(g, log, "isomorphism", "core is not isomorphic to the graph".into());
    };
    ok(&mut log, "isomorphism", "core is isomorphic to the graph".into());

    let (well_structured, detail) = match &intended {
        Ok(m) if *m == iso => (
            true,
            "interior vertices at branch points, exterior at meeting points".to_string(),
        ),
        Ok(_) => (false, "no isomorphism matches the intended vertex images".to_string()),
        Err(err) => (false, err.to_string()),
    };
    log.push(StageEntry {
        stage: "well_structured".into(),
        ok: well_structured,
        detail,
    });

    let labels = e.graph().labels();
    FaithfulnessCertificate {
        status: if well_structured { Status::Pass } else { Status::Fail },
        genus: g,
        lines: lines.len(),
        branch_points: branch.len(),
        core: CoreSummary {
            nodes: core.nodes.len(),
            edges: core.edges.len(),
        },
        iso: iso.iter().enumerate().map(|(v, &n)| (labels[v].clone(), n)).collect(),
        trees,
        well_structured,
        stage_log: log,
    }
}

/// Embeds the graph first; a non-planar graph fails at stage `planar_embed`.
pub fn certify_graph(g: &Graph, outer: Option<&[usize]>) -> FaithfulnessCertificate {
    match planar_embed(g, outer) {
        Ok(e) => certify(&e),
        Err(err) => {
            FaithfulnessCertificate::failed(g.genus().unwrap_or(0), Vec::new(), "planar_embed", err.to_string())
        }
    }
}

/// Certifies every graph on the way from K4 back up to the start of the trace.
pub fn constructive_pipeline(trace: &ReductionTrace) -> Result<Vec<FaithfulnessCertificate>, FaithError> {
    let steps = replay_inverse(trace)?;
    let mut out = Vec::new();
    for (index, e) in steps.iter().enumerate() {
        let cert = certify(e);
        if !cert.passed() {
            let stage = cert.failed_stage().unwrap_or("unknown").to_string();
            return Err(FaithError::StepFailed { index, stage });
        }
        out.push(cert);
    }
    Ok(out)
}

/// Tag of the node an exterior vertex maps to is always a landing point on
/// valid inputs; exposed for the renderer and tests.
pub fn image_tags(cert: &FaithfulnessCertificate, complex: &TropicalComplex) -> Vec<NodeTag> {
    cert.iso.iter().map(|(_, n)| complex.nodes[*n].tag).collect()
}
