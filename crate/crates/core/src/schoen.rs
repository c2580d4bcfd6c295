//! The schön embedding of a graph curve: one line per vertex of the graph,
//! cut out by the interior-face variables, and the quadric/quartic
//! generators coming from the Stanley–Reisner ideal of the dual complex.
//!
//! Variables are indexed by interior face id, so `x_i` is the variable of
//! face `F{i+1}`. The outer face is the extra vertex `e` of the dual complex.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{FaceId, GraphError, PlanarEmbedding, VertexId, VertexSide};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LineKind {
    /// Exterior vertex: cut out by variables only.
    TypeI,
    /// Interior vertex: variables plus a three-term sum.
    TypeII,
}

/// Linear ideal of the line attached to one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineIdeal {
    pub vertex: VertexId,
    pub label: String,
    pub kind: LineKind,
    pub zero_vars: BTreeSet<usize>,
    /// The three variables of the sum form (TypeII only).
    pub sum_support: Vec<usize>,
}

impl LineIdeal {
    /// Variables not set to zero: the 2 or 3 interior faces at the vertex.
    pub fn free_vars(&self, nvars: usize) -> Vec<usize> {
        (0..nvars).filter(|i| !self.zero_vars.contains(i)).collect()
    }

    /// Generators: the sum form first, then the variables.
    pub fn generators(&self, nvars: usize) -> Vec<Poly> {
        let mut out = Vec::new();
        if self.kind == LineKind::TypeII {
            out.push(Poly::linear_sum(nvars, &self.sum_support));
        }
        out.extend(self.zero_vars.iter().map(|&i| Poly::var(nvars, i)));
        out
    }

    /// Reduces `p` modulo the ideal: zero variables are killed, and for a
    /// TypeII line the first sum variable is eliminated through the sum form.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let zero = self.zero_vars.iter().copied().collect::<Vec<_>>();
        let mut r = p.kill(&zero);
        if let [s0, rest @ ..] = &self.sum_support[..] {
            let n = p.nvars();
            r = r.substitute(*s0, &-Poly::linear_sum(n, rest));
        }
        r
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    /// `L_{v1} = ⟨x_{F1} + x_{F2} + x_{F3}, x_{F4}, x_{F5}⟩`
    pub fn render(&self, nvars: usize) -> String {
        let gens = self
            .generators(nvars)
            .iter()
            .map(|g| g.render(var_name))
            .collect::<Vec<_>>();
        format!("L_{{{}}} = ⟨{}⟩", self.label, gens.join(", "))
    }
}

/// Display name of variable `i`.
pub fn var_name(i: usize) -> String {
    format!("x_{{F{}}}", i + 1)
}

/// One line ideal per vertex of the embedded graph.
pub fn build_schoen(e: &PlanarEmbedding) -> Result<Vec<LineIdeal>, GraphError> {
    let classes = e.classify_vertices()?;
    let g = e.genus();
    let mut lines = Vec::new();
    for v in 0..e.graph().vertex_count() {
        let faces = e.interior_faces_at(v);
        let kind = match classes.side[v] {
            VertexSide::Exterior => LineKind::TypeI,
            VertexSide::Interior => LineKind::TypeII,
        };
        let expected = if kind == LineKind::TypeI { 2 } else { 3 };
        if faces.len() != expected || e.faces_at(v).len() != 3 {
            return Err(GraphError::Hypothesis(format!(
                "vertex {} meets {} interior faces",
                e.graph().label(v),
                faces.len()
            )));
        }
        let zero_vars = (0..g).filter(|f| !faces.contains(f)).collect::<BTreeSet<_>>();
        let sum_support = if kind == LineKind::TypeII {
            faces.iter().copied().collect()
        } else {
            Vec::new()
        };
        lines.push(LineIdeal {
            vertex: v,
            label: e.graph().label(v).to_string(),
            kind,
            zero_vars,
            sum_support,
        });
    }
    Ok(lines)
}

/// The simplicial complex dual to the embedded graph: vertices are the faces
/// `0..=g` (with `g` the outer face `e`), facets the face triples at each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualComplex {
    pub genus: usize,
    pub facets: Vec<[FaceId; 3]>,
    /// Minimal non-faces, each sorted, ordered by (contains `e`, lex).
    pub non_faces: Vec<Vec<FaceId>>,
}

impl DualComplex {
    pub fn outer(&self) -> FaceId {
        self.genus
    }

    pub fn is_face(&self, s: &[FaceId]) -> bool {
        s.len() <= 3 && self.facets.iter().any(|f| s.iter().all(|x| f.contains(x)))
    }
}

pub fn dual_complex(e: &PlanarEmbedding) -> Result<DualComplex, GraphError> {
    let mut facets = Vec::new();
    for v in 0..e.graph().vertex_count() {
        let mut fs = e.faces_at(v);
        if fs.len() != 3 {
            return Err(GraphError::Hypothesis(format!(
                "vertex {} meets {} distinct faces",
                e.graph().label(v),
                fs.len()
            )));
        }
        fs.sort_unstable();
        facets.push([fs[0], fs[1], fs[2]]);
    }
    facets.sort_unstable();
    let genus = e.genus();
    let mut m = DualComplex {
        genus,
        facets,
        non_faces: Vec::new(),
    };
    let n = genus + 1;
    let mut non_faces = Vec::new();
    for size in 1..=4 {
        for s in subsets(n, size) {
            if !m.is_face(&s) && (0..s.len()).all(|skip| m.is_face(&without(&s, skip))) {
                non_faces.push(s);
            }
        }
    }
    non_faces.sort_by_key(|s| (s.contains(&genus), s.clone()));
    m.non_faces = non_faces;
    Ok(m)
}

fn without(s: &[usize], skip: usize) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &x)| x)
        .collect()
}

/// All increasing `k`-subsets of `0..n`, in lex order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// A linear factor of a generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Factor {
    /// The variable `x_i`.
    Var(usize),
    /// A sum of variables; for Stanley–Reisner generators this is the
    /// substituted outer variable, the sum of all `g` variables.
    Sum(Vec<usize>),
}

impl Factor {
    pub fn poly(&self, nvars: usize) -> Poly {
        match self {
            Factor::Var(i) => Poly::var(nvars, *i),
            Factor::Sum(s) => Poly::linear_sum(nvars, s),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Factor::Var(i) => var_name(*i),
            Factor::Sum(s) => format!("({})", s.iter().map(|&i| var_name(i)).collect::<Vec<_>>().join(" + ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    /// The minimal non-face it comes from (empty for hand-made generators).
    pub non_face: Vec<FaceId>,
    pub factors: Vec<Factor>,
    #[serde(skip)]
    pub poly: Poly,
}

impl Generator {
    /// Product of the factors, sign-normalized so the leading coefficient is +1.
    pub fn from_factors(nvars: usize, non_face: Vec<FaceId>, factors: Vec<Factor>) -> Self {
        let poly = factors
            .iter()
            .fold(Poly::one(nvars), |acc, f| &acc * &f.poly(nvars))
            .normalize_sign();
        Self {
            non_face,
            factors,
            poly,
        }
    }

    pub fn render(&self) -> String {
        self.poly.render(var_name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub nvars: usize,
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    /// `⟨g1, g2, ...⟩`
    pub fn render(&self) -> String {
        format!(
            "⟨{}⟩",
            self.generators
                .iter()
                .map(Generator::render)
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// One generator per minimal non-face: the product of its face variables,
/// with the outer variable replaced by minus the sum of all others.
pub fn stanley_reisner_generators(m: &DualComplex) -> GeneratorSet {
    let g = m.genus;
    let all = (0..g).collect::<Vec<_>>();
    let generators = m
        .non_faces
        .iter()
        .map(|s| {
            let factors = s
                .iter()
                .map(|&f| {
                    if f == g {
                        Factor::Sum(all.clone())
                    } else {
                        Factor::Var(f)
                    }
                })
                .collect();
            Generator::from_factors(g, s.clone(), factors)
        })
        .collect();
    GeneratorSet { nvars: g, generators }
}

/// First (generator index, line index) pair where the generator does not
/// vanish on the line.
pub fn containment_failure(gens: &GeneratorSet, lines: &[LineIdeal]) -> Option<(usize, usize)> {
    gens.generators
        .iter()
        .enumerate()
        .find_map(|(i, g)| lines.iter().position(|l| !l.contains(&g.poly)).map(|j| (i, j)))
}

/// Every generator lies in every line ideal.
pub fn verify_containment(gens: &GeneratorSet, lines: &[LineIdeal]) -> bool {
    containment_failure(gens, lines).is_none()
}
