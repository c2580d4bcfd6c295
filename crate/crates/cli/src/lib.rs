//! The `graphcurve` command line. [`run`] parses arguments, dispatches and
//! returns the exit code: 0 on success, 1 when the mathematics says no, 2 for
//! usage or input errors.

pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_curves::faithful::{
    certify, constructive_pipeline, extract_graph, prune_modification, FaithError, FaithfulnessCertificate,
};
use graph_curves::graph::{
    find_isomorphism, named, parse_graph, validate, validate_embedding, Graph, GraphError, GraphFile, PlanarEmbedding,
};
use graph_curves::lifting::{check_schoen_deformation, weighted_quadrics, CUBE_DEFORMATION};
use graph_curves::schoen::{build_schoen, dual_complex, stanley_reisner_generators, var_name, GeneratorSet};
use graph_curves::transform::{apply_trace, reduce_to_k4, ReductionTrace, TransformError};
use graph_curves::tropical::{build_arrangement, tropical_basis_check, tropicalize_line, TropicalComplex};
use serde_json::{json, Value};

/// The cube with its standard face labels, used by `liftcheck` by default.
pub const CUBE_GRAPH: &str = include_str!("../../../data/cube.graph");

#[derive(Parser, Debug)]
#[command(
    name = "graphcurve",
    version,
    about = "Graph curves, their schön embeddings and tropicalizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Graph file.
    input: PathBuf,
    /// Outer face, as a comma- or space-separated list of vertex labels.
    #[arg(long)]
    outer: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum What {
    Embedding,
    Complex,
    Core,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the hypotheses: simple, cubic, three-connected, planar.
    Validate(Common),
    /// List the faces of the embedding.
    Faces(Common),
    /// Print the linear ideal of every line.
    Schoen(Common),
    /// Print the generators of the embedded curve's ideal.
    Srgens(Common),
    /// Reduce to K4, or replay a given trace.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print the tropicalized line arrangement.
    Tropicalize(Common),
    /// Certify weak faithfulness; with a trace, certify every step from K4.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check that the generators form a tropical basis.
    Basischeck(Common),
    /// Check that quadrics over the valued field reduce to the generators.
    Liftcheck {
        /// Quadric file; the bundled cube deformation if omitted.
        quadrics: Option<PathBuf>,
        /// Graph whose generators the fibers must match; the cube if omitted.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        outer: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the embedding, the tropical complex or its core as SVG.
    Render {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = What::Embedding)]
        what: What,
    },
}

/// Why a command did not succeed.
#[derive(Debug)]
enum Failure {
    Usage(String),
    /// Mathematical failure; the output is still written.
    Math {
        output: Option<String>,
        message: String,
    },
}

impl Failure {
    fn math(message: impl Into<String>) -> Self {
        Failure::Math {
            output: None,
            message: message.into(),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Parse { .. }
            | GraphError::UnknownVertex(_)
            | GraphError::InvalidRotation(_)
            | GraphError::UnknownOuterFace => Failure::Usage(e.to_string()),
            _ => Failure::math(e.to_string()),
        }
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::TraceParse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::math(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, pass: true }
    }
}

/// Runs the command line and returns its exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::Liftcheck { out, .. } => out.clone(),
        Command::Reduce { common, .. } | Command::Certify { common, .. } | Command::Render { common, .. } => {
            common.out.clone()
        }
        Command::Validate(c)
        | Command::Faces(c)
        | Command::Schoen(c)
        | Command::Srgens(c)
        | Command::Tropicalize(c)
        | Command::Basischeck(c) => c.out.clone(),
    };
    let (output, code) = match dispatch(cli.command) {
        Ok(o) => {
            let code = if o.pass { 0 } else { 1 };
            (Some(o.text), code)
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            (None, 2)
        }
        Err(Failure::Math { output, message }) => {
            let _ = writeln!(stderr, "FAIL: {message}");
            (output, 1)
        }
    };
    if let Some(text) = output {
        match out_path {
            Some(p) => {
                if let Err(e) = std::fs::write(&p, text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", p.display());
                    return 2;
                }
            }
            None => {
                let _ = stdout.write_all(text.as_bytes());
            }
        }
    }
    code
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GraphFile, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn embed(file: &GraphFile, outer: Option<&str>) -> Result<PlanarEmbedding, Failure> {
    let outer = outer.map(|s| file.vertices(s)).transpose()?;
    Ok(file.embedding_with_outer(outer.as_deref().or(file.outer.as_deref()))?)
}

/// Embeds and insists on the hypotheses.
fn valid_embedding(c: &Common) -> Result<(GraphFile, PlanarEmbedding), Failure> {
    let file = load(&c.input)?;
    let e = embed(&file, c.outer.as_deref())?;
    let report = validate_embedding(&e);
    if !report.passes() {
        return Err(Failure::math(format!(
            "invalid input: {}",
            report.violations.join("; ")
        )));
    }
    Ok((file, e))
}

fn no_svg(format: Format) -> Result<(), Failure> {
    if format == Format::Svg {
        return Err(Failure::Usage("svg output is only available from `render`".into()));
    }
    Ok(())
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Validate(c) => cmd_validate(&c),
        Command::Faces(c) => cmd_faces(&c),
        Command::Schoen(c) => cmd_schoen(&c),
        Command::Srgens(c) => cmd_srgens(&c),
        Command::Reduce { common, trace } => cmd_reduce(&common, trace.as_deref()),
        Command::Tropicalize(c) => cmd_tropicalize(&c),
        Command::Certify { common, trace } => cmd_certify(&common, trace.as_deref()),
        Command::Basischeck(c) => cmd_basischeck(&c),
        Command::Liftcheck {
            quadrics,
            graph,
            outer,
            format,
            ..
        } => cmd_liftcheck(quadrics.as_deref(), graph.as_deref(), outer.as_deref(), format),
        Command::Render { common, what } => cmd_render(&common, what),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_validate(c: &Common) -> Result<Output, Failure> {
    no_svg(c.format)?;
    let file = load(&c.input)?;
    let report = match (&c.outer, &file.rotation, &file.outer) {
        (None, None, None) => validate(&file.graph),
        _ => match embed(&file, c.outer.as_deref()) {
            Ok(e) => validate_embedding(&e),
            Err(Failure::Math { .. }) => validate(&file.graph),
            Err(u) => return Err(u),
        },
    };
    let pass = report.passes();
    let text = match c.format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["status"] = json!(if pass { "PASS" } else { "FAIL" });
            to_json(&v)
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "graph: {}", file.name);
            let _ = writeln!(s, "simple: {}", yes(report.simple));
            let _ = writeln!(s, "connected: {}", yes(report.connected));
            let _ = writeln!(s, "cubic: {}", yes(report.cubic));
            let _ = writeln!(s, "bridgeless: {}", yes(report.bridgeless));
            let _ = writeln!(s, "edge connectivity: {}", report.edge_connectivity);
            let _ = writeln!(s, "planar: {}", yes(report.planar));
            let _ = writeln!(s, "three-connected: {}", yes(report.three_connected));
            for v in &report.violations {
                let _ = writeln!(s, "violation: {v}");
            }
            let _ = writeln!(s, "status: {}", if pass { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok(Output { text, pass })
}

fn labels(e: &PlanarEmbedding, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| e.graph().label(v).to_string()).collect()
}

fn cmd_faces(c: &Common) -> Result<Output, Failure> {
    no_svg(c.format)?;
    let file = load(&c.input)?;
    let e = embed(&file, c.outer.as_deref())?;
    let text = match c.format {
        Format::Json => {
            let faces = (0..e.faces().len())
                .map(|f| json!({"name": e.face_name(f), "vertices": labels(&e, &e.faces()[f].vertices())}))
                .collect::<Vec<_>>();
            to_json(&json!({"graph": file.name, "genus": e.genus(), "faces": faces}))
        }
        _ => (0..e.faces().len())
            .map(|f| format!("{}: {}\n", e.face_name(f), e.describe_face(f)))
            .collect(),
    };
    Ok(Output::ok(text))
}

fn cmd_schoen(c: &Common) -> Result<Output, Failure> {
    no_svg(c.format)?;
    let (_, e) = valid_embedding(c)?;
    let lines = build_schoen(&e)?;
    let g = e.genus();
    let text = match c.format {
        Format::Json => {
            let v = lines
                .iter()
                .map(|l| {
                    let gens = l.generators(g).iter().map(|p| p.render(var_name)).collect::<Vec<_>>();
                    json!({"vertex": l.label, "kind": l.kind, "generators": gens, "ideal": l.render(g)})
                })
                .collect::<Vec<_>>();
            to_json(&v)
        }
        _ => lines.iter().map(|l| format!("{}\n", l.render(g))).collect(),
    };
    Ok(Output::ok(text))
}

fn generators(e: &PlanarEmbedding) -> Result<GeneratorSet, Failure> {
    Ok(stanley_reisner_generators(&dual_complex(e)?))
}

fn cmd_srgens(c: &Common) -> Result<Output, Failure> {
    no_svg(c.format)?;
    let (_, e) = valid_embedding(c)?;
    let gens = generators(&e)?;
    let text = match c.format {
        Format::Json => {
            let v = gens
                .generators
                .iter()
                .map(|g| {
                    let nf = g.non_face.iter().map(|&f| e.face_name(f)).collect::<Vec<_>>();
                    json!({"non_face": nf, "generator": g.render()})
                })
                .collect::<Vec<_>>();
            to_json(&json!({"nvars": gens.nvars, "generators": v}))
        }
        _ => gens.generators.iter().map(|g| format!("{}\n", g.render())).collect(),
    };
    Ok(Output::ok(text))
}

/// Name of a small named graph isomorphic to `g`, if any.
pub fn known_name(g: &Graph) -> Option<&'static str> {
    let named: [(&str, Graph); 4] = [
        ("k4", named::k4()),
        ("prism", named::prism()),
        ("sliced_prism", named::sliced_prism()),
        ("cube", named::cube()),
    ];
    named
        .into_iter()
        .find(|(_, h)| find_isomorphism(g, h).is_some())
        .map(|(n, _)| n)
}

fn trace_for(c: &Common, trace: Option<&Path>) -> Result<ReductionTrace, Failure> {
    let (_, e) = valid_embedding(c)?;
    Ok(match trace {
        Some(p) => apply_trace(&e, &read(p)?)?,
        None => reduce_to_k4(&e)?,
    })
}

fn cmd_reduce(c: &Common, trace: Option<&Path>) -> Result<Output, Failure> {
    no_svg(c.format)?;
    let t = trace_for(c, trace)?;
    let text = match c.format {
        Format::Json => {
            let steps = t
                .moves
                .iter()
                .zip(&t.intermediates)
                .map(|(m, e)| {
                    json!({
                        "move": m.to_string(),
                        "record": m,
                        "genus": e.genus(),
                        "vertices": e.graph().vertex_count(),
                        "isomorphic_to": known_name(e.graph()),
                    })
                })
                .collect::<Vec<_>>();
            to_json(&json!({"start_genus": t.start.genus(), "moves": steps}))
        }
        _ => {
            let mut s = String::new();
            for (m, e) in t.moves.iter().zip(&t.intermediates) {
                let name = known_name(e.graph()).map(|n| format!(", {n}")).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{m}  # genus {}, {} vertices{name}",
                    e.genus(),
                    e.graph().vertex_count()
                );
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn complex_of(e: &PlanarEmbedding) -> Result<TropicalComplex, Failure> {
    let g = e.genus();
    let lines = build_schoen(e)?
        .iter()
        .map(|l| tropicalize_line(l, g))
        .collect::<Vec<_>>();
    build_arrangement(&lines, g).map_err(|err| Failure::math(err.to_string()))
}

fn support_names(s: &[usize]) -> Vec<String> {
    s.iter().map(|i| format!("F{}", i + 1)).collect()
}

/// Machine form of a complex.
pub fn complex_json(c: &TropicalComplex) -> Value {
    let nodes = c
        .nodes
        .iter()
        .map(|n| json!({"id": n.id, "support": support_names(n.point.support()), "tag": n.tag.as_str()}))
        .collect::<Vec<_>>();
    let segments = c
        .segments
        .iter()
        .map(|s| json!({"from": s.from, "to": s.to, "line": s.line, "cells": s.cells}))
        .collect::<Vec<_>>();
    json!({"nvars": c.nvars, "nodes": nodes, "segments": segments})
}

fn cmd_tropicalize(c: &Common) -> Result<Output, Failure> {
    no_svg(c.format)?;
    let (_, e) = valid_embedding(c)?;
    let cx = complex_of(&e)?;
    let text = match c.format {
        Format::Json => to_json(&complex_json(&cx)),
        _ => {
            let mut s = String::new();
            for n in &cx.nodes {
                let _ = writeln!(
                    s,
                    "node {} [{}] {}",
                    n.id,
                    support_names(n.point.support()).join(","),
                    n.tag.as_str()
                );
            }
            for seg in &cx.segments {
                let _ = writeln!(s, "segment {} -- {} on L_{{{}}}", seg.from, seg.to, seg.line);
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn certificate_text(cert: &FaithfulnessCertificate) -> String {
    let mut s = String::new();
    let status = if cert.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(s, "status: {status}");
    for st in &cert.stage_log {
        let _ = writeln!(
            s,
            "  {} {}: {}",
            if st.ok { "ok" } else { "FAILED" },
            st.stage,
            st.detail
        );
    }
    if !cert.iso.is_empty() {
        let _ = writeln!(s, "core: {} nodes, {} edges", cert.core.nodes, cert.core.edges);
        let map = cert
            .iso
            .iter()
            .map(|(v, n)| format!("{v}->{n}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(s, "map: {map}");
        let _ = writeln!(s, "trees: {}", cert.trees.len());
        let _ = writeln!(s, "well structured: {}", yes(cert.well_structured));
    }
    s
}

fn cmd_certify(c: &Common, trace: Option<&Path>) -> Result<Output, Failure> {
    no_svg(c.format)?;
    if let Some(t) = trace {
        let t = trace_for(c, Some(t))?;
        return match constructive_pipeline(&t) {
            Ok(certs) => {
                let text = match c.format {
                    Format::Json => to_json(&certs),
                    _ => certs
                        .iter()
                        .enumerate()
                        .map(|(i, cert)| format!("step {i} (genus {})\n{}", cert.genus, certificate_text(cert)))
                        .collect(),
                };
                Ok(Output::ok(text))
            }
            Err(FaithError::Replay(e)) => Err(e.into()),
            Err(e) => Err(Failure::math(e.to_string())),
        };
    }
    let file = load(&c.input)?;
    let cert = match embed(&file, c.outer.as_deref()) {
        Ok(e) => certify(&e),
        Err(Failure::Math { .. }) => graph_curves::faithful::certify_graph(&file.graph, None),
        Err(u) => return Err(u),
    };
    let text = match c.format {
        Format::Json => to_json(&cert),
        _ => certificate_text(&cert),
    };
    if cert.passed() {
        Ok(Output::ok(text))
    } else {
        let stage = cert.failed_stage().unwrap_or("unknown").to_string();
        Err(Failure::Math {
            output: Some(text),
            message: format!("certification failed at stage {stage}"),
        })
    }
}

fn cmd_basischeck(c: &Common) -> Result<Output, Failure> {
    no_svg(c.format)?;
    let (_, e) = valid_embedding(c)?;
    let gens = generators(&e)?;
    let cx = complex_of(&e)?;
    let result = tropical_basis_check(&gens, &cx);
    let text = match (&result, c.format) {
        (_, Format::Json) => match &result {
            Ok(cert) => to_json(&json!({"status": "PASS", "certificate": cert})),
            Err(v) => to_json(&json!({"status": "FAIL", "violation": v})),
        },
        (Ok(cert), _) => {
            let mut s = format!(
                "PASS: {} cells checked, {} selection pieces\n",
                cert.cells_checked,
                cert.pieces.len()
            );
            for p in &cert.pieces {
                let _ = writeln!(s, "  {}", p.describe());
            }
            s
        }
        (Err(v), _) => format!("FAIL: {v:?}\n"),
    };
    match result {
        Ok(_) => Ok(Output::ok(text)),
        Err(_) => Err(Failure::Math {
            output: Some(text),
            message: "not a tropical basis".into(),
        }),
    }
}

fn cmd_liftcheck(
    quadrics: Option<&Path>,
    graph: Option<&Path>,
    outer: Option<&str>,
    format: Format,
) -> Result<Output, Failure> {
    no_svg(format)?;
    let src = match quadrics {
        Some(p) => read(p)?,
        None => CUBE_DEFORMATION.to_string(),
    };
    let qs = weighted_quadrics(&src).map_err(|e| Failure::Usage(e.to_string()))?;
    let file = match graph {
        Some(p) => load(p)?,
        None => parse_graph(CUBE_GRAPH)?,
    };
    let e = embed(&file, outer)?;
    let gens = generators(&e)?;
    let (ok, matches) = check_schoen_deformation(&qs, &gens).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = match format {
        Format::Json => to_json(&json!({"status": if ok { "PASS" } else { "FAIL" }, "fibers": matches})),
        _ => {
            let mut s = String::new();
            for (m, (_, q)) in matches.iter().zip(&qs) {
                let target = m
                    .generator
                    .map(|k| gens.generators[k].render())
                    .unwrap_or_else(|| "no generator".into());
                let note = if q.poly.is_integral() { "" } else { "  (not integral)" };
                let _ = writeln!(s, "{}: fiber at h=0 is {} -> {target}{note}", m.name, m.fiber);
            }
            let _ = writeln!(s, "status: {}", if ok { "PASS" } else { "FAIL" });
            s
        }
    };
    if ok {
        Ok(Output::ok(text))
    } else {
        Err(Failure::Math {
            output: Some(text),
            message: "fibers do not match the generators".into(),
        })
    }
}

fn cmd_render(c: &Common, what: What) -> Result<Output, Failure> {
    if c.format == Format::Json {
        return Err(Failure::Usage("render produces svg or text".into()));
    }
    let title = c
        .input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("graph")
        .to_string();
    let text = match what {
        What::Embedding => {
            let file = load(&c.input)?;
            svg::render_embedding(&embed(&file, c.outer.as_deref())?, &title)
        }
        What::Complex => svg::render_complex(&complex_of(&valid_embedding(c)?.1)?, &title),
        What::Core => {
            let cx = complex_of(&valid_embedding(c)?.1)?;
            let (core, _) = prune_modification(&extract_graph(&cx));
            svg::render_core(&cx, &core, &title)
        }
    };
    Ok(Output::ok(text))
}
