//! Schematic SVG drawings. Layouts are deterministic and carry no metric
//! meaning.

use std::f64::consts::PI;
use std::fmt::Write as _;

use graph_curves::faithful::Core;
use graph_curves::graph::PlanarEmbedding;
use graph_curves::tropical::{NodeTag, TropicalComplex};

const SIZE: f64 = 480.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 190.0;

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    out.push_str(
        "<style>line,polyline{stroke:#333;stroke-width:1.5;fill:none}text{font:12px sans-serif}\
         .face-label{fill:#06c}.branch{fill:#c00}.corner{fill:#222}.landing{fill:#080}\
         .glue{fill:#f90}.ray-end{fill:#999}.vertex{fill:#fff;stroke:#333}</style>\n",
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn on_circle(k: usize, n: usize, jitter: f64) -> (f64, f64) {
    let a = 2.0 * PI * k as f64 / n as f64 - PI / 2.0 + jitter;
    (CENTER + RADIUS * a.cos(), CENTER + RADIUS * a.sin())
}

/// Tutte layout: outer face on a circle, every other vertex at the average
/// of its neighbours.
pub fn tutte_layout(e: &PlanarEmbedding) -> Vec<(f64, f64)> {
    let g = e.graph();
    let n = g.vertex_count();
    let outer = e.outer_face().vertices();
    let mut pos = vec![(CENTER, CENTER); n];
    let mut fixed = vec![false; n];
    for (k, &v) in outer.iter().enumerate() {
        pos[v] = on_circle(k, outer.len(), 0.0);
        fixed[v] = true;
    }
    for _ in 0..2000 {
        for v in 0..n {
            if fixed[v] {
                continue;
            }
            let nb = g.neighbors(v);
            let (sx, sy) = nb.iter().fold((0.0, 0.0), |(x, y), &u| (x + pos[u].0, y + pos[u].1));
            pos[v] = (sx / nb.len() as f64, sy / nb.len() as f64);
        }
    }
    pos
}

pub fn render_embedding(e: &PlanarEmbedding, title: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let g = e.graph();
    let pos = tutte_layout(e);
    for (u, v) in g.edges() {
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            pos[u].0, pos[u].1, pos[v].0, pos[v].1
        );
    }
    for (f, face) in e.faces().iter().enumerate() {
        let name = e.face_name(f);
        let (x, y) = if f == e.outer_id() {
            (12.0, 20.0)
        } else {
            let vs = face.vertices();
            let k = vs.len() as f64;
            let (sx, sy) = vs.iter().fold((0.0, 0.0), |(x, y), &v| (x + pos[v].0, y + pos[v].1));
            (sx / k, sy / k)
        };
        let _ = writeln!(out, r#"<text class="face-label" x="{x:.2}" y="{y:.2}">{name}</text>"#);
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        let _ = writeln!(out, r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="5"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 7.0,
            y - 7.0,
            escape(g.label(v))
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Corners of the simplex on a slightly irregular circle; every other node
/// at the average of the corners in its support.
pub fn complex_layout(c: &TropicalComplex) -> Vec<(f64, f64)> {
    let corners = (0..c.nvars)
        .map(|i| on_circle(i, c.nvars.max(1), 0.25 * (i as f64 * 1.7).sin()))
        .collect::<Vec<_>>();
    c.nodes
        .iter()
        .map(|node| {
            let s = node.point.support();
            let k = s.len() as f64;
            let (sx, sy) = s
                .iter()
                .fold((0.0, 0.0), |(x, y), &i| (x + corners[i].0, y + corners[i].1));
            (sx / k, sy / k)
        })
        .collect()
}

fn glyph(out: &mut String, tag: NodeTag, x: f64, y: f64) {
    let class = tag.as_str();
    match tag {
        NodeTag::Branch => {
            let _ = writeln!(out, r#"<circle class="node {class}" cx="{x:.2}" cy="{y:.2}" r="6"/>"#);
        }
        NodeTag::Corner => {
            let _ = writeln!(
                out,
                r#"<rect class="node {class}" x="{:.2}" y="{:.2}" width="10" height="10"/>"#,
                x - 5.0,
                y - 5.0
            );
        }
        _ => {
            let _ = writeln!(
                out,
                r#"<polygon class="node {class}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
                x,
                y - 6.0,
                x + 6.0,
                y,
                x,
                y + 6.0,
                x - 6.0,
                y
            );
        }
    }
}

fn node_label(c: &TropicalComplex, id: usize) -> String {
    let s = c.nodes[id].point.support();
    s.iter().map(|i| format!("F{}", i + 1)).collect::<Vec<_>>().join(",")
}

pub fn render_complex(c: &TropicalComplex, title: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let pos = complex_layout(c);
    for s in &c.segments {
        let (a, b) = (pos[s.from], pos[s.to]);
        let _ = writeln!(
            out,
            r#"<line class="segment" data-line="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            escape(&s.line),
            a.0,
            a.1,
            b.0,
            b.1
        );
    }
    for (node, &(x, y)) in c.nodes.iter().zip(&pos) {
        glyph(&mut out, node.tag, x, y);
        if node.tag == NodeTag::Corner {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                x + 8.0,
                y - 8.0,
                node_label(c, node.id)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The pruned, suppressed core drawn over the complex's node positions.
pub fn render_core(c: &TropicalComplex, core: &Core, title: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let pos = complex_layout(c);
    for e in &core.edges {
        let pts = e
            .path
            .iter()
            .map(|&n| format!("{:.2},{:.2}", pos[n].0, pos[n].1))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, r#"<polyline class="core-edge" points="{pts}"/>"#);
    }
    for &n in &core.nodes {
        glyph(&mut out, c.nodes[n].tag, pos[n].0, pos[n].1);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_curves::graph::{named, planar_embed};
    use graph_curves::schoen::build_schoen;
    use graph_curves::tropical::{build_arrangement, tropicalize_line};

    fn complex(e: &PlanarEmbedding) -> TropicalComplex {
        let lines = build_schoen(e)
            .unwrap()
            .iter()
            .map(|l| tropicalize_line(l, e.genus()))
            .collect::<Vec<_>>();
        build_arrangement(&lines, e.genus()).unwrap()
    }

    #[test]
    fn k4_complex_glyphs() {
        let svg = render_complex(&complex(&planar_embed(&named::k4(), None).unwrap()), "k4");
        assert_eq!(svg.matches(r#"class="node branch""#).count(), 1);
        assert_eq!(svg.matches(r#"class="node corner""#).count(), 3);
        assert_eq!(svg.matches(r#"class="node landing""#).count(), 3);
    }

    #[test]
    fn cube_faces_labelled() {
        let e = planar_embed(&named::cube(), Some(&[4, 5, 6, 7])).unwrap();
        let svg = render_embedding(&e, "cube");
        for name in ["F1", "F2", "F3", "F4", "F5", "outer"] {
            assert!(svg.contains(&format!(">{name}</text>")), "{name}");
        }
    }

    #[test]
    fn empty_complex() {
        let svg = render_complex(&TropicalComplex::default(), "empty");
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("class=\"node"));
    }

    #[test]
    fn interior_vertices_inside() {
        let e = planar_embed(&named::cube(), Some(&[4, 5, 6, 7])).unwrap();
        for (v, (x, y)) in tutte_layout(&e).into_iter().enumerate() {
            let r = ((x - CENTER).powi(2) + (y - CENTER).powi(2)).sqrt();
            assert!(if e.is_exterior(v) {
                (r - RADIUS).abs() < 1e-9
            } else {
                r < RADIUS - 1.0
            });
        }
    }
}
