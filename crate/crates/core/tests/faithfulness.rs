use graph_curves::census::three_connected_planar_cubic;
use graph_curves::faithful::{certify, constructive_pipeline, extract_graph, prune_modification};
use graph_curves::graph::{planar_embed, OuterChoice};
use graph_curves::schoen::build_schoen;
use graph_curves::transform::reduce_to_k4;
use graph_curves::tropical::{build_arrangement, tropicalize_line};

#[test]
fn census_certifies_under_every_outer_face() {
    for n in [4, 6, 8, 10, 12] {
        for g in three_connected_planar_cubic(n) {
            let base = planar_embed(&g, None).unwrap();
            for f in 0..base.faces().len() {
                let (u, v) = base.faces()[f].boundary[0];
                let e = base.with_outer(OuterChoice::Dart(u, v)).unwrap();
                let cert = certify(&e);
                assert!(cert.passed(), "{:?}", cert.stage_log);
                let genus = e.genus();
                let interior = (0..n).filter(|&v| !e.is_exterior(v)).count();
                assert_eq!(cert.lines, 2 * genus - 2);
                assert_eq!(cert.branch_points, interior);
                assert_eq!((cert.core.nodes, cert.core.edges), (2 * genus - 2, 3 * genus - 3));
                assert_eq!(certify(&e), cert);
            }
        }
    }
}

#[test]
fn pruning_reassembles_the_complex() {
    for n in [4, 6, 8, 10] {
        for g in three_connected_planar_cubic(n) {
            let e = planar_embed(&g, None).unwrap();
            let lines = build_schoen(&e).unwrap();
            let geoms = lines.iter().map(|l| tropicalize_line(l, e.genus())).collect::<Vec<_>>();
            let cg = extract_graph(&build_arrangement(&geoms, e.genus()).unwrap());
            let (core, trees) = prune_modification(&cg);
            let tree_edges = trees.iter().map(|t| t.size).sum::<usize>();
            assert_eq!(core.unsuppressed_edges + tree_edges, cg.edges.len());
            for t in &trees {
                // a tree on k pruned nodes plus its attachment has k edges
                assert_eq!(t.size, t.nodes.len());
                assert!(t.attachment.is_some());
            }
        }
    }
}

#[test]
fn census_pipelines_pass() {
    for n in [6, 8, 10] {
        for g in three_connected_planar_cubic(n) {
            let t = reduce_to_k4(&planar_embed(&g, None).unwrap()).unwrap();
            let certs = constructive_pipeline(&t).unwrap();
            assert_eq!(certs.len(), t.moves.len() + 1);
        }
    }
}
