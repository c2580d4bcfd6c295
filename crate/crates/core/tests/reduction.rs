use graph_curves::census::three_connected_planar_cubic;
use graph_curves::graph::{find_isomorphism, planar_embed, validate_embedding, OuterChoice};
use graph_curves::transform::{reduce_to_k4, replay_inverse, MoveKind};

#[test]
fn every_small_polyhedral_cubic_graph_reduces_and_replays() {
    for n in [4, 6, 8, 10, 12] {
        for g in three_connected_planar_cubic(n) {
            let base = planar_embed(&g, None).unwrap();
            for f in 0..base.faces().len() {
                let (u, v) = base.faces()[f].boundary[0];
                let e = base.with_outer(OuterChoice::Dart(u, v)).unwrap();
                let t = reduce_to_k4(&e).unwrap_or_else(|err| panic!("{g:?}: {err}"));
                let mut genus = e.genus();
                for (m, step) in t.moves.iter().zip(&t.intermediates) {
                    assert!(validate_embedding(step).passes());
                    let expect = if m.kind == MoveKind::DeltaY { genus - 1 } else { genus };
                    assert_eq!(step.genus(), expect);
                    genus = expect;
                }
                let replay = replay_inverse(&t).unwrap();
                assert!(find_isomorphism(replay.last().unwrap().graph(), &g).is_some());
            }
        }
    }
}
