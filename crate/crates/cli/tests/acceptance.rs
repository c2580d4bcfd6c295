//! One line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use graph_curves::census::{connected_cubic_graphs, three_connected_planar_cubic};
use graph_curves::faithful::{certify, constructive_pipeline};
use graph_curves::graph::{
    all_embeddings, edge_connectivity, find_isomorphism, is_planar, named, parse_graph, planar_embed, validate,
    OuterChoice, PlanarEmbedding,
};
use graph_curves::lifting::{
    cmp_valuation, fiber_at_h0, homogenize_weight, initial_form, standard_weight, x_monomial, ValuedPolynomial,
    ValuedScalar,
};
use graph_curves::schoen::{build_schoen, dual_complex, stanley_reisner_generators, Factor, Generator, LineKind};
use graph_curves::transform::reduce_to_k4;
use graph_curves::tropical::{build_arrangement, tropical_basis_check, tropicalize_line, BasisViolation};
use graph_curves_cli::run;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("graphcurve").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cube() -> PlanarEmbedding {
    parse_graph(&std::fs::read_to_string(data("cube.graph")).unwrap())
        .unwrap()
        .embedding()
        .unwrap()
}

fn c1_cube_ideals() -> Outcome {
    // (vertex, sum support or empty, zero variables), faces numbered from 1
    let oracle: [(&str, &[usize], &[usize]); 8] = [
        ("v1", &[1, 2, 3], &[4, 5]),
        ("v2", &[1, 4, 3], &[2, 5]),
        ("v3", &[1, 4, 5], &[2, 3]),
        ("v4", &[1, 2, 5], &[3, 4]),
        ("v5", &[], &[1, 3, 4]),
        ("v6", &[], &[1, 4, 5]),
        ("v7", &[], &[1, 2, 5]),
        ("v8", &[], &[1, 2, 3]),
    ];
    let lines = build_schoen(&cube()).map_err(|e| e.to_string())?;
    ensure(lines.len() == 8, || format!("{} lines", lines.len()))?;
    for (label, sum, zeros) in oracle {
        let l = lines
            .iter()
            .find(|l| l.label == label)
            .ok_or(format!("no line for {label}"))?;
        let got_sum = l.sum_support.iter().map(|i| i + 1).collect::<BTreeSet<_>>();
        let got_zero = l.zero_vars.iter().map(|i| i + 1).collect::<BTreeSet<_>>();
        let kind_ok = (l.kind == LineKind::TypeII) == !sum.is_empty();
        ensure(
            kind_ok && got_sum == sum.iter().copied().collect() && got_zero == zeros.iter().copied().collect(),
            || format!("{label}: {}", l.render(5)),
        )?;
    }
    let (code, text) = cli(&["schoen", &data("cube.graph")]);
    ensure(code == 0 && text.lines().count() == 8, || format!("cli exit {code}"))?;
    Ok("all 8 line ideals equal the displayed ones".into())
}

fn c2_srgens() -> Outcome {
    let (code, text) = cli(&["srgens", &data("cube.graph")]);
    let got = text.lines().map(String::from).collect::<BTreeSet<_>>();
    let want = [
        "x_{F2}x_{F4}",
        "x_{F3}x_{F5}",
        "x_{F1}^2 + x_{F1}x_{F2} + x_{F1}x_{F3} + x_{F1}x_{F4} + x_{F1}x_{F5}",
    ]
    .map(String::from)
    .into_iter()
    .collect::<BTreeSet<_>>();
    ensure(code == 0 && got == want && text.lines().count() == 3, || {
        format!("exit {code}: {got:?}")
    })?;
    Ok("exactly the three generators".into())
}

fn c3_basis() -> Outcome {
    for (name, file) in [
        ("k4", "k4.graph"),
        ("prism", "prism.graph"),
        ("sliced prism", "sliced_prism.graph"),
        ("cube", "cube.graph"),
    ] {
        let (code, _) = cli(&["basischeck", &data(file)]);
        ensure(code == 0, || format!("basischeck {name} exited {code}"))?;
    }
    let e = cube();
    let gens = stanley_reisner_generators(&dual_complex(&e).unwrap());
    let geoms = build_schoen(&e)
        .unwrap()
        .iter()
        .map(|l| tropicalize_line(l, 5))
        .collect::<Vec<_>>();
    let complex = build_arrangement(&geoms, 5).unwrap();
    let mut mutations = Vec::new();
    for k in 0..gens.generators.len() {
        let mut dropped = gens.clone();
        dropped.generators.remove(k);
        mutations.push((format!("drop {}", gens.generators[k].render()), dropped));
    }
    // multiply each generator by a variable it does not involve
    for (k, extra) in [(0, 2), (1, 1), (2, 1)] {
        let mut altered = gens.clone();
        let g = &gens.generators[k];
        let mut factors = g.factors.clone();
        factors.push(Factor::Var(extra));
        altered.generators[k] = Generator::from_factors(5, g.non_face.clone(), factors);
        mutations.push((
            format!("alter {} to {}", g.render(), altered.generators[k].render()),
            altered,
        ));
    }
    let mut seen = Vec::new();
    for (what, m) in &mutations {
        match tropical_basis_check(m, &complex) {
            Err(BasisViolation::PieceTooLarge { dim, .. }) => seen.push(format!("{dim}-dim piece")),
            Err(BasisViolation::PieceUncovered { .. }) => seen.push("uncovered piece".into()),
            other => return Err(format!("{what}: {other:?}")),
        }
    }
    Ok(format!(
        "4 graphs pass; {} mutations rejected ({})",
        mutations.len(),
        seen.join(", ")
    ))
}

fn c4_faithfulness() -> Outcome {
    for (name, file) in [
        ("k4", "k4.graph"),
        ("prism", "prism.graph"),
        ("sliced prism", "sliced_prism.graph"),
        ("cube", "cube.graph"),
    ] {
        let (code, _) = cli(&["certify", &data(file)]);
        ensure(code == 0, || format!("certify {name} exited {code}"))?;
    }
    let mut count = 0;
    for n in [4, 6, 8, 10, 12] {
        for g in three_connected_planar_cubic(n) {
            let e = planar_embed(&g, None).unwrap();
            let cert = certify(&e);
            ensure(cert.passed() && cert.well_structured, || {
                format!("{g:?}: {:?}", cert.stage_log)
            })?;
            let map = cert.iso.iter().map(|(_, node)| *node).collect::<BTreeSet<_>>();
            ensure(map.len() == n && cert.core.nodes == n, || {
                format!("{g:?}: core map not bijective")
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "named graphs and all {count} census graphs up to 12 vertices pass"
    ))
}

fn c5_reduction() -> Outcome {
    let t = reduce_to_k4(&cube()).map_err(|e| e.to_string())?;
    ensure(t.moves.len() == 3, || format!("{} moves", t.moves.len()))?;
    let want = [named::sliced_prism(), named::prism(), named::k4()];
    for (i, (e, g)) in t.intermediates.iter().zip(&want).enumerate() {
        ensure(find_isomorphism(e.graph(), g).is_some(), || {
            format!("step {i} has the wrong graph")
        })?;
    }
    let moves = t.moves.iter().map(|m| m.to_string()).collect::<Vec<_>>();
    Ok(format!("{}: sliced prism, prism, K4", moves.join("; ")))
}

fn c6_pipeline() -> Outcome {
    let t = reduce_to_k4(&cube()).map_err(|e| e.to_string())?;
    let certs = constructive_pipeline(&t).map_err(|e| e.to_string())?;
    ensure(certs.len() == 4 && certs.iter().all(|c| c.passed()), || {
        format!("{} certificates", certs.len())
    })?;
    let genera = certs.iter().map(|c| c.genus).collect::<Vec<_>>();
    ensure(genera == [3, 4, 5, 5], || format!("genera {genera:?}"))?;
    Ok("K4, prism, sliced prism, cube all PASS".into())
}

fn integral_poly() -> impl Strategy<Value = ValuedPolynomial> {
    let coeff = prop::collection::vec((0i64..=6, -9i64..=9), 1..4)
        .prop_map(|pairs| ValuedScalar::from_terms(pairs.into_iter().map(|(e, c)| (q(e), q(c)))));
    let term = (prop::collection::vec(0u32..3, 4), coeff);
    (
        prop::collection::vec(term, 1..6),
        prop::collection::vec(0u32..3, 4),
        1i64..=9,
    )
        .prop_map(|(terms, m0, c0)| {
            let mut p = ValuedPolynomial::zero(4);
            for (x, c) in terms {
                p.add_term(x_monomial(x), c);
            }
            let m = x_monomial(m0);
            let old = p.coefficient(&m);
            let fixed = if old.valuation() == Some(&q(0)) {
                old
            } else {
                &old + &ValuedScalar::constant(q(c0))
            };
            p.with_coefficient(&m, fixed)
        })
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn c7_lifting() -> Outcome {
    let (code, text) = cli(&["liftcheck", "--format", "json"]);
    ensure(code == 0, || format!("liftcheck exited {code}"))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let fibers = v["fibers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["fiber"].as_str().unwrap().to_string())
        .collect::<Vec<_>>();
    let want = [
        "x_{F2}x_{F4}",
        "x_{F3}x_{F5}",
        "x_{F1}^2 + x_{F1}x_{F2} + x_{F1}x_{F3} + x_{F1}x_{F4} + x_{F1}x_{F5}",
    ];
    ensure(fibers == want, || format!("fibers {fibers:?}"))?;
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let w = standard_weight(4);
    runner
        .run(&integral_poly(), |f| {
            let h = homogenize_weight(&f, &w).unwrap();
            prop_assert_eq!(fiber_at_h0(&h).unwrap(), initial_form(&f, &w).unwrap());
            prop_assert_eq!(h.poly.at_h_one(), f);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("fibers at h=0 are the cube generators; 1000 random polynomials agree".into())
}

fn c8_negative() -> Outcome {
    let (code, text) = cli(&["certify", &data("petersen.graph"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(code == 1 && v["stage_log"][0]["stage"] == "planar_embed", || {
        format!("petersen: exit {code}")
    })?;
    let (code, text) = cli(&["certify", &data("two_edge_connected.graph"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(code == 1 && v["stage_log"][0]["stage"] == "validate", || {
        format!("two-edge-connected: exit {code}")
    })?;

    let (mut graphs, mut embeddings, mut loose) = (0, 0, 0);
    for n in [4, 6, 8, 10] {
        for g in connected_cubic_graphs(n) {
            if !validate(&g).bridgeless || !is_planar(&g) {
                continue;
            }
            graphs += 1;
            let three = edge_connectivity(&g).unwrap() >= 3;
            let all = all_embeddings(&g);
            embeddings += all.len();
            let ok = all.iter().filter(|e| e.exterior_faces_ok()).count();
            ensure(three == (ok == all.len()), || {
                format!("{g:?}: {ok} of {} embeddings", all.len())
            })?;
            if !three {
                loose += ok;
            }
        }
    }
    Ok(format!(
        "Petersen at planar_embed, two-edge-connected at validate; equivalence holds on {graphs} graphs, {embeddings} embeddings ({loose} embeddings of non-3EC graphs meet the face condition)"
    ))
}

fn scalar() -> impl Strategy<Value = ValuedScalar> {
    let r = (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()));
    prop::collection::vec((r.clone(), r), 0..5).prop_map(ValuedScalar::from_terms)
}

fn c9_invariants() -> Outcome {
    let mut runs = 0;
    for n in [4, 6, 8, 10, 12] {
        for g in three_connected_planar_cubic(n) {
            let base = planar_embed(&g, None).unwrap();
            for f in 0..base.faces().len() {
                let (u, v) = base.faces()[f].boundary[0];
                let e = base.with_outer(OuterChoice::Dart(u, v)).unwrap();
                let cert = certify(&e);
                let genus = e.genus();
                let interior = (0..n).filter(|&v| !e.is_exterior(v)).count();
                ensure(cert.passed(), || format!("{g:?} fails"))?;
                ensure(
                    cert.lines == 2 * genus - 2
                        && cert.branch_points == interior
                        && cert.core.nodes == 2 * genus - 2
                        && cert.core.edges == 3 * genus - 3,
                    || format!("{g:?}: counts off"),
                )?;
                runs += 1;
            }
        }
    }
    let mut runner = TestRunner::new(Config {
        cases: 10_000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(scalar(), scalar()), |(a, b)| {
            let prod = &a * &b;
            match (a.valuation(), b.valuation()) {
                (Some(x), Some(y)) => prop_assert_eq!(prod.valuation().cloned(), Some(x + y)),
                _ => prop_assert!(prod.is_zero()),
            }
            let sum = &a + &b;
            let min = std::cmp::min_by(a.valuation(), b.valuation(), |x, y| cmp_valuation(*x, *y));
            prop_assert!(cmp_valuation(sum.valuation(), min).is_ge());
            if a.valuation() != b.valuation() {
                prop_assert_eq!(sum.valuation(), min);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "counts hold on {runs} certified embeddings; valuation axioms on 10000 pairs"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cube line ideals", c1_cube_ideals),
        ("cube generators", c2_srgens),
        ("tropical basis", c3_basis),
        ("weak faithfulness", c4_faithfulness),
        ("reduction to K4", c5_reduction),
        ("constructive pipeline", c6_pipeline),
        ("lifting", c7_lifting),
        ("negative controls", c8_negative),
        ("structural invariants", c9_invariants),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
