use recolor::coloring::verify_sequence;
use recolor::generators::{gen_coloring, gen_random_connected, gen_st, rng};
use recolor::oracle::reconfig_reachable;
use recolor::reductions::{
    lcol_to_split, lcr_to_split, lift_plain_sequence, lift_split_sequence, lift_ts_sequence, list_to_plain,
    list_to_plain_artifact, project_plain_sequence, project_recoloring_sequence, project_split_sequence,
    reduce_palette, rst_to_list_artifact, Maps, OutInstance, ReductionError,
};
use recolor::sliding_tokens::{ts_reachable, validate_st, Gadget, StInstance};
use recolor::{Color, Coloring, Graph, ListAssignment, OracleBudget, ReconfigInstance, ReconfigSequence};

use rand::Rng;

fn restricted(t: usize, e: usize, seeds: std::ops::Range<u64>) -> impl Iterator<Item = StInstance> {
    seeds.filter_map(move |s| gen_st(t, e, s).ok()).filter(|st| validate_st(st).restricted)
}

// ─── token sliding to list coloring ─────────────────────────────────────────

#[test]
fn nontrivial_lifts_roundtrip() {
    let mut moved = 0;
    for st in restricted(2, 4, 0..300) {
        let Ok(art) = rst_to_list_artifact(&st, 2) else { continue };
        let Some(moves) = ts_reachable(&st, OracleBudget::default()).unwrap().moves else { continue };
        let seq = lift_ts_sequence(&art, &moves).unwrap();
        assert!(verify_sequence(art.reconfig().unwrap(), &seq).unwrap().ok);
        assert_eq!(project_recoloring_sequence(&art, &seq).unwrap(), moves);
        moved += usize::from(!moves.moves.is_empty());
    }
    assert!(moved >= 2, "only {moved} non-trivial lifts");
}

#[test]
fn each_slide_recolors_its_node_once() {
    let mut slides = 0;
    for st in restricted(2, 4, 0..300) {
        let Ok(art) = rst_to_list_artifact(&st, 3) else { continue };
        let Some(moves) = ts_reachable(&st, OracleBudget::default()).unwrap().moves else { continue };
        let Maps::RstToList(maps) = &art.maps else { unreachable!() };
        let nodes = maps.nodes.len();
        let mut cfg = st.t_a.clone();
        for (i, &(from, to)) in moves.moves.iter().enumerate() {
            let one = recolor::sliding_tokens::TsMoveSequence { moves: vec![(from, to)] };
            let st_here = StInstance { t_a: cfg.clone(), t_b: cfg.slide(from, to), ..st.clone() };
            let art_here = rst_to_list_artifact(&st_here, 3).unwrap();
            let seq = lift_ts_sequence(&art_here, &one).unwrap();
            let node_steps = seq.steps.iter().filter(|s| s.vertex < nodes).count();
            assert_eq!(node_steps, 1, "move {i}");
            let gadget = maps.nodes[seq.steps.iter().find(|s| s.vertex < nodes).unwrap().vertex];
            assert!(st.gadget_vertices(gadget).contains(&from));
            if matches!(gadget, Gadget::Triangle(_)) {
                // at most three incident paths move, each out and back
                let touched: std::collections::BTreeSet<usize> =
                    maps.paths.iter().enumerate().filter(|(_, p)| p.interior.iter().any(|w| seq.steps.iter().any(|s| s.vertex == *w))).map(|(j, _)| j).collect();
                assert!(touched.len() <= 3);
            }
            cfg = cfg.slide(from, to);
            slides += 1;
        }
    }
    assert!(slides > 0);
}

#[test]
fn interior_only_sequences_project_to_nothing() {
    for st in restricted(0, 4, 0..200).take(10) {
        let Ok(art) = rst_to_list_artifact(&st, 2) else { continue };
        let inst = art.reconfig().unwrap();
        let Maps::RstToList(maps) = &art.maps else { unreachable!() };
        let nodes = maps.nodes.len();
        let checker = inst.checker();
        let mut cur = inst.alpha.colors().to_vec();
        let mut seq = ReconfigSequence::default();
        for v in nodes..cur.len() {
            if let Some(c) = (1..=inst.k).find(|&c| c != cur[v] && checker.ok(&cur, v, c)) {
                cur[v] = c;
                seq.push(v, c);
            }
        }
        let moves = project_recoloring_sequence(&art, &seq).unwrap();
        assert!(moves.moves.is_empty());
    }
}

#[test]
fn rst_output_shape() {
    for d in 2..=4 {
        for st in restricted(1, 4, 0..60).take(5) {
            let Ok(art) = rst_to_list_artifact(&st, d) else { continue };
            let s = art.reconfig().unwrap().graph.structural_checks();
            assert!(s.bipartite, "d={d}");
            assert!(s.degeneracy <= 2, "d={d}");
        }
    }
}

// ─── list coloring to plain coloring ────────────────────────────────────────

#[test]
fn pipeline_palette_is_bounded_at_d3() {
    let d = 3;
    let h = 1;
    let mut seen = 0;
    for st in restricted(2, 4, 0..200).take(8) {
        let Ok(list) = rst_to_list_artifact(&st, d) else { continue };
        let plain = list_to_plain_artifact(&list).unwrap();
        let reduced = reduce_palette(&plain).unwrap();
        let src = list.reconfig().unwrap();
        let out = reduced.reconfig().unwrap();
        let groups = reduced.meta.groups.unwrap();
        assert_eq!(out.k, (groups * h) as Color + 2 + src.k);
        assert!(groups * h <= 36, "{groups} groups");
        assert!(out.k <= plain.reconfig().unwrap().k);
        for col in [&out.alpha, &out.beta] {
            assert!(recolor::coloring::verify_coloring(&out.graph, d, out.k, col, None).unwrap().valid);
        }
        seen += 1;
    }
    assert!(seen > 0);
}

#[test]
fn palette_reduction_needs_the_pipeline() {
    let g = Graph::build(2, &[(0, 1)]).unwrap();
    let a = Coloring::new(4, vec![1, 2]).unwrap();
    let inst = ReconfigInstance::new(g, 3, 4, a.clone(), a, Some(ListAssignment::full(2, 4))).unwrap();
    let plain = list_to_plain(&inst).unwrap();
    assert!(matches!(reduce_palette(&plain), Err(ReductionError::Params(_))));
}

#[test]
fn tiny_list_instances_keep_their_answer() {
    let mut r = rng(11);
    let (mut yes, mut no) = (0, 0);
    for d in 3..=4usize {
        for seed in 0..25u64 {
            let n = 2 + seed as usize % 3;
            let k = d as Color + 1 + (seed % 2) as Color;
            let g = gen_random_connected(n, 0.6, seed).unwrap();
            let lists: Vec<Vec<Color>> = (0..n)
                .map(|_| loop {
                    let l: Vec<Color> = (1..=k).filter(|_| r.gen_bool(0.7)).collect();
                    if !l.is_empty() {
                        break l;
                    }
                })
                .collect();
            let lists = ListAssignment::new(lists).unwrap();
            let (Some(a), Some(b)) = (gen_coloring(&g, d, k, Some(&lists), &mut r), gen_coloring(&g, d, k, Some(&lists), &mut r))
            else {
                continue;
            };
            let src = ReconfigInstance::new(g, d, k, a, b, Some(lists)).unwrap();
            let art = list_to_plain(&src).unwrap();
            let out = art.reconfig().unwrap();
            let before = reconfig_reachable(&src, OracleBudget::default()).unwrap();
            let after = reconfig_reachable(out, OracleBudget::default()).unwrap();
            assert_eq!(before.reachable, after.reachable, "d={d} seed={seed}");
            if let Some(seq) = &before.shortest {
                let up = lift_plain_sequence(&art, seq).unwrap();
                assert!(verify_sequence(out, &up).unwrap().ok);
                assert_eq!(project_plain_sequence(&art, &up).unwrap(), *seq);
                yes += 1;
            } else {
                no += 1;
            }
        }
    }
    assert!(yes > 0 && no > 0, "yes={yes} no={no}");
}

// ─── split graphs ───────────────────────────────────────────────────────────

#[test]
fn triangle_and_four_cycle_palettes() {
    let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let art = lcol_to_split(&k3, 3).unwrap();
    let OutInstance::Colorability(ci) = &art.instance else { panic!() };
    assert_eq!((ci.k, ci.graph.n()), (6, 6));
    assert!(ci.graph.is_split());

    let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let a = Coloring::new(4, vec![1, 2, 1, 2]).unwrap();
    let art = lcr_to_split(&c4, &a, &a, 4).unwrap();
    let out = art.reconfig().unwrap();
    assert_eq!(out.k, 8);
    assert_eq!(out.alpha, out.beta);
}

#[test]
fn lifted_split_sequences_keep_the_clique() {
    let mut r = rng(12);
    let mut checked = 0;
    for seed in 0..40u64 {
        let g = gen_random_connected(5, 0.5, seed).unwrap();
        let l = 3;
        let (Some(a), Some(b)) = (gen_coloring(&g, 1, l, None, &mut r), gen_coloring(&g, 1, l, None, &mut r)) else {
            continue;
        };
        let src = ReconfigInstance::new(g.clone(), 1, l, a.clone(), b.clone(), None).unwrap();
        let Some(seq) = reconfig_reachable(&src, OracleBudget::default()).unwrap().shortest else { continue };
        let art = lcr_to_split(&g, &a, &b, l).unwrap();
        let up = lift_split_sequence(&art, &seq).unwrap();
        assert!(up.steps.iter().all(|s| s.vertex < g.n()));
        let back = project_split_sequence(&art, &up).unwrap();
        assert_eq!(back.sequence, seq);
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn wrong_artifacts_are_refused() {
    let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
    let art = lcol_to_split(&g, 3).unwrap();
    let empty = ReconfigSequence::default();
    assert!(matches!(lift_split_sequence(&art, &empty), Err(ReductionError::WrongArtifact { .. })));
    assert!(matches!(project_plain_sequence(&art, &empty), Err(ReductionError::WrongArtifact { .. })));
    assert!(matches!(lift_ts_sequence(&art, &Default::default()), Err(ReductionError::WrongArtifact { .. })));
}
