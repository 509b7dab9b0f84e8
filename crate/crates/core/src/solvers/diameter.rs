use crate::coloring::{Color, ReconfigInstance, ReconfigSequence};
use crate::graph::Vertex;

use super::{NoReason, SolveError, SolveOutcome};

/// Decides instances whose components all have diameter at most d. Inside
/// such a component every color is distinct, so the component is rigid
/// exactly when it uses all k colors.
pub fn solve_diameter_le_d(inst: &ReconfigInstance) -> Result<SolveOutcome, SolveError> {
    if inst.lists.is_some() {
        return Err(SolveError::Lists);
    }
    let g = &inst.graph;
    let comps = g.components();
    for c in &comps {
        if !g.induced(c).diameter().within(inst.d) {
            return Err(SolveError::Diameter { first: c[0], d: inst.d });
        }
    }
    let mut cur = inst.alpha.colors().to_vec();
    let beta = inst.beta.colors();
    let mut seq = ReconfigSequence::default();
    for c in &comps {
        if c.iter().all(|&v| cur[v] == beta[v]) {
            continue;
        }
        if c.len() as Color >= inst.k {
            return Ok(SolveOutcome::no(NoReason::SaturatedComponent { first: c[0] }));
        }
        transfer_colors(c, inst.k, &mut cur, beta, |v, col| seq.push(v, col));
    }
    Ok(SolveOutcome::yes(seq))
}

/// Recolors `verts` (pairwise within distance d, fewer than k of them) from
/// `cur` to `target`. `emit` receives every step in order.
pub(crate) fn transfer_colors<F>(verts: &[Vertex], k: Color, cur: &mut [Color], target: &[Color], mut emit: F)
where
    F: FnMut(Vertex, Color),
{
    let used = |cur: &[Color], c: Color| verts.iter().any(|&u| cur[u] == c);
    loop {
        let pending: Vec<Vertex> = verts.iter().copied().filter(|&v| cur[v] != target[v]).collect();
        let Some(&first) = pending.first() else { return };
        let v = match pending.iter().copied().find(|&v| !used(cur, target[v])) {
            Some(v) => v,
            None => {
                let spare = (1..=k).find(|&c| !used(cur, c)).expect("fewer vertices than colors");
                cur[first] = spare;
                emit(first, spare);
                continue;
            }
        };
        cur[v] = target[v];
        emit(v, target[v]);
    }
}

/// Split graphs with d >= 3: components have diameter at most 3.
pub fn solve_split(inst: &ReconfigInstance) -> Result<SolveOutcome, SolveError> {
    if inst.d < 3 {
        return Err(SolveError::SplitDistance(inst.d));
    }
    if !inst.graph.is_split() {
        return Err(SolveError::NotSplit);
    }
    solve_diameter_le_d(inst)
}
