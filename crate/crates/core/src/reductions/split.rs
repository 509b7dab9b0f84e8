use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coloring::{replay, verify_coloring, Color, Coloring, ReconfigInstance, ReconfigSequence, StepChecker};
use crate::graph::{Graph, Vertex};

use super::{ColorabilityInstance, Maps, Meta, OutInstance, ReductionArtifact, ReductionError};

/// Correspondence for the split construction: source vertices keep their
/// ids and edge `i` becomes clique vertex `n + i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitMaps {
    pub source: Graph,
    pub l: Color,
    pub m: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Coloring>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Coloring>,
}

impl SplitMaps {
    fn source_instance(&self) -> Result<ReconfigInstance, ReductionError> {
        let (Some(a), Some(b)) = (&self.alpha, &self.beta) else {
            return Err(ReductionError::Params("split artifact carries no colorings".into()));
        };
        Ok(ReconfigInstance::new(self.source.clone(), 1, self.l, a.clone(), b.clone(), None)?)
    }
}

/// `a` = colors of `C_S` used on the clique, `b` = colors of `C_K` used on
/// non-isolated source vertices, `f` the injection `b -> a`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionState {
    pub a: BTreeSet<Color>,
    pub b: BTreeSet<Color>,
    pub f: BTreeMap<Color, Color>,
}

impl ProjectionState {
    pub fn holds(&self) -> bool {
        let range: BTreeSet<Color> = self.f.values().copied().collect();
        self.a.len() >= self.b.len()
            && self.f.keys().copied().eq(self.b.iter().copied())
            && range.len() == self.f.len()
            && range.is_subset(&self.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitProjection {
    pub sequence: ReconfigSequence,
    /// State after each input step.
    pub states: Vec<ProjectionState>,
}

fn split_graph(g: &Graph) -> Result<(Graph, Vec<(Vertex, Vertex)>), ReductionError> {
    let n = g.n();
    let pairs = g.edges();
    let mut labels = g.labels();
    labels.extend(pairs.iter().map(|&(a, b)| format!("e[{}-{}]", g.label(a), g.label(b))));
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        edges.push((a, n + i));
        edges.push((b, n + i));
        edges.extend((i + 1..pairs.len()).map(|j| (n + i, n + j)));
    }
    let out = Graph::build(n + pairs.len(), &edges)?.with_labels(labels)?;
    Ok((out, pairs))
}

pub fn lcol_to_split(g: &Graph, l: Color) -> Result<ReductionArtifact, ReductionError> {
    if l < 3 {
        return Err(ReductionError::Params(format!("l must be at least 3, got {l}")));
    }
    let (graph, edges) = split_graph(g)?;
    let m = edges.len();
    let k = l + m as Color;
    let mut meta = Meta::new("lcol_to_split");
    meta.d = Some(2);
    meta.l = Some(l);
    meta.m = Some(m);
    meta.k_prime = Some(k);
    Ok(ReductionArtifact {
        instance: OutInstance::Colorability(ColorabilityInstance { graph, d: 2, k }),
        maps: Maps::Split(SplitMaps { source: g.clone(), l, m, edges, alpha: None, beta: None }),
        meta,
    })
}

/// Extends two proper `l`-colorings by the same clique coloring
/// `l+1..=l+m` in edge order.
pub fn lcr_to_split(g: &Graph, alpha: &Coloring, beta: &Coloring, l: Color) -> Result<ReductionArtifact, ReductionError> {
    if l < 2 {
        return Err(ReductionError::Params(format!("l must be at least 2, got {l}")));
    }
    for (which, col) in [("alpha", alpha), ("beta", beta)] {
        if col.len() != g.n() || !verify_coloring(g, 1, l, col, None)?.valid {
            return Err(ReductionError::Params(format!("{which} is not a proper {l}-coloring")));
        }
    }
    let (graph, edges) = split_graph(g)?;
    let m = edges.len();
    let k = l + m as Color;
    let extend = |c: &Coloring| {
        let mut v = c.colors().to_vec();
        v.extend((1..=m as Color).map(|i| l + i));
        Coloring::new(k, v)
    };
    let inst = ReconfigInstance::new(graph, 2, k, extend(alpha)?, extend(beta)?, None)?;
    let mut meta = Meta::new("lcr_to_split");
    meta.d = Some(2);
    meta.k = Some(l);
    meta.l = Some(l);
    meta.m = Some(m);
    meta.k_prime = Some(k);
    let maps = SplitMaps {
        source: g.clone(),
        l,
        m,
        edges,
        alpha: Some(alpha.with_k(l)?),
        beta: Some(beta.with_k(l)?),
    };
    Ok(ReductionArtifact { instance: OutInstance::Reconfig(inst), maps: Maps::Split(maps), meta })
}

fn unpack(art: &ReductionArtifact) -> Result<(&ReconfigInstance, &SplitMaps), ReductionError> {
    match (&art.instance, &art.maps) {
        (OutInstance::Reconfig(inst), Maps::Split(maps)) if maps.alpha.is_some() => Ok((inst, maps)),
        _ => Err(art.wrong("lcr_to_split")),
    }
}

fn first_bad(inst: &ReconfigInstance, seq: &ReconfigSequence) -> Result<(), ReductionError> {
    let rep = replay(inst, &inst.alpha, seq, None)?;
    match rep.first_bad_step {
        Some(index) => Err(ReductionError::BadStep { index, reason: format!("{:?}", rep.failure) }),
        None => Ok(()),
    }
}

/// Same steps on the source vertices; the clique never moves.
pub fn lift_split_sequence(art: &ReductionArtifact, seq: &ReconfigSequence) -> Result<ReconfigSequence, ReductionError> {
    let (inst, maps) = unpack(art)?;
    first_bad(&maps.source_instance()?, seq)?;
    let rep = replay(inst, &inst.alpha, seq, None)?;
    if !rep.ok {
        return Err(ReductionError::Invariant("lifted sequence is not valid".into()));
    }
    Ok(seq.clone())
}

/// Replays `seq` on the split graph while maintaining the injection from
/// clique colors held by source vertices to source colors held by the
/// clique. Clique steps emit nothing unless they take away a color in the
/// range of the injection; then every source vertex behind it moves to a
/// fresh image.
pub fn project_split_sequence(art: &ReductionArtifact, seq: &ReconfigSequence) -> Result<SplitProjection, ReductionError> {
    let (inst, maps) = unpack(art)?;
    first_bad(inst, seq)?;
    let src = &maps.source;
    let n = src.n();
    let l = maps.l;
    let isolated: Vec<bool> = src.vertices().map(|v| src.degree(v) == 0).collect();
    let checker = StepChecker::new(src, 1, l, None);
    let mut cur = inst.alpha.colors().to_vec();
    let mut image = maps.alpha.as_ref().expect("checked").colors().to_vec();
    let mut state = ProjectionState::default();
    let mut out = ReconfigSequence::default();
    let mut states = Vec::with_capacity(seq.len());

    let fresh = |a: &BTreeSet<Color>, f: &BTreeMap<Color, Color>, skip: Option<Color>| {
        let used: BTreeSet<Color> = f.iter().filter(|(y, _)| Some(**y) != skip).map(|(_, x)| *x).collect();
        a.iter().copied().find(|x| !used.contains(x))
    };

    for (index, step) in seq.steps.iter().enumerate() {
        let (v, q) = (step.vertex, step.color);
        let p = cur[v];
        cur[v] = q;
        state.a = cur[n..].iter().copied().filter(|&c| c <= l).collect();
        state.b = (0..n).filter(|&u| !isolated[u] && cur[u] > l).map(|u| cur[u]).collect();
        let mut emit: Vec<(Vertex, Color)> = Vec::new();
        if v >= n {
            let lost = state.f.iter().find(|(_, &x)| x == p && p <= l).map(|(&y, _)| y);
            if let Some(y) = lost {
                let x = fresh(&state.a, &state.f, Some(y))
                    .ok_or_else(|| ReductionError::Invariant(format!("step {index}: no free image for {y}")))?;
                state.f.insert(y, x);
                emit.extend((0..n).filter(|&u| !isolated[u] && cur[u] == y).map(|u| (u, x)));
            }
        } else if isolated[v] {
            if q <= l {
                emit.push((v, q));
            }
        } else {
            let keep = state.b.clone();
            state.f.retain(|y, _| keep.contains(y));
            if q > l {
                if !state.f.contains_key(&q) {
                    let x = fresh(&state.a, &state.f, None)
                        .ok_or_else(|| ReductionError::Invariant(format!("step {index}: no free image for {q}")))?;
                    state.f.insert(q, x);
                }
                emit.push((v, state.f[&q]));
            } else {
                emit.push((v, q));
            }
        }
        if !state.holds() {
            return Err(ReductionError::Invariant(format!("step {index}: projection state broken: {state:?}")));
        }
        for (u, c) in emit {
            if image[u] == c {
                continue;
            }
            if !checker.ok(&image, u, c) {
                return Err(ReductionError::Invariant(format!("step {index}: projected recolor of {u} to {c} fails")));
            }
            image[u] = c;
            out.push(u, c);
        }
        states.push(state.clone());
    }
    if cur == inst.beta.colors() && image != maps.beta.as_ref().expect("checked").colors() {
        return Err(ReductionError::Invariant("projection does not end at beta".into()));
    }
    Ok(SplitProjection { sequence: out, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_sequence;

    fn k3() -> Graph {
        Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_shape() {
        let art = lcol_to_split(&k3(), 3).unwrap();
        let OutInstance::Colorability(c) = &art.instance else { panic!() };
        assert_eq!((c.graph.n(), c.k), (6, 6));
        assert!(c.graph.split_partition().is_some_and(|p| p.holds(&c.graph)));
        let alpha = Coloring::new(3, vec![1, 2, 3]).unwrap();
        let art = lcr_to_split(&k3(), &alpha, &alpha, 3).unwrap();
        assert_eq!(art.reconfig().unwrap().alpha, art.reconfig().unwrap().beta);
    }

    #[test]
    fn edgeless_keeps_graph() {
        let g = Graph::empty(3);
        let art = lcol_to_split(&g, 3).unwrap();
        let OutInstance::Colorability(c) = &art.instance else { panic!() };
        assert_eq!((c.graph.n(), c.k), (3, 3));
    }

    #[test]
    fn clique_detour_is_projected() {
        // path a-b-c, l = 3; the clique borrows source color 3 and b takes
        // a clique color in exchange
        let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let alpha = Coloring::new(3, vec![1, 2, 1]).unwrap();
        let beta = Coloring::new(3, vec![1, 3, 1]).unwrap();
        let art = lcr_to_split(&g, &alpha, &beta, 3).unwrap();
        let inst = art.reconfig().unwrap();
        // clique vertices 3, 4 hold 4, 5
        let seq = ReconfigSequence::new(vec![
            crate::coloring::Step::new(3, 3),
            crate::coloring::Step::new(1, 4),
            crate::coloring::Step::new(3, 2),
            crate::coloring::Step::new(1, 3),
            crate::coloring::Step::new(3, 4),
        ]);
        assert!(verify_sequence(inst, &seq).unwrap().ok);
        let proj = project_split_sequence(&art, &seq).unwrap();
        assert!(proj.states.iter().all(ProjectionState::holds));
        let src = ReconfigInstance::new(g, 1, 3, alpha, beta, None).unwrap();
        assert!(verify_sequence(&src, &proj.sequence).unwrap().ok);
    }

    #[test]
    fn lift_roundtrip() {
        let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let alpha = Coloring::new(4, vec![1, 2, 1]).unwrap();
        let beta = Coloring::new(4, vec![3, 2, 3]).unwrap();
        let art = lcr_to_split(&g, &alpha, &beta, 4).unwrap();
        let seq = ReconfigSequence::new(vec![crate::coloring::Step::new(0, 3), crate::coloring::Step::new(2, 3)]);
        let lifted = lift_split_sequence(&art, &seq).unwrap();
        assert!(verify_sequence(art.reconfig().unwrap(), &lifted).unwrap().ok);
        assert_eq!(project_split_sequence(&art, &lifted).unwrap().sequence, seq);
    }
}
