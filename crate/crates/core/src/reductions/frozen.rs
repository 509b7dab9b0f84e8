use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{verify_coloring, Color, Coloring, ReconfigInstance, ReconfigSequence};
use crate::graph::{Distance, Graph, Vertex};

use super::parts::ColorSet;
use super::{Maps, Meta, OutInstance, ReductionArtifact, ReductionError};

/// Provenance of a list-instance vertex: a gadget node, or a path vertex
/// whose list draws from one of the sets A, B, C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gadget,
    Part(ColorSet),
}

/// A pre-colored frozen tree for one vertex, standalone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrozenGadget {
    pub d: usize,
    pub k: Color,
    pub k_prime: Color,
    pub list: Vec<Color>,
    pub chosen: usize,
    pub graph: Graph,
    pub coloring: Coloring,
    pub c: Vertex,
    pub c_prime: Vertex,
    pub star: Vertex,
    pub w: Vec<Vertex>,
}

/// Vertex ids of one composed gadget, already offset into the output graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrozenBlock {
    pub start: Vertex,
    pub len: usize,
    pub c: Vertex,
    pub c_prime: Vertex,
    pub star: Vertex,
    pub w: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrozenMaps {
    pub source: ReconfigInstance,
    /// Color owner of each source vertex: itself, or its palette group.
    pub owners: Vec<usize>,
    pub owner_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<Family>>,
    pub blocks: Vec<FrozenBlock>,
}

pub type PaletteMaps = FrozenMaps;

struct Block {
    labels: Vec<String>,
    edges: Vec<(Vertex, Vertex)>,
    colors: Vec<Color>,
    c: Vertex,
    c_prime: Vertex,
    star: Vertex,
    w: Vec<Vertex>,
}

fn tree_len(d: usize) -> (usize, usize) {
    (d.div_ceil(2) - 1, d / 2 - 1)
}

/// Owners are ranks in `0..owner_count`; `name` renders a peer rank.
fn gadget_block(
    d: usize,
    k: Color,
    list: &[Color],
    own: usize,
    peers: &[usize],
    prefix: &str,
    name: &dyn Fn(usize) -> String,
) -> Block {
    let (h, h2) = tree_len(d);
    let tcol = |rank: usize, i: usize| k + 2 + (rank * h + i) as Color;
    let mut b = Block { labels: vec![], edges: vec![], colors: vec![], c: 0, c_prime: 0, star: 0, w: vec![] };
    let add = |b: &mut Block, label: String, color: Color| {
        b.labels.push(format!("{prefix}{label}"));
        b.colors.push(color);
        b.colors.len() - 1
    };
    b.c = add(&mut b, "c".into(), k + 1);
    let mut last = b.c;
    for i in 1..=h {
        let t = add(&mut b, format!("t{i}"), tcol(own, i));
        b.edges.push((last, t));
        last = t;
    }
    b.c_prime = last;

    let chosen = *peers.iter().min().expect("at least one peer");
    let mut anchor = b.c;
    for &u in peers {
        let shift = d % 2;
        if shift == 1 {
            let s = add(&mut b, format!("s({})", name(u)), tcol(u, 1));
            b.edges.push((b.c, s));
        }
        let mut last = b.c;
        for i in 1..=h2 {
            let t = add(&mut b, format!("p({}).{i}", name(u)), tcol(u, i + shift));
            b.edges.push((last, t));
            last = t;
        }
        if u == chosen {
            anchor = last;
        }
    }
    b.star = add(&mut b, "cs".into(), k + 2);
    b.edges.push((anchor, b.star));
    for i in 1..=k {
        let w = add(&mut b, format!("w{i}"), i);
        b.edges.push((if list.contains(&i) { b.star } else { anchor }, w));
        b.w.push(w);
    }
    b
}

fn check_list(k: Color, list: &[Color]) -> Result<(), ReductionError> {
    if list.is_empty() || list.iter().any(|&c| c == 0 || c > k) {
        return Err(ReductionError::Params(format!("list {list:?} must be a non-empty subset of 1..={k}")));
    }
    Ok(())
}

/// Builds `F_v` for owner `v` with the given peers; colors `C_{u,i}` are
/// indexed by rank among `peers` and `v`.
pub fn build_frozen_graph(
    v: usize,
    d: usize,
    k: Color,
    list: &[Color],
    peers: &[usize],
) -> Result<FrozenGadget, ReductionError> {
    if d < 2 {
        return Err(ReductionError::Params(format!("d must be at least 2, got {d}")));
    }
    check_list(k, list)?;
    let owners: BTreeSet<usize> = peers.iter().copied().chain([v]).collect();
    if peers.is_empty() || peers.contains(&v) || owners.len() != peers.len() + 1 {
        return Err(ReductionError::Params("peers must be distinct, non-empty and exclude v".into()));
    }
    let ranked: Vec<usize> = owners.into_iter().collect();
    let rank = |x: usize| ranked.binary_search(&x).expect("listed");
    let peer_ranks: Vec<usize> = peers.iter().map(|&u| rank(u)).collect();
    let b = gadget_block(d, k, list, rank(v), &peer_ranks, "", &|r| ranked[r].to_string());
    let k_prime = (ranked.len() * tree_len(d).0) as Color + 2 + k;
    let graph = Graph::build(b.colors.len(), &b.edges)?.with_labels(b.labels)?;
    Ok(FrozenGadget {
        d,
        k,
        k_prime,
        list: list.to_vec(),
        chosen: *peers.iter().min().expect("non-empty"),
        graph,
        coloring: Coloring::new(k_prime, b.colors)?,
        c: b.c,
        c_prime: b.c_prime,
        star: b.star,
        w: b.w,
    })
}

fn compose(
    inst: &ReconfigInstance,
    owners: &[usize],
    owner_count: usize,
    name: &dyn Fn(usize) -> String,
) -> Result<(ReconfigInstance, Vec<FrozenBlock>), ReductionError> {
    let lists = inst.lists.as_ref().ok_or_else(|| ReductionError::Params("instance has no lists".into()))?;
    if owner_count < 2 {
        return Err(ReductionError::Params("frozen gadgets need at least two color owners".into()));
    }
    let g = &inst.graph;
    let n = g.n();
    let mut labels = g.labels();
    let mut edges = g.edges();
    let mut alpha = inst.alpha.colors().to_vec();
    let mut beta = inst.beta.colors().to_vec();
    let mut blocks = Vec::with_capacity(n);
    for v in 0..n {
        let peers: Vec<usize> = (0..owner_count).filter(|&o| o != owners[v]).collect();
        let b = gadget_block(inst.d, inst.k, lists.list(v), owners[v], &peers, &format!("F({}).", g.label(v)), name);
        let start = labels.len();
        labels.extend(b.labels);
        edges.extend(b.edges.iter().map(|&(x, y)| (x + start, y + start)));
        edges.push((v, b.c_prime + start));
        alpha.extend(&b.colors);
        beta.extend(&b.colors);
        blocks.push(FrozenBlock {
            start,
            len: b.colors.len(),
            c: b.c + start,
            c_prime: b.c_prime + start,
            star: b.star + start,
            w: b.w.iter().map(|&w| w + start).collect(),
        });
    }
    let k_prime = (owner_count * tree_len(inst.d).0) as Color + 2 + inst.k;
    let graph = Graph::build(labels.len(), &edges)?.with_labels(labels)?;
    let alpha = Coloring::new(k_prime, alpha)?;
    let beta = Coloring::new(k_prime, beta)?;
    for col in [&alpha, &beta] {
        if !verify_coloring(&graph, inst.d, k_prime, col, None)?.valid {
            return Err(ReductionError::Invariant("composed coloring is not a valid coloring".into()));
        }
    }
    let out = ReconfigInstance::new(graph, inst.d, k_prime, alpha, beta, None)?;
    Ok((out, blocks))
}

/// Replaces lists by one frozen gadget per vertex.
pub fn list_to_plain(inst: &ReconfigInstance) -> Result<ReductionArtifact, ReductionError> {
    plain_with(inst, None)
}

/// Like `list_to_plain`, but keeps the provenance of an `rst_to_list`
/// artifact so the palette can be reduced afterwards.
pub fn list_to_plain_artifact(art: &ReductionArtifact) -> Result<ReductionArtifact, ReductionError> {
    let inst = art.reconfig().ok_or_else(|| art.wrong("rst_to_list"))?;
    let families = match &art.maps {
        Maps::RstToList(m) => Some(m.families()),
        _ => None,
    };
    plain_with(inst, families)
}

fn plain_with(inst: &ReconfigInstance, families: Option<Vec<Family>>) -> Result<ReductionArtifact, ReductionError> {
    let n = inst.graph.n();
    let owners: Vec<usize> = (0..n).collect();
    let labels = inst.graph.labels();
    let (out, blocks) = compose(inst, &owners, n, &|r| labels[r].clone())?;
    let mut meta = Meta::new("list_to_plain");
    meta.d = Some(inst.d);
    meta.k = Some(inst.k);
    meta.k_prime = Some(out.k);
    let maps = FrozenMaps { source: inst.clone(), owners, owner_count: n, families, blocks };
    Ok(ReductionArtifact { instance: OutInstance::Reconfig(out), maps: Maps::ListToPlain(maps), meta })
}

/// Shares tree colors between vertices of one family that are more than
/// `d - 2` apart, grouping greedily in vertex order.
pub fn reduce_palette(art: &ReductionArtifact) -> Result<ReductionArtifact, ReductionError> {
    let Maps::ListToPlain(maps) = &art.maps else { return Err(art.wrong("list_to_plain")) };
    let Some(families) = &maps.families else {
        return Err(ReductionError::Params("palette reduction needs an rst_to_list pipeline".into()));
    };
    let inst = &maps.source;
    let g = &inst.graph;
    let d = inst.d;
    let order = [Family::Gadget, Family::Part(ColorSet::A), Family::Part(ColorSet::B), Family::Part(ColorSet::C)];
    let mut owners = vec![0usize; g.n()];
    let mut offset = 0;
    for fam in order {
        let members: Vec<Vertex> = (0..g.n()).filter(|&v| families[v] == fam).collect();
        let mut local = vec![usize::MAX; g.n()];
        let mut used = 0;
        for &v in &members {
            let dist = g.distances_from(v);
            let taken: BTreeSet<usize> = members
                .iter()
                .filter(|&&u| local[u] != usize::MAX && matches!(dist[u], Distance::Finite(x) if x + 2 <= d))
                .map(|&u| local[u])
                .collect();
            local[v] = (0..).find(|x| !taken.contains(x)).expect("unbounded");
            used = used.max(local[v] + 1);
            owners[v] = offset + local[v];
        }
        offset += used;
    }
    let (out, blocks) = compose(inst, &owners, offset, &|r| format!("g{r}"))?;
    let mut meta = Meta::new("reduce_palette");
    meta.d = Some(d);
    meta.k = Some(inst.k);
    meta.k_prime = Some(out.k);
    meta.groups = Some(offset);
    let maps = PaletteMaps { source: inst.clone(), owners, owner_count: offset, families: Some(families.clone()), blocks };
    Ok(ReductionArtifact { instance: OutInstance::Reconfig(out), maps: Maps::ReducePalette(maps), meta })
}

fn plain_maps(art: &ReductionArtifact) -> Result<&FrozenMaps, ReductionError> {
    match &art.maps {
        Maps::ListToPlain(m) | Maps::ReducePalette(m) => Ok(m),
        _ => Err(art.wrong("list_to_plain")),
    }
}

fn checked(inst: &ReconfigInstance, seq: &ReconfigSequence) -> Result<(), ReductionError> {
    let rep = crate::coloring::replay(inst, &inst.alpha, seq, None)?;
    match rep.first_bad_step {
        Some(index) => Err(ReductionError::BadStep { index, reason: format!("{:?}", rep.failure) }),
        None => Ok(()),
    }
}

/// Source vertices keep their ids, so lifting is the identity.
pub fn lift_plain_sequence(art: &ReductionArtifact, seq: &ReconfigSequence) -> Result<ReconfigSequence, ReductionError> {
    checked(&plain_maps(art)?.source, seq)?;
    Ok(seq.clone())
}

pub fn project_plain_sequence(
    art: &ReductionArtifact,
    seq: &ReconfigSequence,
) -> Result<ReconfigSequence, ReductionError> {
    let maps = plain_maps(art)?;
    checked(art.reconfig().ok_or_else(|| art.wrong("list_to_plain"))?, seq)?;
    let n = maps.source.graph.n();
    if let Some(index) = seq.steps.iter().position(|s| s.vertex >= n) {
        return Err(ReductionError::Invariant(format!("step {index} recolors a frozen gadget vertex")));
    }
    Ok(seq.clone())
}
