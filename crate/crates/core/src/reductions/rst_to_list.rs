use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring, ListAssignment, ReconfigInstance, ReconfigSequence, StepChecker};
use crate::graph::{Graph, Vertex};
use crate::sliding_tokens::{is_legal_move, validate_st, Gadget, StInstance, TokenConfig, TsMoveSequence};

use super::forbidding::{build_forbidding_path, forbidding_length, switch_coloring};
use super::frozen::Family;
use super::parts::{assign_parts, ColorSet, PathEnds};
use super::{push_vertex, Maps, Meta, OutInstance, ReductionArtifact, ReductionError};

/// One forbidding path, oriented from the lower gadget node `u` to `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RstPath {
    /// Source link edge; `link[0]` lies in the gadget of `u`.
    pub link: [Vertex; 2],
    pub u: Vertex,
    pub v: Vertex,
    pub a: Color,
    pub b: Color,
    pub u_shared: bool,
    pub v_shared: bool,
    pub cl: ColorSet,
    pub far: ColorSet,
    pub c: Vec<Color>,
    /// Interior vertices `w1..w(p-1)`.
    pub interior: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RstMaps {
    pub source: StInstance,
    pub d: usize,
    pub p: usize,
    pub q: usize,
    /// Gadget behind each node vertex; node ids are `0..nodes.len()`.
    pub nodes: Vec<Gadget>,
    pub paths: Vec<RstPath>,
}

impl RstMaps {
    fn node_of(&self, g: Gadget) -> Vertex {
        self.nodes.iter().position(|&x| x == g).expect("every gadget has a node")
    }

    /// Per-vertex provenance for palette reduction.
    pub fn families(&self) -> Vec<Family> {
        let n = self.nodes.len() + self.paths.iter().map(|p| p.interior.len()).sum::<usize>();
        let mut out = vec![Family::Gadget; n];
        for path in &self.paths {
            for (i, &w) in path.interior.iter().enumerate() {
                out[w] = Family::Part(if i < self.q + 1 { path.cl } else { path.far });
            }
        }
        out
    }

    /// Node colors of a standard configuration: the token's position.
    fn node_colors(&self, cfg: &TokenConfig) -> Result<Vec<Color>, ReductionError> {
        if !self.source.is_standard(cfg) {
            return Err(ReductionError::Params("token configuration is not standard".into()));
        }
        Ok(self
            .nodes
            .iter()
            .map(|&g| {
                let verts = self.source.gadget_vertices(g);
                (verts.iter().position(|&v| cfg.has(v)).expect("standard") + 1) as Color
            })
            .collect())
    }

    fn switch_for(&self, path: &RstPath, xs: &[Color], ys: &[Color]) -> Result<usize, ReductionError> {
        let at_u = xs.contains(&path.a);
        let at_v = ys.contains(&path.b);
        match (at_u, at_v) {
            (true, true) => Err(ReductionError::Unrepresentable(format!(
                "path {} would need to forbid both endpoint colors",
                self.source.graph.label(path.link[0])
            ))),
            (true, false) => Ok(1),
            (false, true) => Ok(self.p),
            _ if path.u_shared => Ok(1),
            _ if path.v_shared => Ok(self.p),
            _ => Ok(2),
        }
    }

    /// Full coloring of the output graph for a standard configuration,
    /// each path completed in normal form.
    pub fn image(&self, cfg: &TokenConfig, n: usize) -> Result<Vec<Color>, ReductionError> {
        let nodes = self.node_colors(cfg)?;
        let mut out = vec![0; n];
        out[..nodes.len()].copy_from_slice(&nodes);
        for path in &self.paths {
            let (x, y) = (nodes[path.u], nodes[path.v]);
            let s = self.switch_for(path, &[x], &[y])?;
            let col = switch_coloring(path.a, path.b, &path.c, x, y, s);
            for (i, &w) in path.interior.iter().enumerate() {
                out[w] = col[i + 1];
            }
        }
        Ok(out)
    }
}

fn set_colors(set: ColorSet, q: usize) -> Vec<Color> {
    let start = 4 + (set.index() * q) as Color;
    (start..start + q as Color).collect()
}

/// Builds the list instance: one node per gadget, one forbidding path per
/// link edge.
pub fn rst_to_list(st: &StInstance, d: usize) -> Result<(ReconfigInstance, RstMaps), ReductionError> {
    if d < 2 {
        return Err(ReductionError::Params(format!("d must be at least 2, got {d}")));
    }
    let report = validate_st(st);
    if !report.restricted {
        let why: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        let why = if why.is_empty() { "run restrict first".to_string() } else { why.join(", ") };
        return Err(ReductionError::Params(format!("instance is not restricted: {why}")));
    }
    let p = forbidding_length(d);
    let q = (p - 2) / 2;
    let k = (3 + 3 * q) as Color;
    let member = st.membership();
    let links = st.links_at();
    let nodes: Vec<Gadget> = st.gadgets().collect();
    let node_of = |g: Gadget| nodes.iter().position(|&x| x == g).expect("gadget listed");

    let mut labels = Vec::new();
    let mut lists: Vec<Vec<Color>> = Vec::new();
    for &g in &nodes {
        match g {
            Gadget::Triangle(i) => {
                push_vertex(&mut labels, format!("t{}", i + 1));
                lists.push(vec![1, 2, 3]);
            }
            Gadget::TokenEdge(j) => {
                push_vertex(&mut labels, format!("e{}", j + 1));
                lists.push(vec![1, 2]);
            }
        }
    }

    let mut ends = Vec::new();
    let mut oriented = Vec::new();
    for &[x, y] in &st.link_edges {
        let (gx, px) = member[x].expect("well formed");
        let (gy, py) = member[y].expect("well formed");
        let (nx, ny) = (node_of(gx), node_of(gy));
        let (link, u, v, a, b) = if nx < ny { ([x, y], nx, ny, px, py) } else { ([y, x], ny, nx, py, px) };
        ends.push(PathEnds { u, v });
        oriented.push((link, u, v, a as Color, b as Color));
    }
    let parts = assign_parts(nodes.len(), &ends)?;

    let mut edges = Vec::new();
    let mut paths = Vec::new();
    for (idx, &(link, u, v, a, b)) in oriented.iter().enumerate() {
        let (cl, far) = (parts.cl[idx], parts.far[idx]);
        let mut c = set_colors(cl, q);
        c.extend(set_colors(far, q).into_iter().rev());
        let fp = build_forbidding_path(d, a, b, &lists[u], &lists[v], &c)?;
        let interior: Vec<Vertex> =
            (1..p).map(|i| push_vertex(&mut labels, format!("P{}.w{i}", idx + 1))).collect();
        lists.extend((1..p).map(|i| fp.lists.list(i).to_vec()));
        edges.push((u, interior[0]));
        edges.extend(interior.windows(2).map(|w| (w[0], w[1])));
        edges.push((interior[p - 2], v));
        paths.push(RstPath {
            link,
            u,
            v,
            a,
            b,
            u_shared: links[link[0]] == 2,
            v_shared: links[link[1]] == 2,
            cl,
            far,
            c,
            interior,
        });
    }

    let n = labels.len();
    let graph = Graph::build(n, &edges)?.with_labels(labels)?;
    let maps = RstMaps { source: st.clone(), d, p, q, nodes, paths };
    let alpha = Coloring::new(k, maps.image(&st.t_a, n)?)?;
    let beta = Coloring::new(k, maps.image(&st.t_b, n)?)?;
    let lists = ListAssignment::new(lists)?;
    let inst = ReconfigInstance::new(graph, d, k, alpha, beta, Some(lists)).map_err(|e| match e {
        crate::coloring::ColoringError::InvalidEndpoint { which, .. } => {
            ReductionError::Unrepresentable(format!("{which} has no valid list coloring image"))
        }
        e => e.into(),
    })?;
    Ok((inst, maps))
}

pub fn rst_to_list_artifact(st: &StInstance, d: usize) -> Result<ReductionArtifact, ReductionError> {
    let (inst, maps) = rst_to_list(st, d)?;
    let mut meta = Meta::new("rst_to_list");
    meta.d = Some(d);
    meta.k_prime = Some(inst.k);
    meta.note = Some(format!("p = {}, q = {}, {} paths", maps.p, maps.q, maps.paths.len()));
    Ok(ReductionArtifact { instance: OutInstance::Reconfig(inst), maps: Maps::RstToList(maps), meta })
}

fn unpack(art: &ReductionArtifact) -> Result<(&ReconfigInstance, &RstMaps), ReductionError> {
    match (&art.instance, &art.maps) {
        (OutInstance::Reconfig(inst), Maps::RstToList(maps)) => Ok((inst, maps)),
        _ => Err(art.wrong("rst_to_list")),
    }
}

struct Lifter<'a> {
    maps: &'a RstMaps,
    checker: StepChecker<'a>,
    cur: Vec<Color>,
    switch: Vec<usize>,
    out: ReconfigSequence,
}

impl Lifter<'_> {
    fn emit(&mut self, v: Vertex, c: Color) -> Result<(), ReductionError> {
        if let Some(f) = self.checker.failure(&self.cur, v, c) {
            return Err(ReductionError::Unrepresentable(format!("recoloring vertex {v} to {c} fails: {f:?}")));
        }
        self.cur[v] = c;
        self.out.push(v, c);
        Ok(())
    }

    /// Moves the switch point of path `i` one vertex at a time.
    fn shift(&mut self, i: usize, to: usize) -> Result<(), ReductionError> {
        let path = &self.maps.paths[i];
        let p = self.maps.p;
        let ext = |j: usize| match j {
            0 => path.a,
            j if j == p - 1 => path.b,
            j => path.c[j - 1],
        };
        let mut s = self.switch[i];
        let mut steps = Vec::new();
        while s < to {
            steps.push((path.interior[s - 1], ext(s - 1)));
            s += 1;
        }
        while s > to {
            s -= 1;
            steps.push((path.interior[s - 1], ext(s)));
        }
        for (w, c) in steps {
            self.emit(w, c)?;
        }
        self.switch[i] = to;
        Ok(())
    }
}

/// Expands every slide into path shifts around a single node recolor.
pub fn lift_ts_sequence(art: &ReductionArtifact, moves: &TsMoveSequence) -> Result<ReconfigSequence, ReductionError> {
    let (inst, maps) = unpack(art)?;
    let st = &maps.source;
    let member = st.membership();
    let mut cfg = st.t_a.clone();
    let mut lifter = Lifter {
        maps,
        checker: inst.checker(),
        cur: inst.alpha.colors().to_vec(),
        switch: Vec::with_capacity(maps.paths.len()),
        out: ReconfigSequence::default(),
    };
    let nodes = maps.node_colors(&cfg)?;
    for path in &maps.paths {
        lifter.switch.push(maps.switch_for(path, &[nodes[path.u]], &[nodes[path.v]])?);
    }

    for (index, &(from, to)) in moves.moves.iter().enumerate() {
        let bad = |reason: String| ReductionError::BadStep { index, reason };
        if !is_legal_move(st, &cfg, from, to) {
            return Err(bad(format!("slide {from} -> {to} is not legal")));
        }
        let (Some((g, old)), Some((g2, new))) = (member[from], member[to]) else {
            return Err(bad("slide leaves the gadgets".into()));
        };
        if g != g2 {
            return Err(bad("slide crosses a link edge".into()));
        }
        let node = maps.node_of(g);
        let (old, new) = (old as Color, new as Color);
        let incident: Vec<usize> =
            (0..maps.paths.len()).filter(|&i| maps.paths[i].u == node || maps.paths[i].v == node).collect();
        for &i in &incident {
            let path = &maps.paths[i];
            let (xs, ys) = if path.u == node {
                (vec![old, new], vec![lifter.cur[path.v]])
            } else {
                (vec![lifter.cur[path.u]], vec![old, new])
            };
            let s = maps.switch_for(path, &xs, &ys)?;
            lifter.shift(i, s)?;
        }
        lifter.emit(node, new)?;
        for &i in &incident {
            let path = &maps.paths[i];
            let s = maps.switch_for(path, &[lifter.cur[path.u]], &[lifter.cur[path.v]])?;
            lifter.shift(i, s)?;
        }
        cfg = cfg.slide(from, to);
    }
    Ok(lifter.out)
}

/// Drops path-interior steps and turns node recolors into slides.
pub fn project_recoloring_sequence(
    art: &ReductionArtifact,
    seq: &ReconfigSequence,
) -> Result<TsMoveSequence, ReductionError> {
    let (inst, maps) = unpack(art)?;
    let st = &maps.source;
    let checker = inst.checker();
    let mut cur = inst.alpha.colors().to_vec();
    let mut cfg = st.t_a.clone();
    let mut moves = Vec::new();
    for (index, step) in seq.steps.iter().enumerate() {
        if step.vertex >= cur.len() {
            return Err(ReductionError::BadStep { index, reason: format!("unknown vertex {}", step.vertex) });
        }
        if let Some(f) = checker.failure(&cur, step.vertex, step.color) {
            return Err(ReductionError::BadStep { index, reason: format!("{f:?}") });
        }
        if step.vertex < maps.nodes.len() {
            let verts = st.gadget_vertices(maps.nodes[step.vertex]);
            let from = verts[cur[step.vertex] as usize - 1];
            let to = verts[step.color as usize - 1];
            if !is_legal_move(st, &cfg, from, to) {
                return Err(ReductionError::Invariant(format!("step {index} projects to an illegal slide")));
            }
            cfg = cfg.slide(from, to);
            moves.push((from, to));
        }
        cur[step.vertex] = step.color;
    }
    Ok(TsMoveSequence { moves })
}
