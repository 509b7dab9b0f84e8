//! Gadget-structured Sliding Tokens instances: token triangles and token
//! edges wired by link edges, the R1/R2 restriction rewrites, and a BFS
//! oracle over token configurations.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::oracle::{OracleBudget, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("instance graph does not match its gadgets and link edges")]
    GraphMismatch,
    #[error("instance is not well formed: {0}")]
    Malformed(String),
    #[error("move {index} ({from} -> {to}) is not a legal slide")]
    IllegalMove { index: usize, from: Vertex, to: Vertex },
    #[error("move sequence ends at a configuration other than T_B")]
    WrongTarget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gadget {
    Triangle(usize),
    TokenEdge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct TokenConfig {
    pub tokens: BTreeSet<Vertex>,
}

impl TokenConfig {
    pub fn new<I: IntoIterator<Item = Vertex>>(tokens: I) -> TokenConfig {
        TokenConfig { tokens: tokens.into_iter().collect() }
    }

    pub fn has(&self, v: Vertex) -> bool {
        self.tokens.contains(&v)
    }

    pub fn slide(&self, from: Vertex, to: Vertex) -> TokenConfig {
        let mut out = self.clone();
        out.tokens.remove(&from);
        out.tokens.insert(to);
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsMoveSequence {
    pub moves: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::StJson", into = "crate::io::StJson")]
pub struct StInstance {
    pub graph: Graph,
    pub triangles: Vec<[Vertex; 3]>,
    pub token_edges: Vec<[Vertex; 2]>,
    pub link_edges: Vec<[Vertex; 2]>,
    pub t_a: TokenConfig,
    pub t_b: TokenConfig,
}

impl StInstance {
    /// Builds the instance graph from gadgets and links; `labels` are optional.
    pub fn from_parts(
        n: usize,
        labels: Option<Vec<String>>,
        triangles: Vec<[Vertex; 3]>,
        token_edges: Vec<[Vertex; 2]>,
        link_edges: Vec<[Vertex; 2]>,
        t_a: TokenConfig,
        t_b: TokenConfig,
    ) -> Result<StInstance, StError> {
        let mut edges = Vec::new();
        for t in &triangles {
            edges.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
        }
        edges.extend(token_edges.iter().chain(&link_edges).map(|e| (e[0], e[1])));
        let mut graph = Graph::build(n, &edges)?;
        if let Some(l) = labels {
            graph = graph.with_labels(l)?;
        }
        Ok(StInstance { graph, triangles, token_edges, link_edges, t_a, t_b })
    }

    /// Like `from_parts`, but the given graph must match exactly.
    pub fn with_graph(
        graph: Graph,
        triangles: Vec<[Vertex; 3]>,
        token_edges: Vec<[Vertex; 2]>,
        link_edges: Vec<[Vertex; 2]>,
        t_a: TokenConfig,
        t_b: TokenConfig,
    ) -> Result<StInstance, StError> {
        let labels = graph.has_labels().then(|| graph.labels());
        let st = StInstance::from_parts(graph.n(), labels, triangles, token_edges, link_edges, t_a, t_b)?;
        if st.graph.edges() != graph.edges() {
            return Err(StError::GraphMismatch);
        }
        Ok(st)
    }

    pub fn gadget_count(&self) -> usize {
        self.triangles.len() + self.token_edges.len()
    }

    pub fn gadget_vertices(&self, g: Gadget) -> &[Vertex] {
        match g {
            Gadget::Triangle(i) => &self.triangles[i],
            Gadget::TokenEdge(i) => &self.token_edges[i],
        }
    }

    /// For each vertex, its gadget and 1-based position inside it.
    pub fn membership(&self) -> Vec<Option<(Gadget, usize)>> {
        let mut out = vec![None; self.graph.n()];
        for (i, t) in self.triangles.iter().enumerate() {
            for (p, &v) in t.iter().enumerate() {
                if v < out.len() {
                    out[v] = Some((Gadget::Triangle(i), p + 1));
                }
            }
        }
        for (i, e) in self.token_edges.iter().enumerate() {
            for (p, &v) in e.iter().enumerate() {
                if v < out.len() {
                    out[v] = Some((Gadget::TokenEdge(i), p + 1));
                }
            }
        }
        out
    }

    pub fn links_at(&self) -> Vec<usize> {
        let mut out = vec![0; self.graph.n()];
        for l in &self.link_edges {
            out[l[0]] += 1;
            out[l[1]] += 1;
        }
        out
    }

    /// Gadget degree: number of link edges touching the gadget.
    pub fn gadget_degree(&self, g: Gadget) -> usize {
        let links = self.links_at();
        self.gadget_vertices(g).iter().map(|&v| links[v]).sum()
    }

    pub fn gadgets(&self) -> impl Iterator<Item = Gadget> + use<> {
        (0..self.triangles.len()).map(Gadget::Triangle).chain((0..self.token_edges.len()).map(Gadget::TokenEdge))
    }

    /// True when every gadget holds exactly one token.
    pub fn is_standard(&self, cfg: &TokenConfig) -> bool {
        let covered: usize = self.gadgets().map(|g| self.gadget_vertices(g).iter().filter(|&&v| cfg.has(v)).count()).sum();
        cfg.tokens.len() == self.gadget_count()
            && covered == cfg.tokens.len()
            && self.gadgets().all(|g| self.gadget_vertices(g).iter().filter(|&&v| cfg.has(v)).count() == 1)
    }

    pub fn is_independent(&self, cfg: &TokenConfig) -> bool {
        cfg.tokens.iter().all(|&v| v < self.graph.n() && self.graph.neighbors(v).iter().all(|u| !cfg.has(*u)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StViolation {
    VertexOutOfRange { vertex: Vertex },
    GadgetOverlap { vertex: Vertex },
    Uncovered { vertex: Vertex },
    LinkInsideGadget { link: usize },
    TriangleDegree { vertex: Vertex, degree: usize },
    DegreeRange { vertex: Vertex, degree: usize },
    /// Gadget with fewer than two link edges.
    IsolatedGadget { gadget: Gadget, degree: usize },
    NotIndependent { config: &'static str },
    NotStandard { config: &'static str },
}

impl fmt::Display for StViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StReport {
    pub well_formed: bool,
    pub restricted: bool,
    pub violations: Vec<StViolation>,
}

pub fn validate_st(inst: &StInstance) -> StReport {
    let n = inst.graph.n();
    let mut violations = Vec::new();
    let mut owner = vec![0usize; n];
    let all_ids = inst
        .triangles
        .iter()
        .flat_map(|t| t.iter())
        .chain(inst.token_edges.iter().flat_map(|e| e.iter()))
        .chain(inst.link_edges.iter().flat_map(|e| e.iter()));
    for &v in all_ids.clone() {
        if v >= n {
            violations.push(StViolation::VertexOutOfRange { vertex: v });
        }
    }
    if !violations.is_empty() {
        return StReport { well_formed: false, restricted: false, violations };
    }
    for &v in inst.triangles.iter().flat_map(|t| t.iter()).chain(inst.token_edges.iter().flat_map(|e| e.iter())) {
        owner[v] += 1;
    }
    for (v, &c) in owner.iter().enumerate() {
        match c {
            0 => violations.push(StViolation::Uncovered { vertex: v }),
            1 => {}
            _ => violations.push(StViolation::GadgetOverlap { vertex: v }),
        }
    }
    let member = inst.membership();
    for (i, l) in inst.link_edges.iter().enumerate() {
        if member[l[0]].map(|m| m.0) == member[l[1]].map(|m| m.0) {
            violations.push(StViolation::LinkInsideGadget { link: i });
        }
    }
    for v in 0..n {
        let deg = inst.graph.degree(v);
        if !(2..=3).contains(&deg) {
            violations.push(StViolation::DegreeRange { vertex: v, degree: deg });
        }
        if matches!(member[v], Some((Gadget::Triangle(_), _))) && deg != 3 {
            violations.push(StViolation::TriangleDegree { vertex: v, degree: deg });
        }
    }
    for g in inst.gadgets() {
        let deg = inst.gadget_degree(g);
        if deg < 2 {
            violations.push(StViolation::IsolatedGadget { gadget: g, degree: deg });
        }
    }
    for (name, cfg) in [("T_A", &inst.t_a), ("T_B", &inst.t_b)] {
        if !inst.is_independent(cfg) {
            violations.push(StViolation::NotIndependent { config: name });
        }
        if !inst.is_standard(cfg) {
            violations.push(StViolation::NotStandard { config: name });
        }
    }
    violations.sort();
    violations.dedup();
    let well_formed = violations.is_empty();
    let restricted = well_formed && is_restricted(inst, &member);
    StReport { well_formed, restricted, violations }
}

fn is_restricted(inst: &StInstance, member: &[Option<(Gadget, usize)>]) -> bool {
    let deg: HashMap<Gadget, usize> = inst.gadgets().map(|g| (g, inst.gadget_degree(g))).collect();
    let edges_ok = inst.token_edges.iter().enumerate().all(|(i, _)| matches!(deg[&Gadget::TokenEdge(i)], 2 | 3));
    let links_ok = inst.link_edges.iter().all(|l| {
        let ga = member[l[0]].expect("covered").0;
        let gb = member[l[1]].expect("covered").0;
        !(deg[&ga] == 3 && deg[&gb] == 3)
    });
    edges_ok && links_ok
}

/// All legal single slides from `cfg`, sorted by (from, to).
pub fn ts_moves(inst: &StInstance, cfg: &TokenConfig) -> Vec<(Vertex, Vertex)> {
    let g = &inst.graph;
    let mut out = Vec::new();
    for &from in &cfg.tokens {
        for &to in g.neighbors(from) {
            if !cfg.has(to) && g.neighbors(to).iter().all(|&w| w == from || !cfg.has(w)) {
                out.push((from, to));
            }
        }
    }
    out
}

pub fn is_legal_move(inst: &StInstance, cfg: &TokenConfig, from: Vertex, to: Vertex) -> bool {
    let g = &inst.graph;
    from < g.n()
        && to < g.n()
        && cfg.has(from)
        && g.has_edge(from, to)
        && !cfg.has(to)
        && g.neighbors(to).iter().all(|&w| w == from || !cfg.has(w))
}

/// Replays `moves` from T_A and checks that T_B is reached.
pub fn verify_ts_sequence(inst: &StInstance, moves: &TsMoveSequence) -> Result<(), StError> {
    let mut cur = inst.t_a.clone();
    for (index, &(from, to)) in moves.moves.iter().enumerate() {
        if !is_legal_move(inst, &cur, from, to) {
            return Err(StError::IllegalMove { index, from, to });
        }
        cur = cur.slide(from, to);
    }
    if cur != inst.t_b {
        return Err(StError::WrongTarget);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsReachability {
    pub reachable: bool,
    pub moves: Option<TsMoveSequence>,
    pub states: usize,
}

pub fn ts_reachable(inst: &StInstance, budget: OracleBudget) -> Result<TsReachability, OracleError> {
    let mut seen: HashMap<TokenConfig, usize> = HashMap::from([(inst.t_a.clone(), 0)]);
    let mut states = vec![inst.t_a.clone()];
    let mut parent: Vec<(usize, (Vertex, Vertex))> = vec![(usize::MAX, (0, 0))];
    let found = |parent: &[(usize, (Vertex, Vertex))], mut at: usize, states: usize| {
        let mut moves = Vec::new();
        while at != 0 {
            moves.push(parent[at].1);
            at = parent[at].0;
        }
        moves.reverse();
        TsReachability { reachable: true, moves: Some(TsMoveSequence { moves }), states }
    };
    if inst.t_a == inst.t_b {
        return Ok(found(&parent, 0, 1));
    }
    let mut head = 0;
    while head < states.len() {
        let cur = states[head].clone();
        for (from, to) in ts_moves(inst, &cur) {
            let next = cur.slide(from, to);
            if seen.contains_key(&next) {
                continue;
            }
            if states.len() >= budget.max_states {
                return Err(OracleError::BudgetExceeded { states: states.len() });
            }
            let id = states.len();
            seen.insert(next.clone(), id);
            parent.push((head, (from, to)));
            let done = next == inst.t_b;
            states.push(next);
            if done {
                return Ok(found(&parent, id, states.len()));
            }
        }
        head += 1;
    }
    Ok(TsReachability { reachable: false, moves: None, states: states.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
}

/// One rewrite: `original` is the replaced token edge (R1) or link (R2),
/// `added` the two fresh vertices next to original[0] and original[1].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rewrite {
    pub rule: Rule,
    pub original: [Vertex; 2],
    pub added: [Vertex; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Restriction {
    pub out: StInstance,
    pub trace: Vec<Rewrite>,
}

/// Applies R1 to every degree-4 token edge, then R2 to every link edge
/// joining two degree-3 gadgets, in ascending index order.
pub fn restrict(inst: &StInstance) -> Result<Restriction, StError> {
    let report = validate_st(inst);
    if !report.well_formed {
        let what: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(StError::Malformed(what.join(", ")));
    }
    let mut labels = inst.graph.labels();
    let mut token_edges = Vec::new();
    let mut links = inst.link_edges.clone();
    let mut t_a = inst.t_a.clone();
    let mut t_b = inst.t_b.clone();
    let mut trace = Vec::new();

    let fresh = |labels: &mut Vec<String>, name: String| {
        labels.push(name);
        labels.len() - 1
    };

    for (i, &[u, v]) in inst.token_edges.iter().enumerate() {
        if inst.gadget_degree(Gadget::TokenEdge(i)) != 4 {
            token_edges.push([u, v]);
            continue;
        }
        let u2 = fresh(&mut labels, format!("r1({})", inst.graph.label(u)));
        let v2 = fresh(&mut labels, format!("r1({})", inst.graph.label(v)));
        token_edges.push([u, u2]);
        token_edges.push([v, v2]);
        links.push([u2, v2]);
        for cfg in [&mut t_a, &mut t_b] {
            if cfg.has(u) {
                cfg.tokens.insert(v2);
            } else {
                cfg.tokens.insert(u2);
            }
        }
        trace.push(Rewrite { rule: Rule::R1, original: [u, v], added: [u2, v2] });
    }

    let mid = StInstance::from_parts(
        labels.len(),
        Some(labels.clone()),
        inst.triangles.clone(),
        token_edges.clone(),
        links.clone(),
        t_a.clone(),
        t_b.clone(),
    )?;
    let member = mid.membership();
    let deg: HashMap<Gadget, usize> = mid.gadgets().map(|g| (g, mid.gadget_degree(g))).collect();
    let mut new_links = Vec::new();
    for &[u, v] in &links {
        let (gu, gv) = (member[u].expect("covered").0, member[v].expect("covered").0);
        if !(deg[&gu] == 3 && deg[&gv] == 3) {
            new_links.push([u, v]);
            continue;
        }
        let (lu, lv) = (mid.graph.label(u), mid.graph.label(v));
        let u2 = fresh(&mut labels, format!("r2({lu},{lv})"));
        let v2 = fresh(&mut labels, format!("r2({lv},{lu})"));
        new_links.push([u, u2]);
        new_links.push([v2, v]);
        token_edges.push([u2, v2]);
        for cfg in [&mut t_a, &mut t_b] {
            cfg.tokens.insert(if cfg.has(u) { v2 } else { u2 });
        }
        trace.push(Rewrite { rule: Rule::R2, original: [u, v], added: [u2, v2] });
    }

    let out = StInstance::from_parts(
        labels.len(),
        Some(labels),
        inst.triangles.clone(),
        token_edges,
        new_links,
        t_a,
        t_b,
    )?;
    Ok(Restriction { out, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two token edges joined by two links into a 4-cycle.
    fn square(t_a: [Vertex; 2], t_b: [Vertex; 2]) -> StInstance {
        StInstance::from_parts(
            4,
            None,
            vec![],
            vec![[0, 1], [2, 3]],
            vec![[0, 2], [1, 3]],
            TokenConfig::new(t_a),
            TokenConfig::new(t_b),
        )
        .unwrap()
    }

    #[test]
    fn square_is_restricted() {
        let st = square([0, 3], [1, 2]);
        let r = validate_st(&st);
        assert!(r.well_formed && r.restricted, "{:?}", r.violations);
        assert_eq!(restrict(&st).unwrap().trace, vec![]);
    }

    #[test]
    fn moves_and_blocking() {
        let st = square([0, 3], [1, 2]);
        // 0 -> 1 would sit next to the token on 3; 3 -> 2 next to 0
        assert!(ts_moves(&st, &st.t_a).is_empty());
        let r = ts_reachable(&st, OracleBudget::default()).unwrap();
        assert!(!r.reachable);
        let same = square([0, 3], [0, 3]);
        assert_eq!(ts_reachable(&same, OracleBudget::default()).unwrap().moves.unwrap().moves.len(), 0);
    }

    #[test]
    fn single_token_edge_is_flagged() {
        let st = StInstance::from_parts(
            2,
            None,
            vec![],
            vec![[0, 1]],
            vec![],
            TokenConfig::new([0]),
            TokenConfig::new([1]),
        )
        .unwrap();
        let r = validate_st(&st);
        assert!(!r.well_formed);
        assert!(r.violations.iter().any(|v| matches!(v, StViolation::IsolatedGadget { degree: 0, .. })));
        assert!(restrict(&st).is_err());
    }

    #[test]
    fn triangle_moves() {
        // triangle 0,1,2 each linked to a token-edge vertex
        let st = StInstance::from_parts(
            9,
            None,
            vec![[0, 1, 2]],
            vec![[3, 4], [5, 6], [7, 8]],
            vec![[0, 3], [1, 5], [2, 7], [4, 6], [6, 8], [8, 4]],
            TokenConfig::new([0, 4, 5, 7]),
            TokenConfig::new([0, 4, 5, 7]),
        );
        let st = st.unwrap();
        assert!(validate_st(&st).well_formed);
        let moves = ts_moves(&st, &st.t_a);
        // every slide lands next to another token
        assert!(moves.is_empty());
        let free = TokenConfig::new([0, 4, 5, 7]).slide(4, 3).slide(0, 1);
        assert!(!st.is_independent(&free));
    }
}
