//! Undirected simple graphs with dense ids, bounded-distance queries and
//! the structural predicates the solvers and reductions dispatch on.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    OutOfRange(Vertex, Vertex, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("label key {0:?} is not a vertex id")]
    BadLabelKey(String),
}

/// Shortest-path distance; `Infinite` marks vertices in different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(x) => Some(x),
            Distance::Infinite => None,
        }
    }

    pub fn within(self, d: usize) -> bool {
        matches!(self, Distance::Finite(x) if x <= d)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(x) => write!(f, "{x}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds the canonical graph on `n` vertices; duplicate edges collapse.
    pub fn build(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::OutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj, labels: None })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount { expected: self.n(), got: labels.len() });
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as (a, b) with a < b, lexicographically sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(ls) => ls[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.vertices().map(|v| self.label(v)).collect()
    }

    /// Map from label to id, covering the implicit decimal labels too.
    pub fn label_index(&self) -> HashMap<String, Vertex> {
        self.vertices().map(|v| (self.label(v), v)).collect()
    }

    /// Unbounded BFS distances from `src`.
    pub fn distances_from(&self, src: Vertex) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n()];
        dist[src] = Distance::Finite(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].finite().unwrap_or(0);
            for &y in &self.adj[x] {
                if dist[y] == Distance::Infinite {
                    dist[y] = Distance::Finite(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Distance {
        self.distances_from(u)[v]
    }

    /// Exact distances to every vertex at most `d` away, `v` included.
    pub fn neighborhood_within(&self, v: Vertex, d: usize) -> BTreeMap<Vertex, usize> {
        let mut out = BTreeMap::new();
        out.insert(v, 0);
        let mut queue = VecDeque::from([(v, 0usize)]);
        while let Some((x, dx)) = queue.pop_front() {
            if dx == d {
                continue;
            }
            for &y in &self.adj[x] {
                if let Entry::Vacant(e) = out.entry(y) {
                    e.insert(dx + 1);
                    queue.push_back((y, dx + 1));
                }
            }
        }
        out
    }

    /// For every vertex, the sorted list of other vertices within distance `d`.
    pub fn balls(&self, d: usize) -> Vec<Vec<Vertex>> {
        self.vertices()
            .map(|v| self.neighborhood_within(v, d).into_keys().filter(|&u| u != v).collect())
            .collect()
    }

    pub fn graph_power(&self, d: usize) -> Graph {
        let adj = self.balls(d);
        Graph { adj, labels: self.labels.clone() }
    }

    pub fn diameter(&self) -> Distance {
        let mut best = Distance::Finite(0);
        for v in self.vertices() {
            for x in self.distances_from(v) {
                best = best.max(x);
                if best == Distance::Infinite {
                    return best;
                }
            }
        }
        best
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `keep` (in that order), with labels carried over.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut l: Vec<Vertex> =
                    self.adj[v].iter().filter(|&&u| pos[u] != usize::MAX).map(|&u| pos[u]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        let labels = self.labels.as_ref().map(|ls| keep.iter().map(|&v| ls[v].clone()).collect());
        Graph { adj, labels }
    }

    pub fn structural_checks(&self) -> StructuralReport {
        let (degeneracy, peeling_order) = self.degeneracy();
        StructuralReport {
            bipartite: self.two_coloring().is_some(),
            degeneracy,
            connected: self.is_connected(),
            peeling_order,
        }
    }

    /// BFS 2-coloring, `None` when an odd cycle exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n()];
        for s in self.vertices() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Repeated min-degree peeling; ties go to the lowest id.
    pub fn degeneracy(&self) -> (usize, Vec<Vertex>) {
        let n = self.n();
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut best = 0;
        for _ in 0..n {
            let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
            best = best.max(deg[v]);
            removed[v] = true;
            order.push(v);
            for &u in &self.adj[v] {
                if !removed[u] {
                    deg[u] -= 1;
                }
            }
        }
        (best, order)
    }

    /// A clique/independent-set partition if the graph is split
    /// (degree-sequence test, then the partition is checked explicitly).
    pub fn split_partition(&self) -> Option<SplitPartition> {
        let n = self.n();
        let mut order: Vec<Vertex> = self.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        let degs: Vec<usize> = order.iter().map(|&v| self.degree(v)).collect();
        let m = (0..n).filter(|&i| degs[i] >= i).count();
        let lhs: usize = degs[..m].iter().sum();
        let rhs: usize = m * m.saturating_sub(1) + degs[m..].iter().sum::<usize>();
        if lhs != rhs {
            return None;
        }
        let mut clique: Vec<Vertex> = order[..m].to_vec();
        let mut independent: Vec<Vertex> = order[m..].to_vec();
        clique.sort_unstable();
        independent.sort_unstable();
        let part = SplitPartition { clique, independent };
        part.holds(self).then_some(part)
    }

    pub fn is_split(&self) -> bool {
        self.split_partition().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub bipartite: bool,
    pub degeneracy: usize,
    pub connected: bool,
    /// Peeling order that witnesses `degeneracy`.
    pub peeling_order: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPartition {
    pub clique: Vec<Vertex>,
    pub independent: Vec<Vertex>,
}

impl SplitPartition {
    pub fn holds(&self, g: &Graph) -> bool {
        let clique_ok =
            self.clique.iter().enumerate().all(|(i, &a)| self.clique[i + 1..].iter().all(|&b| g.has_edge(a, b)));
        let indep_ok = self
            .independent
            .iter()
            .enumerate()
            .all(|(i, &a)| self.independent[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
        clique_ok && indep_ok && self.clique.len() + self.independent.len() == g.n()
    }
}

/// On-disk graph form: labels keyed by decimal vertex id.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Graph, GraphError> {
        let edges: Vec<(Vertex, Vertex)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::build(j.n, &edges)?;
        let Some(map) = j.labels else { return Ok(g) };
        let mut labels: Vec<String> = (0..j.n).map(|v| v.to_string()).collect();
        for (key, val) in map {
            let v: Vertex = key.parse().map_err(|_| GraphError::BadLabelKey(key.clone()))?;
            if v >= j.n {
                return Err(GraphError::BadLabelKey(key));
            }
            labels[v] = val;
        }
        g.with_labels(labels)
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> GraphJson {
        let edges = g.edges().into_iter().map(|(a, b)| [a, b]).collect();
        let labels = g.labels.as_ref().map(|ls| ls.iter().enumerate().map(|(v, l)| (v.to_string(), l.clone())).collect());
        GraphJson { n: g.n(), edges, labels }
    }
}
