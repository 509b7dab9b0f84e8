//! (List) (d,k)-colorings, single recoloring steps and sequence replay.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    Length { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color} outside 1..={k}")]
    OutOfPalette { vertex: Vertex, color: Color, k: Color },
    #[error("vertex {0} has an empty color list")]
    EmptyList(Vertex),
    #[error("vertex {vertex} lists color {color} outside 1..={k}")]
    ListOutOfPalette { vertex: Vertex, color: Color, k: Color },
    #[error("distance bound d must be at least 1")]
    ZeroDistance,
    #[error("palette size {k} is below d+1 = {}", .d + 1)]
    PaletteTooSmall { d: usize, k: Color },
    #[error("{which} is not a valid coloring: {violations:?}")]
    InvalidEndpoint { which: &'static str, violations: Vec<Violation> },
    #[error("step {index} references unknown vertex {vertex}")]
    UnknownVertex { index: usize, vertex: Vertex },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("vertex {0:?} has no color")]
    MissingVertex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    k: Color,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(k: Color, colors: Vec<Color>) -> Result<Coloring, ColoringError> {
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(ColoringError::OutOfPalette { vertex: v, color: c, k });
        }
        Ok(Coloring { k, colors })
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn get(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn into_colors(self) -> Vec<Color> {
        self.colors
    }

    /// Same colors under a larger or smaller palette bound.
    pub fn with_k(&self, k: Color) -> Result<Coloring, ColoringError> {
        Coloring::new(k, self.colors.clone())
    }

    /// Number of distinct colors in use.
    pub fn used(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn apply(&mut self, step: Step) -> Result<(), ColoringError> {
        if step.vertex >= self.colors.len() {
            return Err(ColoringError::UnknownVertex { index: 0, vertex: step.vertex });
        }
        if step.color == 0 || step.color > self.k {
            return Err(ColoringError::OutOfPalette { vertex: step.vertex, color: step.color, k: self.k });
        }
        self.colors[step.vertex] = step.color;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    /// Lists are sorted and deduplicated; each must be non-empty.
    pub fn new(mut lists: Vec<Vec<Color>>) -> Result<ListAssignment, ColoringError> {
        for (v, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.is_empty() {
                return Err(ColoringError::EmptyList(v));
            }
        }
        Ok(ListAssignment { lists })
    }

    pub fn full(n: usize, k: Color) -> ListAssignment {
        ListAssignment { lists: vec![(1..=k).collect(); n] }
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn allows(&self, v: Vertex, c: Color) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn max_color(&self) -> Color {
        self.lists.iter().flat_map(|l| l.last().copied()).max().unwrap_or(0)
    }

    fn check_palette(&self, k: Color) -> Result<(), ColoringError> {
        for (v, l) in self.lists.iter().enumerate() {
            if let Some(&c) = l.iter().find(|&&c| c == 0 || c > k) {
                return Err(ColoringError::ListOutOfPalette { vertex: v, color: c, k });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Step {
    pub vertex: Vertex,
    pub color: Color,
}

impl Step {
    pub fn new(vertex: Vertex, color: Color) -> Step {
        Step { vertex, color }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconfigSequence {
    pub steps: Vec<Step>,
}

impl ReconfigSequence {
    pub fn new(steps: Vec<Step>) -> ReconfigSequence {
        ReconfigSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, vertex: Vertex, color: Color) {
        self.steps.push(Step { vertex, color });
    }

    pub fn extend(&mut self, other: &ReconfigSequence) {
        self.steps.extend_from_slice(&other.steps);
    }

    /// Coloring reached after replaying every step from `start`, unchecked.
    pub fn endpoint(&self, start: &Coloring) -> Coloring {
        let mut cur = start.clone();
        for s in &self.steps {
            cur.colors[s.vertex] = s.color;
        }
        cur
    }

    /// The sequence walking back from `endpoint(start)` to `start`.
    pub fn reversed(&self, start: &Coloring) -> ReconfigSequence {
        let mut cur = start.colors.clone();
        let mut back = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            back.push(Step { vertex: s.vertex, color: cur[s.vertex] });
            cur[s.vertex] = s.color;
        }
        back.reverse();
        ReconfigSequence { steps: back }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two vertices within distance d share a color.
    Conflict { u: Vertex, v: Vertex },
    /// A vertex uses a color outside its list.
    OffList { v: Vertex, color: Color },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

fn check_palette(n: usize, k: Color, col: &Coloring) -> Result<(), ColoringError> {
    if col.len() != n {
        return Err(ColoringError::Length { expected: n, got: col.len() });
    }
    if let Some((v, &c)) = col.colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
        return Err(ColoringError::OutOfPalette { vertex: v, color: c, k });
    }
    Ok(())
}

pub fn verify_coloring(
    g: &Graph,
    d: usize,
    k: Color,
    col: &Coloring,
    lists: Option<&ListAssignment>,
) -> Result<ColoringReport, ColoringError> {
    check_palette(g.n(), k, col)?;
    let mut violations = Vec::new();
    for v in g.vertices() {
        for (u, _) in g.neighborhood_within(v, d).range(v + 1..) {
            if col.colors[*u] == col.colors[v] {
                violations.push(Violation::Conflict { u: v, v: *u });
            }
        }
    }
    if let Some(l) = lists {
        for v in g.vertices() {
            if !l.allows(v, col.colors[v]) {
                violations.push(Violation::OffList { v, color: col.colors[v] });
            }
        }
    }
    violations.sort();
    Ok(ColoringReport { valid: violations.is_empty(), violations })
}

/// Whether recoloring `v` to `c` is a legal single step from `current`.
pub fn is_valid_step(
    g: &Graph,
    d: usize,
    k: Color,
    current: &Coloring,
    v: Vertex,
    c: Color,
    lists: Option<&ListAssignment>,
) -> bool {
    if v >= g.n() || c == 0 || c > k || current.colors[v] == c {
        return false;
    }
    if lists.is_some_and(|l| !l.allows(v, c)) {
        return false;
    }
    g.neighborhood_within(v, d).keys().all(|&u| u == v || current.colors[u] != c)
}

/// Precomputed distance balls for repeated step checks on one graph.
#[derive(Debug, Clone)]
pub struct StepChecker<'a> {
    pub k: Color,
    pub lists: Option<&'a ListAssignment>,
    pub balls: Vec<Vec<Vertex>>,
}

impl<'a> StepChecker<'a> {
    pub fn new(g: &Graph, d: usize, k: Color, lists: Option<&'a ListAssignment>) -> StepChecker<'a> {
        StepChecker { k, lists, balls: g.balls(d) }
    }

    pub fn failure(&self, colors: &[Color], v: Vertex, c: Color) -> Option<StepFailure> {
        if c == colors[v] {
            return Some(StepFailure::NoOp);
        }
        if c == 0 || c > self.k {
            return Some(StepFailure::OutOfPalette);
        }
        if self.lists.is_some_and(|l| !l.allows(v, c)) {
            return Some(StepFailure::OffList);
        }
        self.balls[v].iter().find(|&&u| colors[u] == c).map(|&u| StepFailure::Conflict { with: u })
    }

    pub fn ok(&self, colors: &[Color], v: Vertex, c: Color) -> bool {
        c != colors[v]
            && c >= 1
            && c <= self.k
            && self.lists.is_none_or(|l| l.allows(v, c))
            && self.balls[v].iter().all(|&u| colors[u] != c)
    }

    pub fn candidates(&self, v: Vertex) -> Box<dyn Iterator<Item = Color> + '_> {
        match self.lists {
            Some(l) => Box::new(l.list(v).iter().copied().filter(move |&c| c <= self.k)),
            None => Box::new(1..=self.k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::InstanceJson", into = "crate::io::InstanceJson")]
pub struct ReconfigInstance {
    pub graph: Graph,
    pub d: usize,
    pub k: Color,
    pub alpha: Coloring,
    pub beta: Coloring,
    pub lists: Option<ListAssignment>,
}

impl ReconfigInstance {
    /// Checks parameters and that both endpoints are valid (list) colorings.
    pub fn new(
        graph: Graph,
        d: usize,
        k: Color,
        alpha: Coloring,
        beta: Coloring,
        lists: Option<ListAssignment>,
    ) -> Result<ReconfigInstance, ColoringError> {
        if d == 0 {
            return Err(ColoringError::ZeroDistance);
        }
        if (k as usize) < d + 1 {
            return Err(ColoringError::PaletteTooSmall { d, k });
        }
        if let Some(l) = &lists {
            if l.len() != graph.n() {
                return Err(ColoringError::Length { expected: graph.n(), got: l.len() });
            }
            l.check_palette(k)?;
        }
        for (which, col) in [("alpha", &alpha), ("beta", &beta)] {
            let rep = verify_coloring(&graph, d, k, col, lists.as_ref())?;
            if !rep.valid {
                return Err(ColoringError::InvalidEndpoint { which, violations: rep.violations });
            }
        }
        let alpha = alpha.with_k(k)?;
        let beta = beta.with_k(k)?;
        Ok(ReconfigInstance { graph, d, k, alpha, beta, lists })
    }

    pub fn swapped(&self) -> ReconfigInstance {
        ReconfigInstance { alpha: self.beta.clone(), beta: self.alpha.clone(), ..self.clone() }
    }

    pub fn checker(&self) -> StepChecker<'_> {
        StepChecker::new(&self.graph, self.d, self.k, self.lists.as_ref())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepFailure {
    NoOp,
    OutOfPalette,
    OffList,
    Conflict { with: Vertex },
    /// Every step was legal but the final coloring is not beta.
    WrongTarget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub ok: bool,
    pub first_bad_step: Option<usize>,
    pub failure: Option<StepFailure>,
}

pub fn verify_sequence(inst: &ReconfigInstance, seq: &ReconfigSequence) -> Result<SequenceReport, ColoringError> {
    replay(inst, &inst.alpha, seq, Some(&inst.beta))
}

/// Replays `seq` from `start`; with `target`, the endpoint must match it.
pub fn replay(
    inst: &ReconfigInstance,
    start: &Coloring,
    seq: &ReconfigSequence,
    target: Option<&Coloring>,
) -> Result<SequenceReport, ColoringError> {
    let n = inst.graph.n();
    if let Some((index, s)) = seq.steps.iter().enumerate().find(|(_, s)| s.vertex >= n) {
        return Err(ColoringError::UnknownVertex { index, vertex: s.vertex });
    }
    let checker = inst.checker();
    let mut cur = start.colors.clone();
    for (i, s) in seq.steps.iter().enumerate() {
        if let Some(f) = checker.failure(&cur, s.vertex, s.color) {
            return Ok(SequenceReport { ok: false, first_bad_step: Some(i), failure: Some(f) });
        }
        cur[s.vertex] = s.color;
    }
    if target.is_some_and(|t| t.colors != cur) {
        return Ok(SequenceReport { ok: false, first_bad_step: None, failure: Some(StepFailure::WrongTarget) });
    }
    Ok(SequenceReport { ok: true, first_bad_step: None, failure: None })
}

/// Label-keyed color map used by the file formats.
pub fn coloring_by_label(g: &Graph, col: &Coloring) -> BTreeMap<String, Color> {
    g.vertices().map(|v| (g.label(v), col.colors[v])).collect()
}

pub fn coloring_from_labels(
    g: &Graph,
    k: Color,
    map: &BTreeMap<String, Color>,
) -> Result<Coloring, ColoringError> {
    let index = g.label_index();
    let mut colors = vec![0; g.n()];
    for (label, &c) in map {
        let v = *index.get(label).ok_or_else(|| ColoringError::UnknownLabel(label.clone()))?;
        colors[v] = c;
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        if map.len() < g.n() {
            return Err(ColoringError::MissingVertex(g.label(v)));
        }
    }
    Coloring::new(k, colors)
}

pub fn lists_by_label(g: &Graph, lists: &ListAssignment) -> BTreeMap<String, Vec<Color>> {
    g.vertices().map(|v| (g.label(v), lists.lists[v].clone())).collect()
}

pub fn lists_from_labels(g: &Graph, map: &BTreeMap<String, Vec<Color>>) -> Result<ListAssignment, ColoringError> {
    let index = g.label_index();
    let mut lists = vec![Vec::new(); g.n()];
    for (label, l) in map {
        let v = *index.get(label).ok_or_else(|| ColoringError::UnknownLabel(label.clone()))?;
        lists[v] = l.clone();
    }
    ListAssignment::new(lists)
}

pub fn sequence_by_label(g: &Graph, seq: &ReconfigSequence) -> Vec<(String, Color)> {
    seq.steps.iter().map(|s| (g.label(s.vertex), s.color)).collect()
}

pub fn sequence_from_labels(g: &Graph, steps: &[(String, Color)]) -> Result<ReconfigSequence, ColoringError> {
    let index: HashMap<String, Vertex> = g.label_index();
    steps
        .iter()
        .map(|(l, c)| {
            index.get(l).map(|&v| Step::new(v, *c)).ok_or_else(|| ColoringError::UnknownLabel(l.clone()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(ReconfigSequence::new)
}
