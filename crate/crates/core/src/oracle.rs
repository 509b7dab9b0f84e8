//! Exhaustive ground truth: enumeration of (list) (d,k)-colorings and
//! breadth-first search over the reconfiguration graph.
//!
//! Every search is budgeted. Running out of budget is reported as
//! [`OracleError::BudgetExceeded`], never as a negative answer.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, Coloring, ListAssignment, ReconfigInstance, ReconfigSequence, Step, StepChecker};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_MAX_STATES: usize = 5_000_000;
pub const BUDGET_ENV: &str = "RECOLOR_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("budget exceeded after {states} states")]
    BudgetExceeded { states: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_states: usize,
    pub max_millis: Option<u64>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_states: DEFAULT_MAX_STATES, max_millis: None }
    }
}

impl OracleBudget {
    pub fn states(max_states: usize) -> OracleBudget {
        OracleBudget { max_states: max_states.max(1), max_millis: None }
    }

    /// Default budget, overridden by `RECOLOR_BUDGET` when it parses.
    pub fn from_env() -> OracleBudget {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(OracleBudget::states)
            .unwrap_or_default()
    }

    fn meter(&self) -> Meter {
        Meter {
            max: self.max_states.max(1),
            deadline: self.max_millis.map(|ms| Instant::now() + Duration::from_millis(ms)),
            count: 0,
        }
    }
}

struct Meter {
    max: usize,
    deadline: Option<Instant>,
    count: usize,
}

impl Meter {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.count += 1;
        let late = self.count.is_multiple_of(1024) && self.deadline.is_some_and(|t| Instant::now() > t);
        if self.count > self.max || late {
            return Err(OracleError::BudgetExceeded { states: self.count });
        }
        Ok(())
    }
}

/// Calls `visit` on every valid coloring in lexicographic vertex-major order
/// and returns how many there were.
pub fn for_each_coloring<F>(
    g: &Graph,
    d: usize,
    k: Color,
    lists: Option<&ListAssignment>,
    budget: OracleBudget,
    mut visit: F,
) -> Result<usize, OracleError>
where
    F: FnMut(&[Color]),
{
    let n = g.n();
    let checker = StepChecker::new(g, d, k, lists);
    // only earlier vertices constrain the choice at position v
    let earlier: Vec<Vec<Vertex>> =
        checker.balls.iter().enumerate().map(|(v, b)| b.iter().copied().filter(|&u| u < v).collect()).collect();
    let cands: Vec<Vec<Color>> = (0..n).map(|v| checker.candidates(v).collect()).collect();
    let mut meter = budget.meter();
    let mut colors = vec![0 as Color; n];
    let mut choice = vec![0usize; n];
    let mut count = 0;
    if n == 0 {
        visit(&colors);
        return Ok(1);
    }
    let mut v = 0usize;
    loop {
        // advance choice[v] to the next consistent candidate
        let mut placed = false;
        while choice[v] < cands[v].len() {
            let c = cands[v][choice[v]];
            choice[v] += 1;
            if earlier[v].iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                placed = true;
                break;
            }
        }
        if placed {
            meter.tick()?;
            if v + 1 == n {
                count += 1;
                visit(&colors);
            } else {
                v += 1;
                choice[v] = 0;
            }
        } else {
            colors[v] = 0;
            if v == 0 {
                return Ok(count);
            }
            v -= 1;
        }
    }
}

pub fn enumerate_colorings(
    g: &Graph,
    d: usize,
    k: Color,
    lists: Option<&ListAssignment>,
    budget: OracleBudget,
) -> Result<Vec<Coloring>, OracleError> {
    let mut out = Vec::new();
    for_each_coloring(g, d, k, lists, budget, |c| out.push(Coloring::new(k, c.to_vec()).expect("palette")))?;
    Ok(out)
}

/// Some (d,k)-coloring of `g`, or `None` if there is none. Colors are
/// interchangeable, so a vertex never opens a color above the largest in
/// use plus one. Vertices go in decreasing order of ball size.
pub fn find_coloring(g: &Graph, d: usize, k: Color, budget: OracleBudget) -> Result<Option<Coloring>, OracleError> {
    let balls = g.balls(d);
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(balls[v].len()));
    let mut colors = vec![0 as Color; g.n()];
    let mut meter = budget.meter();

    fn place(
        i: usize,
        top: Color,
        order: &[Vertex],
        balls: &[Vec<Vertex>],
        k: Color,
        colors: &mut [Color],
        meter: &mut Meter,
    ) -> Result<bool, OracleError> {
        let Some(&v) = order.get(i) else { return Ok(true) };
        for c in 1..=k.min(top + 1) {
            if balls[v].iter().any(|&u| colors[u] == c) {
                continue;
            }
            meter.tick()?;
            colors[v] = c;
            if place(i + 1, top.max(c), order, balls, k, colors, meter)? {
                return Ok(true);
            }
        }
        colors[v] = 0;
        Ok(false)
    }

    if place(0, 0, &order, &balls, k, &mut colors, &mut meter)? {
        Ok(Some(Coloring::new(k, colors).expect("palette")))
    } else {
        Ok(None)
    }
}

/// The coloring space searched by the BFS: (list) (d,k)-colorings of a
/// graph where some vertices may be frozen in place.
pub struct ColoringSpace<'a> {
    checker: StepChecker<'a>,
    frozen: Vec<bool>,
}

impl<'a> ColoringSpace<'a> {
    pub fn new(g: &Graph, d: usize, k: Color, lists: Option<&'a ListAssignment>) -> ColoringSpace<'a> {
        ColoringSpace { checker: StepChecker::new(g, d, k, lists), frozen: vec![false; g.n()] }
    }

    pub fn freeze(mut self, v: Vertex) -> Self {
        self.frozen[v] = true;
        self
    }

    /// All legal steps from `colors`, ordered by vertex then color.
    pub fn moves(&self, colors: &[Color]) -> Vec<Step> {
        let mut out = Vec::new();
        for v in 0..colors.len() {
            if self.frozen[v] {
                continue;
            }
            for c in self.checker.candidates(v) {
                if self.checker.ok(colors, v, c) {
                    out.push(Step::new(v, c));
                }
            }
        }
        out
    }

    pub fn step_ok(&self, colors: &[Color], v: Vertex, c: Color) -> bool {
        self.checker.ok(colors, v, c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Shortest step sequence to the first goal state, if any was reached.
    pub path: Option<Vec<Step>>,
    pub states: usize,
}

/// Breadth-first search from `start` until `goal` holds. Ties are broken by
/// the move order of [`ColoringSpace::moves`], so the returned path is the
/// lexicographically first among the shortest.
pub fn search<G>(
    space: &ColoringSpace<'_>,
    start: &[Color],
    goal: G,
    budget: OracleBudget,
) -> Result<SearchOutcome, OracleError>
where
    G: Fn(&[Color]) -> bool,
{
    let mut meter = budget.meter();
    meter.tick()?;
    if goal(start) {
        return Ok(SearchOutcome { path: Some(Vec::new()), states: 1 });
    }
    let mut states: Vec<Box<[Color]>> = vec![start.into()];
    let mut parent: Vec<(u32, Step)> = vec![(u32::MAX, Step::new(0, 0))];
    let mut index: HashMap<Box<[Color]>, u32> = HashMap::from([(start.into(), 0)]);
    let mut head = 0;
    while head < states.len() {
        let cur = states[head].clone();
        let cur_id = head as u32;
        head += 1;
        let mut next = cur.to_vec();
        for step in space.moves(&cur) {
            let old = next[step.vertex];
            next[step.vertex] = step.color;
            if !index.contains_key(next.as_slice()) {
                meter.tick()?;
                let id = states.len() as u32;
                let boxed: Box<[Color]> = next.as_slice().into();
                index.insert(boxed.clone(), id);
                states.push(boxed);
                parent.push((cur_id, step));
                if goal(&next) {
                    let mut path = Vec::new();
                    let mut at = id;
                    while at != 0 {
                        let (p, s) = parent[at as usize];
                        path.push(s);
                        at = p;
                    }
                    path.reverse();
                    return Ok(SearchOutcome { path: Some(path), states: states.len() });
                }
            }
            next[step.vertex] = old;
        }
    }
    Ok(SearchOutcome { path: None, states: states.len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reachability {
    pub reachable: bool,
    pub shortest: Option<ReconfigSequence>,
    pub states: usize,
}

pub fn reconfig_reachable(inst: &ReconfigInstance, budget: OracleBudget) -> Result<Reachability, OracleError> {
    let space = ColoringSpace::new(&inst.graph, inst.d, inst.k, inst.lists.as_ref());
    let target = inst.beta.colors();
    let out = search(&space, inst.alpha.colors(), |c| c == target, budget)?;
    Ok(Reachability {
        reachable: out.path.is_some(),
        shortest: out.path.map(ReconfigSequence::new),
        states: out.states,
    })
}

/// Every valid coloring with the connected component of the reconfiguration
/// graph it belongs to. Answers many reachability queries on one space.
#[derive(Debug, Clone)]
pub struct ReconfigComponents {
    colorings: Vec<Box<[Color]>>,
    component: Vec<usize>,
    count: usize,
}

impl ReconfigComponents {
    pub fn colorings(&self) -> impl Iterator<Item = &[Color]> {
        self.colorings.iter().map(|c| &**c)
    }

    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.count
    }

    pub fn component_of(&self, colors: &[Color]) -> Option<usize> {
        self.colorings.binary_search_by(|c| (**c).cmp(colors)).ok().map(|i| self.component[i])
    }

    pub fn connected(&self, a: &[Color], b: &[Color]) -> Option<bool> {
        Some(self.component_of(a)? == self.component_of(b)?)
    }
}

pub fn reconfig_components(
    g: &Graph,
    d: usize,
    k: Color,
    lists: Option<&ListAssignment>,
    budget: OracleBudget,
) -> Result<ReconfigComponents, OracleError> {
    let mut colorings: Vec<Box<[Color]>> = Vec::new();
    for_each_coloring(g, d, k, lists, budget, |c| colorings.push(c.into()))?;
    // enumeration order is lexicographic, which the binary searches rely on
    debug_assert!(colorings.windows(2).all(|w| w[0] < w[1]));
    let space = ColoringSpace::new(g, d, k, lists);
    let mut uf = UnionFind::new(colorings.len());
    let mut scratch = Vec::new();
    for (i, c) in colorings.iter().enumerate() {
        scratch.clear();
        scratch.extend_from_slice(c);
        for step in space.moves(c) {
            // steps only to larger neighbours; the graph is symmetric
            if step.color < c[step.vertex] {
                continue;
            }
            scratch[step.vertex] = step.color;
            let j = colorings.binary_search_by(|x| (**x).cmp(&scratch[..])).expect("neighbour is a valid coloring");
            uf.union(i, j);
            scratch[step.vertex] = c[step.vertex];
        }
    }
    let mut label = HashMap::new();
    let component: Vec<usize> = (0..colorings.len())
        .map(|i| {
            let r = uf.find(i);
            let next = label.len();
            *label.entry(r).or_insert(next)
        })
        .collect();
    Ok(ReconfigComponents { colorings, component, count: label.len() })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
