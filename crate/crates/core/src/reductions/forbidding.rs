use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, ListAssignment, ReconfigSequence, Step};
use crate::graph::{Graph, Vertex};
use crate::oracle::{for_each_coloring, search, ColoringSpace, OracleBudget};

use super::ReductionError;

/// Path length: the shortest even length above d+2.
pub fn forbidding_length(d: usize) -> usize {
    if d % 2 == 1 {
        d + 3
    } else {
        d + 4
    }
}

/// A list-colored path `u = w0, ..., wp = v` whose endpoints can take any
/// pair from their lists except `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddingPath {
    pub d: usize,
    pub p: usize,
    pub q: usize,
    pub a: Color,
    pub b: Color,
    pub c: Vec<Color>,
    pub path: Graph,
    pub lists: ListAssignment,
}

impl ForbiddingPath {
    pub fn u(&self) -> Vertex {
        0
    }

    pub fn v(&self) -> Vertex {
        self.p
    }

    pub fn coloring(&self, x: Color, y: Color, s: usize) -> Vec<Color> {
        switch_coloring(self.a, self.b, &self.c, x, y, s)
    }
}

/// Full path coloring with endpoint colors `x`, `y` and switch point `s`
/// in `1..=p`: `w^i` takes its lower list color for `i < s` and its upper
/// one from `s` on.
pub fn switch_coloring(a: Color, b: Color, c: &[Color], x: Color, y: Color, s: usize) -> Vec<Color> {
    let p = c.len() + 2;
    let ext = |j: usize| match j {
        0 => a,
        j if j == p - 1 => b,
        j => c[j - 1],
    };
    let mut out = Vec::with_capacity(p + 1);
    out.push(x);
    out.extend((1..p).map(|i| if i < s { ext(i - 1) } else { ext(i) }));
    out.push(y);
    out
}

pub fn build_forbidding_path(
    d: usize,
    a: Color,
    b: Color,
    l_u: &[Color],
    l_v: &[Color],
    c: &[Color],
) -> Result<ForbiddingPath, ReductionError> {
    let bad = |m: String| Err(ReductionError::Params(m));
    if d < 2 {
        return bad(format!("forbidding paths need d >= 2, got {d}"));
    }
    let base = |l: &[Color]| !l.is_empty() && l.iter().all(|x| (1..=3).contains(x));
    if !base(l_u) || !base(l_v) {
        return bad("endpoint lists must be non-empty subsets of {1,2,3}".into());
    }
    if !l_u.contains(&a) || !l_v.contains(&b) {
        return bad(format!("a = {a} must be in L_u and b = {b} in L_v"));
    }
    let p = forbidding_length(d);
    if c.len() != p - 2 {
        return bad(format!("|C| must be {} for d = {d}, got {}", p - 2, c.len()));
    }
    let distinct: BTreeSet<Color> = c.iter().copied().collect();
    if distinct.len() != c.len() || c.iter().any(|x| *x <= 3) {
        return bad("C must be distinct colors outside {1,2,3}".into());
    }
    let edges: Vec<_> = (1..=p).map(|i| (i - 1, i)).collect();
    let mut labels = vec!["u".to_string()];
    labels.extend((1..p).map(|i| format!("w{i}")));
    labels.push("v".into());
    let path = Graph::build(p + 1, &edges)?.with_labels(labels)?;
    let ext = |j: usize| match j {
        0 => a,
        j if j == p - 1 => b,
        j => c[j - 1],
    };
    let mut lists = vec![l_u.to_vec()];
    lists.extend((1..p).map(|i| vec![ext(i - 1), ext(i)]));
    lists.push(l_v.to_vec());
    Ok(ForbiddingPath {
        d,
        p,
        q: (p - 2) / 2,
        a,
        b,
        c: c.to_vec(),
        path,
        lists: ListAssignment::new(lists)?,
    })
}

/// Reachability certificate for one pair of endpoint pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub from: (Color, Color),
    pub to: (Color, Color),
    /// Number of start colorings checked.
    pub starts: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddingReport {
    pub cond1: bool,
    pub cond2: bool,
    pub admissible_pairs: Vec<(Color, Color)>,
    pub pairs: Vec<PairReport>,
}

/// Checks both defining conditions by exhaustive search. `cond2` is only
/// evaluated when `with_cond2` is set (it is reported `true` otherwise).
pub fn check_forbidding_path(
    fp: &ForbiddingPath,
    k: Color,
    with_cond2: bool,
    budget: OracleBudget,
) -> Result<ForbiddingReport, ReductionError> {
    let (u, v) = (fp.u(), fp.v());
    let mut all: Vec<Vec<Color>> = Vec::new();
    for_each_coloring(&fp.path, fp.d, k, Some(&fp.lists), budget, |c| all.push(c.to_vec()))?;
    let found: BTreeSet<(Color, Color)> = all.iter().map(|c| (c[u], c[v])).collect();
    let expected: BTreeSet<(Color, Color)> = fp
        .lists
        .list(u)
        .iter()
        .flat_map(|&x| fp.lists.list(v).iter().map(move |&y| (x, y)))
        .filter(|&pair| pair != (fp.a, fp.b))
        .collect();
    let cond1 = found == expected;
    let admissible_pairs: Vec<(Color, Color)> = found.iter().copied().collect();

    let mut pairs = Vec::new();
    if with_cond2 {
        let space = ColoringSpace::new(&fp.path, fp.d, k, Some(&fp.lists)).freeze(u).freeze(v);
        for &(x, y) in &admissible_pairs {
            for &(x2, y2) in &admissible_pairs {
                let moves_u = y2 == y && x2 != x;
                let moves_v = x2 == x && y2 != y;
                if !moves_u && !moves_v {
                    continue;
                }
                let (end, target) = if moves_u { (u, x2) } else { (v, y2) };
                let starts: Vec<&Vec<Color>> = all.iter().filter(|c| c[u] == x && c[v] == y).collect();
                let mut ok = true;
                for start in &starts {
                    let out = search(&space, start, |c| space.step_ok(c, end, target), budget)?;
                    ok &= match out.path {
                        Some(mut steps) => {
                            steps.push(Step::new(end, target));
                            endpoint_last(&ReconfigSequence::new(steps), u, v, end)
                        }
                        None => false,
                    };
                }
                pairs.push(PairReport { from: (x, y), to: (x2, y2), starts: starts.len(), ok });
            }
        }
    }
    let cond2 = pairs.iter().all(|p| p.ok);
    Ok(ForbiddingReport { cond1, cond2, admissible_pairs, pairs })
}

/// The endpoint `end` is recolored exactly once, as the final step, and the
/// other endpoint never.
fn endpoint_last(seq: &ReconfigSequence, u: Vertex, v: Vertex, end: Vertex) -> bool {
    let Some((last, body)) = seq.steps.split_last() else { return false };
    last.vertex == end && body.iter().all(|s| s.vertex != u && s.vertex != v)
}
