//! Seeded instance generators. Every generator draws from `ChaCha8Rng`
//! seeded with `seed_from_u64`, which is stable across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{Color, Coloring, ListAssignment, StepChecker};
use crate::graph::{Graph, Vertex};
use crate::sliding_tokens::{validate_st, Gadget, StInstance, TokenConfig};

const RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("no valid instance found after {0} attempts")]
    Exhausted(usize),
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_prob(p: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenError::Params(format!("probability {p} outside [0,1]")))
    }
}

pub fn gen_path(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::Params("path needs at least one vertex".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::build(n, &edges).expect("path edges are in range"))
}

/// Clique on 0..n_clique, independent set after it, each cross pair joined
/// with probability `edge_prob`.
pub fn gen_split(n_clique: usize, n_indep: usize, edge_prob: f64, seed: u64) -> Result<Graph, GenError> {
    check_prob(edge_prob)?;
    if n_clique + n_indep == 0 {
        return Err(GenError::Params("split graph needs at least one vertex".into()));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for a in 0..n_clique {
        for b in a + 1..n_clique {
            edges.push((a, b));
        }
    }
    for s in n_clique..n_clique + n_indep {
        for c in 0..n_clique {
            if r.gen_bool(edge_prob) {
                edges.push((c, s));
            }
        }
    }
    Ok(Graph::build(n_clique + n_indep, &edges).expect("ids in range"))
}

/// G(n, p) resampled until connected.
pub fn gen_random_connected(n: usize, edge_prob: f64, seed: u64) -> Result<Graph, GenError> {
    check_prob(edge_prob)?;
    if n == 0 {
        return Err(GenError::Params("graph needs at least one vertex".into()));
    }
    if n > 1 && edge_prob == 0.0 {
        return Err(GenError::Params("edge probability 0 cannot give a connected graph".into()));
    }
    let mut r = rng(seed);
    for _ in 0..RETRIES {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if r.gen_bool(edge_prob) {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::build(n, &edges).expect("ids in range");
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenError::Exhausted(RETRIES))
}

/// A uniformly shuffled search for a valid (list) (d,k)-coloring.
pub fn gen_coloring<R: Rng>(
    g: &Graph,
    d: usize,
    k: Color,
    lists: Option<&ListAssignment>,
    r: &mut R,
) -> Option<Coloring> {
    let checker = StepChecker::new(g, d, k, lists);
    let n = g.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(r);
    let cands: Vec<Vec<Color>> = order
        .iter()
        .map(|&v| {
            let mut c: Vec<Color> = checker.candidates(v).collect();
            c.shuffle(r);
            c
        })
        .collect();
    let balls = g.balls(d);
    let mut colors = vec![0 as Color; n];
    let mut choice = vec![0usize; n];
    let mut i = 0;
    let mut work = 0usize;
    while i < n {
        work += 1;
        if work > 1_000_000 {
            return None;
        }
        let v = order[i];
        let mut placed = false;
        while choice[i] < cands[i].len() {
            let c = cands[i][choice[i]];
            choice[i] += 1;
            if balls[v].iter().all(|&u| u == v || colors[u] != c) {
                colors[v] = c;
                placed = true;
                break;
            }
        }
        if placed {
            i += 1;
            if i < n {
                choice[i] = 0;
            }
        } else {
            colors[v] = 0;
            if i == 0 {
                return None;
            }
            i -= 1;
            colors[order[i]] = 0;
        }
    }
    Some(Coloring::new(k, colors).expect("candidates are in palette"))
}

/// Random gadget instance: triangles take ids 3i..3i+2, token edges follow.
/// Link edges come from stub matching; T_A and T_B are random standard
/// independent configurations.
pub fn gen_st(n_triangles: usize, n_token_edges: usize, seed: u64) -> Result<StInstance, GenError> {
    if n_triangles + n_token_edges == 0 {
        return Err(GenError::Params("need at least one gadget".into()));
    }
    let mut r = rng(seed);
    let n = 3 * n_triangles + 2 * n_token_edges;
    let triangles: Vec<[Vertex; 3]> = (0..n_triangles).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect();
    let base = 3 * n_triangles;
    let token_edges: Vec<[Vertex; 2]> = (0..n_token_edges).map(|j| [base + 2 * j, base + 2 * j + 1]).collect();
    let mut labels = Vec::with_capacity(n);
    for i in 0..n_triangles {
        labels.extend((1..=3).map(|a| format!("t{}.{a}", i + 1)));
    }
    for j in 0..n_token_edges {
        labels.extend((1..=2).map(|a| format!("e{}.{a}", j + 1)));
    }
    let gadget_of = |v: Vertex| if v < base { v / 3 } else { n_triangles + (v - base) / 2 };

    for _ in 0..RETRIES {
        let mut stubs: Vec<Vertex> = (0..base).collect();
        for v in base..n {
            stubs.push(v);
            if r.gen_bool(0.5) {
                stubs.push(v);
            }
        }
        if stubs.len() % 2 == 1 {
            continue;
        }
        stubs.shuffle(&mut r);
        let mut links: Vec<[Vertex; 2]> = stubs.chunks(2).map(|p| [p[0].min(p[1]), p[0].max(p[1])]).collect();
        if links.iter().any(|l| gadget_of(l[0]) == gadget_of(l[1])) {
            continue;
        }
        links.sort_unstable();
        if links.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let Ok(shape) = StInstance::from_parts(
            n,
            Some(labels.clone()),
            triangles.clone(),
            token_edges.clone(),
            links,
            TokenConfig::default(),
            TokenConfig::default(),
        ) else {
            continue;
        };
        let Some(t_a) = random_standard(&shape, &mut r) else { continue };
        let Some(t_b) = random_standard(&shape, &mut r) else { continue };
        let st = StInstance { t_a, t_b, ..shape };
        if validate_st(&st).well_formed {
            return Ok(st);
        }
    }
    Err(GenError::Exhausted(RETRIES))
}

/// Random independent configuration with one token per gadget.
pub fn random_standard<R: Rng>(st: &StInstance, r: &mut R) -> Option<TokenConfig> {
    let gadgets: Vec<Gadget> = st.gadgets().collect();
    let opts: Vec<Vec<Vertex>> = gadgets
        .iter()
        .map(|&g| {
            let mut o = st.gadget_vertices(g).to_vec();
            o.shuffle(r);
            o
        })
        .collect();
    let mut pick = vec![usize::MAX; gadgets.len()];
    let mut choice = vec![0usize; gadgets.len()];
    let mut i = 0;
    while i < gadgets.len() {
        let mut placed = false;
        while choice[i] < opts[i].len() {
            let v = opts[i][choice[i]];
            choice[i] += 1;
            if pick[..i].iter().all(|&u| !st.graph.has_edge(u, v)) {
                pick[i] = v;
                placed = true;
                break;
            }
        }
        if placed {
            i += 1;
            if i < gadgets.len() {
                choice[i] = 0;
            }
        } else {
            if i == 0 {
                return None;
            }
            i -= 1;
        }
    }
    Some(TokenConfig::new(pick))
}
