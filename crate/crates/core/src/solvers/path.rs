use serde::{Deserialize, Serialize};

use crate::coloring::{verify_coloring, Color, Coloring, ReconfigInstance, ReconfigSequence};
use crate::graph::{Graph, Vertex};

use super::diameter::{transfer_colors, solve_diameter_le_d};
use super::{is_path, NoReason, SolveError, SolveOutcome};

/// A path cut into consecutive blocks of d+1 vertices, starting from the
/// endpoint with the smaller id. `blocks[i][j]` is v_{i+1,j+1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub d: usize,
    pub blocks: Vec<Vec<Vertex>>,
}

impl BlockDecomposition {
    pub fn order(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.blocks.iter().flatten().copied()
    }

    /// The j-th vertex of every block that has one, in block order.
    pub fn column(&self, j: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.blocks.iter().filter_map(move |b| b.get(j).copied())
    }
}

pub fn path_blocks(p: &Graph, d: usize) -> Result<BlockDecomposition, SolveError> {
    if !is_path(p) {
        return Err(SolveError::NotPath);
    }
    if d == 0 {
        return Err(SolveError::Contract("block size needs d >= 1".into()));
    }
    let start = p.vertices().find(|&v| p.degree(v) <= 1).expect("a path has an endpoint");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut at = start;
    while let Some(&next) = p.neighbors(at).iter().find(|&&u| u != prev) {
        order.push(next);
        prev = at;
        at = next;
    }
    let blocks = order.chunks(d + 1).map(<[Vertex]>::to_vec).collect();
    Ok(BlockDecomposition { d, blocks })
}

/// True when each column of the block decomposition is monochromatic.
pub fn check_compact(p: &Graph, d: usize, col: &Coloring) -> Result<bool, SolveError> {
    let report = verify_coloring(p, d, col.k(), col, None)?;
    if !report.valid {
        return Err(SolveError::Contract("input is not a valid (d,k)-coloring".into()));
    }
    let bd = path_blocks(p, d)?;
    Ok((0..=d).all(|j| {
        let mut column = bd.column(j).map(|v| col.get(v));
        let first = column.next();
        column.all(|c| Some(c) == first)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub sequence: ReconfigSequence,
    pub last: Coloring,
}

/// Copies each block's colors backwards onto all earlier blocks, leaving a
/// coloring with at most d+1 colors and monochromatic columns.
pub fn path_normalize(p: &Graph, d: usize, k: Color, col: &Coloring) -> Result<Normalized, SolveError> {
    if (k as usize) < d + 2 {
        return Err(SolveError::Contract(format!("normalizing needs k >= d+2, got k = {k}")));
    }
    let bd = path_blocks(p, d)?;
    let mut cur = col.colors().to_vec();
    let mut sequence = ReconfigSequence::default();
    for i in 1..bd.blocks.len() {
        for j in 0..bd.blocks[i].len() {
            let c = cur[bd.blocks[i][j]];
            for prev in (0..i).rev() {
                let v = bd.blocks[prev][j];
                if cur[v] != c {
                    cur[v] = c;
                    sequence.push(v, c);
                }
            }
        }
    }
    Ok(Normalized { sequence, last: Coloring::new(k, cur)? })
}

pub fn solve_path(inst: &ReconfigInstance) -> Result<SolveOutcome, SolveError> {
    if inst.lists.is_some() {
        return Err(SolveError::Lists);
    }
    let (g, d, k) = (&inst.graph, inst.d, inst.k);
    if !is_path(g) {
        return Err(SolveError::NotPath);
    }
    if inst.alpha == inst.beta {
        return Ok(SolveOutcome::yes(ReconfigSequence::default()));
    }
    if g.n() <= d + 1 {
        return solve_diameter_le_d(inst);
    }
    if k as usize == d + 1 {
        return Ok(SolveOutcome::no(NoReason::RigidPath));
    }
    let from = path_normalize(g, d, k, &inst.alpha)?;
    let to = path_normalize(g, d, k, &inst.beta)?;
    let bd = path_blocks(g, d)?;

    let mut seq = from.sequence;
    let mut cur = from.last.colors().to_vec();
    let target = to.last.colors();
    let first = &bd.blocks[0];
    let mut block_cur: Vec<Color> = first.iter().map(|&v| cur[v]).collect();
    let block_target: Vec<Color> = first.iter().map(|&v| target[v]).collect();
    let local: Vec<Vertex> = (0..first.len()).collect();
    transfer_colors(&local, k, &mut block_cur, &block_target, |j, c| {
        for v in bd.column(j) {
            cur[v] = c;
            seq.push(v, c);
        }
    });
    debug_assert_eq!(cur, target);
    seq.extend(&to.sequence.reversed(&inst.beta));
    Ok(SolveOutcome::yes(seq))
}
