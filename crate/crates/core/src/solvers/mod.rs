//! Polynomial-time decision procedures with sequence construction.

mod diameter;
mod path;

pub use diameter::{solve_diameter_le_d, solve_split};
pub use path::{check_compact, path_blocks, path_normalize, solve_path, BlockDecomposition, Normalized};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{verify_sequence, ColoringError, ReconfigInstance, ReconfigSequence};
use crate::graph::Vertex;
use crate::oracle::{reconfig_reachable, OracleBudget, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("component containing vertex {first} has diameter above d = {d}")]
    Diameter { first: Vertex, d: usize },
    #[error("graph is not a path")]
    NotPath,
    #[error("graph is not a split graph")]
    NotSplit,
    #[error("split solver needs d >= 3, got {0}")]
    SplitDistance(usize),
    #[error("list instances are not supported by this solver")]
    Lists,
    #[error("{0}")]
    Contract(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NoReason {
    /// A component uses all k colors and differs between alpha and beta.
    SaturatedComponent { first: Vertex },
    /// Path with diameter above d and exactly d+1 colors.
    RigidPath,
    /// Exhaustive search found no sequence.
    Exhausted { states: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub decision: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<ReconfigSequence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<NoReason>,
}

impl SolveOutcome {
    pub fn yes(sequence: ReconfigSequence) -> SolveOutcome {
        SolveOutcome { decision: Decision::Yes, sequence: Some(sequence), certificate: None }
    }

    pub fn no(reason: NoReason) -> SolveOutcome {
        SolveOutcome { decision: Decision::No, sequence: None, certificate: Some(reason) }
    }

    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Auto,
    Path,
    Diameter,
    Split,
    Oracle,
}

pub fn is_path(g: &crate::graph::Graph) -> bool {
    let n = g.n();
    n >= 1 && g.is_connected() && g.max_degree() <= 2 && g.edge_count() + 1 == n
}

fn components_within(inst: &ReconfigInstance) -> bool {
    inst.graph.components().iter().all(|c| inst.graph.induced(c).diameter().within(inst.d))
}

/// Picks the structural solver that applies, falling back to the oracle.
pub fn choose_solver(inst: &ReconfigInstance) -> Solver {
    if inst.lists.is_some() {
        Solver::Oracle
    } else if is_path(&inst.graph) {
        Solver::Path
    } else if components_within(inst) {
        Solver::Diameter
    } else if inst.d >= 3 && inst.graph.is_split() {
        Solver::Split
    } else {
        Solver::Oracle
    }
}

pub fn solve(inst: &ReconfigInstance, solver: Solver, budget: OracleBudget) -> Result<SolveOutcome, SolveError> {
    let out = match solver {
        Solver::Auto => return solve(inst, choose_solver(inst), budget),
        Solver::Path => solve_path(inst)?,
        Solver::Diameter => solve_diameter_le_d(inst)?,
        Solver::Split => solve_split(inst)?,
        Solver::Oracle => {
            let r = reconfig_reachable(inst, budget)?;
            match r.shortest {
                Some(seq) => SolveOutcome::yes(seq),
                None => SolveOutcome::no(NoReason::Exhausted { states: r.states }),
            }
        }
    };
    if let Some(seq) = &out.sequence {
        let rep = verify_sequence(inst, seq)?;
        if !rep.ok {
            return Err(SolveError::Contract(format!("constructed sequence failed replay: {rep:?}")));
        }
    }
    Ok(out)
}
